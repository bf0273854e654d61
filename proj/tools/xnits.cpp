// SPDX-License-Identifier: MIT
// xnits: run, sweep and convergence studies from a config file.
#include "xnits/errors.hpp"
#include "xnits/study.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum Exit { kOk = 0, kConfig = 2, kSolver = 3, kCheck = 4 };

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  bool check = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("config", o.config, "study configuration file")->required();
  sub->add_option("--out", o.out, "output directory (overrides output.dir)");
  sub->add_option("--seed", o.seed, "seed for irregular meshes (overrides mesh.seed)");
  sub->add_flag("--quiet", o.quiet, "print nothing on success");
  sub->add_flag("--check", o.check, "evaluate the built-in checks for this case");
}

int run(const std::string& mode, const Options& o) {
  xnits::StudyConfig c;
  try {
    c = xnits::load_study_config_file(o.config);
  } catch (const xnits::ConfigError& e) {
    std::cerr << "xnits: " << o.config << ": " << e.what() << '\n';
    return kConfig;
  }
  if (o.seed) c.seed = *o.seed;
  const std::string out_dir = o.out.empty() ? c.out_dir : o.out;

  xnits::StudyOutput out;
  try {
    if (mode == "run")
      out = xnits::run_case(c, out_dir);
    else if (mode == "sweep")
      out = xnits::run_sweep(c, out_dir);
    else
      out = xnits::run_convergence(c, out_dir);
  } catch (const xnits::ConfigError& e) {
    std::cerr << "xnits: " << o.config << ": " << e.what() << '\n';
    return kConfig;
  } catch (const xnits::GeometryError& e) {
    std::cerr << "xnits: geometry: " << e.what() << '\n';
    return kConfig;
  } catch (const xnits::SolverError& e) {
    std::cerr << "xnits: solver: " << e.what() << '\n';
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "xnits: " << e.what() << '\n';
    return kSolver;
  }

  int code = kOk;
  auto report_failure = [&](const xnits::CellResult& cell) {
    std::cerr << "xnits: " << cell.method << " at h=" << cell.report.h << " failed: " << cell.error << '\n';
    code = kSolver;
  };
  for (const auto& cell : out.cells)
    if (!cell.ok) report_failure(cell);
  for (const auto& row : out.sweep)
    if (!row.cell.ok) report_failure(row.cell);

  if (!o.quiet) {
    for (const auto& cell : out.cells)
      std::cout << cell.method << "  h=" << xnits::format_number(cell.report.h)
                << "  energy_rel=" << xnits::format_number(cell.report.energy_error_rel)
                << "  l2_rel=" << xnits::format_number(cell.report.l2_error_rel) << '\n';
    for (const auto& row : out.sweep)
      std::cout << row.method << "  alpha=" << xnits::format_number(row.alpha)
                << "  energy_rel=" << xnits::format_number(row.cell.report.energy_error_rel) << "  cond="
                << (row.cell.report.condition_number ? xnits::format_number(*row.cell.report.condition_number) : "-")
                << '\n';
    for (const auto& f : out.fits)
      std::cout << f.method << "  energy slope=" << xnits::format_number(f.energy_slope)
                << "  l2 slope=" << xnits::format_number(f.l2_slope) << (f.exact ? "  (exact solution)" : "")
                << '\n';
    std::cout << "wrote " << out_dir << '\n';
  }

  if (o.check) {
    bool all = true;
    for (const auto& [name, pass] : xnits::check_study(mode, c, out)) {
      all = all && pass;
      if (!o.quiet || !pass) std::cout << (pass ? "PASS " : "FAIL ") << name << '\n';
    }
    if (!all && code == kOk) code = kCheck;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nitsche/XFEM interface studies"};
  app.require_subcommand(1);
  Options o;
  std::string mode;
  for (const char* name : {"run", "sweep", "conv"}) {
    const char* help = name[0] == 'r'   ? "solve one case and write solution.csv and report.csv"
                       : name[0] == 's' ? "sweep the stabilization parameter"
                                        : "mesh-refinement convergence study";
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    sub->callback([&mode, name] { mode = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  return run(mode, o);
}
