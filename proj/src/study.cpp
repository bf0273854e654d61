// SPDX-License-Identifier: MIT
#include "xnits/study.hpp"

#include "xnits/errors.hpp"
#include "xnits/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

namespace xnits {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

InterfaceKind interface_kind(const StudyConfig& c) {
  return c.interface == "dirichlet" ? InterfaceKind::Dirichlet : InterfaceKind::Jump;
}

Material make_material(std::optional<double> E, std::optional<double> nu, double E0, double nu0, Regime r) {
  return Material{E.value_or(E0), nu.value_or(nu0), r};
}

// -u'' = 1 on [0, 1] with eps u' n + u = 0 at both ends: u = (x - x^2 + eps) / 2.
CaseSetup poisson_case(const StudyConfig& c, double h) {
  CaseSetup s;
  s.h = h;
  s.poisson = true;
  const Mesh mesh = build_structured_mesh(Box{{0.0, 0.0}, {1.0, 0.0}}, h, MeshKind::Segment);
  const Material unit{1.0, 0.0, Regime::Bar1D};
  s.bench.problem = make_problem(mesh, Plane{{2.0, 0.0}, {1.0, 0.0}}, unit, unit, JumpCondition{});
  const double eps = c.eps;
  s.bench.exact.displacement = [eps](const Point& x, int) {
    return Eigen::VectorXd::Constant(1, 0.5 * (x.x() - x.x() * x.x() + eps));
  };
  s.bench.exact.strain = [](const Point& x, int) { return Eigen::VectorXd::Constant(1, 0.5 - x.x()); };
  return s;
}

CaseSetup custom_case(const StudyConfig& c) {
  std::ifstream in(c.mesh_file);
  if (!in) throw ConfigError("key 'mesh.file': cannot open '" + c.mesh_file + "'");
  Mesh mesh = read_mesh(in);
  const Regime regime = mesh.dim == 1 ? Regime::Bar1D : Regime::PlaneStrain;
  const Material minus = make_material(c.E_minus, c.nu_minus, 1.0, 0.0, regime);
  const Material plus = make_material(c.E_plus, c.nu_plus, 1.0, 0.0, regime);
  Shape shape = c.shape == "circle" ? Shape(Circle{c.shape_point, c.radius})
                                    : Shape(Plane{c.shape_point, c.shape_normal});
  InterfaceCondition cond;
  if (c.interface == "dirichlet") {
    DirichletCondition d;
    d.plus = constant_field(c.jump);
    d.minus = constant_field(0.0);
    cond = d;
  } else {
    JumpCondition j;
    j.jump = constant_field(c.jump);
    cond = j;
  }
  CaseSetup s;
  s.has_exact = false;
  s.h = mesh.max_element_size();
  s.bench.problem = make_problem(std::move(mesh), shape, minus, plus, cond);
  Problem& p = s.bench.problem;
  for (const PrescribedDof& f : c.fixed_tags) {
    if (f.component < 0 || f.component >= p.components())
      throw ConfigError("key 'boundary.fix': component out of range");
    bool found = false;
    for (const BoundaryFacet& bf : p.mesh.boundary)
      if (bf.tag == f.node) {
        found = true;
        for (int n : bf.nodes) p.prescribed.push_back({n, f.component, f.value});
      }
    if (!found) throw ConfigError("key 'boundary.fix': no boundary facet has tag " + std::to_string(f.node));
  }
  for (const auto& [tag, t] : c.tractions) {
    const Point value = t;
    p.tractions.push_back({tag, [value](const Point&, const Point&) { return value; }});
  }
  s.bench.reference_stiffness = std::max(minus.E, plus.E);
  return s;
}

}  // namespace

CaseSetup build_case(const StudyConfig& c, double h) {
  const InterfaceKind kind = interface_kind(c);
  CaseSetup s;
  s.h = h;
  switch (c.kind) {
    case CaseKind::Bar:
      s.bench = bar_benchmark(c.eps_hat, c.g.value_or(1.0), h, c.E, kind);
      break;
    case CaseKind::BlockStrip:
      if (c.dim == 1) {
        const long n = std::lround(25.0 / h);
        if (n < 1 || std::abs(n * h - 25.0) > 1e-9 * 25.0)
          throw ConfigError("key 'mesh.h': the strip length 25 must be a multiple of h");
        s.bench = block_strip_1d(static_cast<int>(n), kind, c.g.value_or(1.5e-6));
      } else {
        s.bench = block_strip_2d(h, kind, c.grid, c.order, c.seed, c.g.value_or(1.5e-6));
      }
      break;
    case CaseKind::Inclusion: {
      InclusionSetup setup;
      setup.a = c.a;
      setup.b = c.b;
      setup.inclusion = make_material(c.E_minus, c.nu_minus, 10.0, 0.3, Regime::PlaneStrain);
      setup.matrix = make_material(c.E_plus, c.nu_plus, 1.0, 0.25, Regime::PlaneStrain);
      s.bench = inclusion_benchmark(h, c.grid, c.order, c.seed, setup);
      break;
    }
    case CaseKind::PoissonBc:
      return poisson_case(c, h);
    case CaseKind::CustomMesh:
      return custom_case(c);
  }
  return s;
}

MethodConfig resolve_method(const MethodEntry& m, double multiplier, double E, double h) {
  MethodConfig mc = m.config;
  if (m.uses_multiplier) mc.alpha = multiplier * E / h;
  return mc;
}

namespace {

double alpha_used(const Problem& p, const MethodConfig& m) {
  if (m.method == Method::Lagrange) return 0.0;
  if (m.method == Method::Penalty || m.alpha_mode == AlphaMode::Fixed) return m.alpha;
  double sum = 0.0;
  int count = 0;
  const bool jump = std::holds_alternative<JumpCondition>(p.condition);
  for (int e = 0; e < p.mesh.num_elements(); ++e) {
    if (!p.cut.is_cut(e)) continue;
    const InterfaceParams ip = interface_params(p, m, e);
    sum += jump ? ip.alpha : 0.5 * (ip.alpha_plus + ip.alpha_minus);
    ++count;
  }
  return count ? sum / count : 0.0;
}

void nan_report(ErrorReport& r) {
  r.energy_error = r.energy_error_rel = r.l2_error = r.l2_error_rel = kNaN;
}

}  // namespace

CellResult run_cell(const StudyConfig& c, const CaseSetup& setup, const MethodEntry& m, double multiplier,
                    bool with_condition) {
  CellResult cell;
  const Problem& p = setup.bench.problem;
  cell.method = setup.poisson ? "poisson-eps" : m.name;
  LinearSystem sys;
  if (setup.poisson) {
    const auto zero = [](double) { return 0.0; };
    const auto one = [](double) { return 1.0; };
    sys = assemble_poisson_eps_bc(p.mesh, c.eps, c.gamma, zero, zero, one);
    cell.alpha = c.gamma;
  } else {
    const MethodConfig mc = resolve_method(m, multiplier, setup.bench.reference_stiffness, setup.h);
    sys = assemble(p, mc);
    cell.alpha = alpha_used(p, mc);
  }
  cell.report.h = setup.h;
  cell.report.dofs = p.dofs.num_dofs();
  cell.report.method = cell.method;
  cell.report.alpha = cell.alpha;
  try {
    cell.solution = solve(sys);
  } catch (const SolverError& e) {
    cell.ok = false;
    cell.error = e.what();
    nan_report(cell.report);
    return cell;
  }
  if (setup.has_exact) {
    const ErrorReport r = error_report(p, cell.solution.u, setup.bench.exact);
    cell.report.energy_error = r.energy_error;
    cell.report.energy_error_rel = r.energy_error_rel;
    cell.report.l2_error = r.l2_error;
    cell.report.l2_error_rel = r.l2_error_rel;
  } else {
    nan_report(cell.report);
  }
  if (with_condition) {
    try {
      cell.report.condition_number = condition_number(reduced_sparse(sys));
    } catch (const std::exception&) {
      cell.report.condition_number = kNaN;
    }
  }
  return cell;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

namespace {

std::filesystem::path prepare(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "': " + ec.message());
  return dir;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::string cond_field(const ErrorReport& r) {
  return r.condition_number ? format_number(*r.condition_number) : "";
}

void write_report_header(std::ostream& out) {
  out << "method,h,dofs,alpha,energy_error,energy_error_rel,l2_error,l2_error_rel,condition_number\n";
}

void write_report_row(std::ostream& out, const CellResult& cell) {
  const ErrorReport& r = cell.report;
  out << cell.method << ',' << format_number(r.h) << ',' << r.dofs << ',' << format_number(cell.alpha) << ','
      << format_number(r.energy_error) << ',' << format_number(r.energy_error_rel) << ','
      << format_number(r.l2_error) << ',' << format_number(r.l2_error_rel) << ',' << cond_field(r) << '\n';
}

bool want_condition(const StudyConfig& c, bool fallback) { return c.condition.value_or(fallback); }

}  // namespace

StudyOutput run_case(const StudyConfig& c, const std::string& out_dir) {
  const auto dir = prepare(out_dir);
  StudyOutput out;
  const CaseSetup setup = build_case(c, c.h.front());
  const Problem& p = setup.bench.problem;
  const int comps = p.components();
  const bool cond = want_condition(c, false);
  for (const MethodEntry& m : c.methods) {
    out.cells.push_back(run_cell(c, setup, m, c.alpha, cond));
    if (setup.poisson) break;
  }

  std::ofstream sol = open_out(dir / "solution.csv");
  sol << "method,node,x,y";
  const char* axes[] = {"x", "y"};
  for (int d = 0; d < comps; ++d) sol << ",u_" << axes[d];
  for (int d = 0; d < comps; ++d) sol << ",a_" << axes[d];
  sol << '\n';
  for (const CellResult& cell : out.cells) {
    if (!cell.ok) continue;
    for (int n = 0; n < p.mesh.num_nodes(); ++n) {
      sol << cell.method << ',' << n << ',' << format_number(p.mesh.nodes[n].x()) << ','
          << format_number(p.mesh.nodes[n].y());
      for (int d = 0; d < comps; ++d) sol << ',' << format_number(cell.solution.classical(p.dofs, n, d));
      for (int d = 0; d < comps; ++d) sol << ',' << format_number(cell.solution.enriched(p.dofs, n, d));
      sol << '\n';
    }
  }
  std::ofstream rep = open_out(dir / "report.csv");
  write_report_header(rep);
  for (const CellResult& cell : out.cells) write_report_row(rep, cell);
  return out;
}

StudyOutput run_sweep(const StudyConfig& c, const std::string& out_dir) {
  if (c.alpha_multipliers.empty()) throw ConfigError("key 'sweep.alpha' is required for a sweep");
  const auto dir = prepare(out_dir);
  StudyOutput out;
  const CaseSetup setup = build_case(c, c.h.front());
  const bool cond = want_condition(c, true);
  const double scale = setup.bench.reference_stiffness / setup.h;
  for (const MethodEntry& m : c.methods)
    for (double mult : c.alpha_multipliers) {
      SweepRow row;
      row.method = m.name;
      row.multiplier = mult;
      row.alpha = mult * scale;
      row.cell = run_cell(c, setup, m, mult, cond);
      out.sweep.push_back(std::move(row));
    }

  std::ofstream csv = open_out(dir / "sweep.csv");
  csv << "method,alpha,energy_error_rel,l2_error_rel,condition_number\n";
  for (const SweepRow& r : out.sweep)
    csv << r.method << ',' << format_number(r.alpha) << ',' << format_number(r.cell.report.energy_error_rel) << ','
        << format_number(r.cell.report.l2_error_rel) << ',' << cond_field(r.cell.report) << '\n';

  PlotSpec plot;
  plot.title = "Error against stabilization (" + c.case_name + ")";
  plot.x_label = "stabilization alpha [E/h]";
  plot.y_label = "relative energy error [-]";
  for (const MethodEntry& m : c.methods) {
    PlotSeries s{m.name, {}};
    for (const SweepRow& r : out.sweep)
      if (r.method == m.name) s.points.emplace_back(r.multiplier, r.cell.report.energy_error_rel);
    plot.series.push_back(std::move(s));
  }
  std::ofstream svg = open_out(dir / "sweep.svg");
  write_loglog_svg(svg, plot);
  return out;
}

StudyOutput run_convergence(const StudyConfig& c, const std::string& out_dir) {
  if (c.h.size() < 3) throw ConfigError("key 'mesh.h' needs at least three sizes for a convergence study");
  const auto dir = prepare(out_dir);
  StudyOutput out;
  const bool cond = want_condition(c, false);
  for (double h : c.h) {
    const CaseSetup setup = build_case(c, h);
    for (const MethodEntry& m : c.methods) {
      out.cells.push_back(run_cell(c, setup, m, c.alpha, cond));
      if (setup.poisson) break;
    }
  }

  std::ofstream csv = open_out(dir / "convergence.csv");
  write_report_header(csv);
  for (const CellResult& cell : out.cells) write_report_row(csv, cell);

  std::ofstream rates = open_out(dir / "rates.csv");
  rates << "method,energy_slope,l2_slope,note\n";
  PlotSpec plot;
  plot.title = "Convergence (" + c.case_name + ", order " + std::to_string(c.order) + ")";
  plot.x_label = "mesh size h [length]";
  plot.y_label = "relative error [-]";
  std::vector<std::string> names;
  for (const CellResult& cell : out.cells)
    if (std::find(names.begin(), names.end(), cell.method) == names.end()) names.push_back(cell.method);
  for (const std::string& name : names) {
    std::vector<std::pair<double, double>> energy, l2;
    PlotSeries se{name + " energy", {}}, sl{name + " L2", {}};
    bool failed = false, exact = true;
    for (const CellResult& cell : out.cells) {
      if (cell.method != name) continue;
      if (!cell.ok || !std::isfinite(cell.report.energy_error)) failed = true;
      energy.emplace_back(cell.report.h, cell.report.energy_error);
      l2.emplace_back(cell.report.h, cell.report.l2_error);
      se.points.emplace_back(cell.report.h, cell.report.energy_error_rel);
      sl.points.emplace_back(cell.report.h, cell.report.l2_error_rel);
      if (!(cell.report.energy_error <= 1e-12 && cell.report.l2_error <= 1e-12)) exact = false;
    }
    ConvergenceFit fit;
    fit.method = name;
    std::string note;
    if (failed) {
      fit.energy_slope = fit.l2_slope = kNaN;
      note = "solver failure or missing exact solution";
    } else if (exact) {
      fit.exact = true;
      fit.energy_slope = fit.l2_slope = kNaN;
      note = "exact solution; no slope fitted";
    } else {
      fit.energy_slope = fit_rate(energy);
      fit.l2_slope = fit_rate(l2);
    }
    rates << name << ',' << format_number(fit.energy_slope) << ',' << format_number(fit.l2_slope) << ','
          << note << '\n';
    out.fits.push_back(fit);
    plot.series.push_back(std::move(se));
    plot.series.push_back(std::move(sl));
  }
  std::ofstream svg = open_out(dir / "convergence.svg");
  write_loglog_svg(svg, plot);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, bool>> check_study(const std::string& mode, const StudyConfig& c,
                                                      const StudyOutput& out) {
  std::vector<std::pair<std::string, bool>> checks;
  const bool representable = c.kind == CaseKind::Bar || c.kind == CaseKind::BlockStrip;
  if (mode == "run") {
    for (const CellResult& cell : out.cells) {
      checks.emplace_back(cell.method + " solved", cell.ok);
      if (representable && cell.method != "penalty")
        checks.emplace_back(cell.method + " reproduces the exact field", cell.report.energy_error_rel <= 1e-10);
    }
  } else if (mode == "sweep") {
    std::map<std::string, std::vector<const SweepRow*>> by;
    for (const SweepRow& r : out.sweep) by[r.method].push_back(&r);
    for (const auto& [name, rows] : by) {
      bool all_ok = true;
      for (const SweepRow* r : rows) all_ok = all_ok && r->cell.ok;
      checks.emplace_back(name + " solved at every alpha", all_ok);
      if (!all_ok) continue;
      if (name == "penalty") {
        bool decreasing = true;
        for (std::size_t i = 1; i < rows.size(); ++i)
          decreasing = decreasing && rows[i]->cell.report.energy_error_rel < rows[i - 1]->cell.report.energy_error_rel;
        checks.emplace_back("penalty error decreases with alpha", decreasing);
        if (rows.size() >= 2 && rows.back()->cell.report.condition_number &&
            rows[rows.size() - 2]->cell.report.condition_number) {
          const double k1 = *rows[rows.size() - 2]->cell.report.condition_number;
          const double k2 = *rows.back()->cell.report.condition_number;
          const double slope = std::log(k2 / k1) / std::log(rows.back()->alpha / rows[rows.size() - 2]->alpha);
          checks.emplace_back("penalty condition number grows at least linearly", slope >= 0.95);
        }
      } else if (name == "nitsche" || name == "nitsche-weighted") {
        if (representable) {
          bool exact = true;
          for (const SweepRow* r : rows) exact = exact && r->cell.report.energy_error_rel < 1e-10;
          checks.emplace_back(name + " error below 1e-10 at every alpha", exact);
        }
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        bool have = true;
        for (const SweepRow* r : rows) {
          if (!r->cell.report.condition_number) {
            have = false;
            break;
          }
          lo = std::min(lo, *r->cell.report.condition_number);
          hi = std::max(hi, *r->cell.report.condition_number);
        }
        if (have) checks.emplace_back(name + " condition number varies by less than 2x", hi < 2.0 * lo);
      }
    }
  } else if (mode == "conv") {
    for (const ConvergenceFit& f : out.fits) {
      if (f.exact) {
        checks.emplace_back(f.method + " exact at every h", true);
        continue;
      }
      if (representable) {
        checks.emplace_back(f.method + " exact at every h", false);
        continue;
      }
      const bool finite = std::isfinite(f.energy_slope) && std::isfinite(f.l2_slope);
      if (c.order == 1) {
        checks.emplace_back(f.method + " energy slope in [0.9, 1.2]",
                            finite && f.energy_slope >= 0.9 && f.energy_slope <= 1.2);
        checks.emplace_back(f.method + " L2 slope in [1.8, 2.2]", finite && f.l2_slope >= 1.8 && f.l2_slope <= 2.2);
      } else {
        checks.emplace_back(f.method + " energy slope at least 0.9", finite && f.energy_slope >= 0.9);
      }
    }
  }
  return checks;
}

}  // namespace xnits
