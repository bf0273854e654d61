// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/benchmarks.hpp"
#include "xnits/config.hpp"
#include "xnits/solve.hpp"
#include "xnits/verify.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xnits {

/// One mesh instance of a configured case.
struct CaseSetup {
  Benchmark bench;
  double h = 0.0;
  bool has_exact = true;
  bool poisson = false;  // scalar boundary-condition family instead of elasticity
};

CaseSetup build_case(const StudyConfig& c, double h);

/// Fixed-alpha methods get alpha = multiplier * E / h; automatic ones ignore it.
MethodConfig resolve_method(const MethodEntry& m, double multiplier, double E, double h);

struct CellResult {
  std::string method;
  double alpha = 0.0;  // value used (mean element value for automatic alpha)
  ErrorReport report;
  Solution solution;
  bool ok = true;
  std::string error;
};

CellResult run_cell(const StudyConfig& c, const CaseSetup& setup, const MethodEntry& m, double multiplier,
                    bool with_condition);

struct SweepRow {
  std::string method;
  double multiplier = 0.0;
  double alpha = 0.0;  // nominal multiplier * E / h
  CellResult cell;
};

struct ConvergenceFit {
  std::string method;
  bool exact = false;  // every error at roundoff level; no slope fitted
  double energy_slope = 0.0;
  double l2_slope = 0.0;
};

struct StudyOutput {
  std::vector<CellResult> cells;    // run and conv, in (h, method) order
  std::vector<SweepRow> sweep;      // sweep only
  std::vector<ConvergenceFit> fits; // conv only
};

/// Each writes its CSV/SVG files into out_dir (created if missing).
StudyOutput run_case(const StudyConfig& c, const std::string& out_dir);
StudyOutput run_sweep(const StudyConfig& c, const std::string& out_dir);
StudyOutput run_convergence(const StudyConfig& c, const std::string& out_dir);

/// Built-in property checks for a finished study; each entry is (name, pass).
std::vector<std::pair<std::string, bool>> check_study(const std::string& mode, const StudyConfig& c,
                                                      const StudyOutput& out);

/// Deterministic number format used in every CSV ("nan" for non-finite).
std::string format_number(double v);

}  // namespace xnits
