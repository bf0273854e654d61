// SPDX-License-Identifier: MIT
#pragma once

#include "xnits/assembly.hpp"
#include "xnits/mesh.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xnits {

/// Raw `key = value` entries grouped by `[section]`. Keys before the first
/// header belong to the section "". '#' starts a comment.
struct ConfigFile {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::map<std::string, int> header_lines;  // line of each [section] header
};

ConfigFile parse_config(std::istream& in);

enum class CaseKind { Bar, BlockStrip, Inclusion, PoissonBc, CustomMesh };

struct MethodEntry {
  std::string name;  // nitsche, nitsche-weighted, nitsche-fixed, penalty, lagrange
  MethodConfig config;
  bool uses_multiplier = false;  // alpha = multiplier * E / h
};

struct StudyConfig {
  CaseKind kind = CaseKind::Bar;
  std::string case_name = "bar";

  // [mesh]
  std::vector<double> h{1.0};
  int order = 1;
  MeshKind grid = MeshKind::TriangleRegular;
  std::string grid_name = "regular";
  std::uint64_t seed = 0;
  int dim = 1;            // block-strip only
  std::string mesh_file;  // custom-mesh-file only

  // [methods]
  std::vector<MethodEntry> methods;
  double alpha = 1.0e3;  // multiplier of E/h for fixed-alpha methods outside sweeps

  // [sweep]
  std::vector<double> alpha_multipliers;

  // [interface]
  std::string interface = "jump";  // jump | dirichlet
  double eps_hat = 0.5;
  std::optional<double> g;  // default 1 (bar) or 1.5e-6 (block-strip)
  std::string shape = "plane";  // custom mesh: plane | circle
  Point shape_point{0.0, 0.0};
  Point shape_normal{1.0, 0.0};
  double radius = 1.0;
  Point jump{0.0, 0.0};

  // [material]
  double E = 1.0;  // bar
  // Two-material cases; unset values keep the case defaults.
  std::optional<double> E_minus, nu_minus, E_plus, nu_plus;
  double a = 0.4, b = 2.0;  // inclusion radii

  // [poisson]
  double eps = 0.0;
  double gamma = 0.1;

  // [boundary] (custom mesh)
  std::vector<PrescribedDof> fixed_tags;  // node field holds the boundary tag
  std::vector<std::pair<int, Point>> tractions;

  // [output]
  std::string out_dir = "out";
  std::optional<bool> condition;  // compute condition numbers (default: sweep only)
};

/// Parses and validates; unknown sections or keys and malformed values throw
/// ConfigError naming the key and line.
StudyConfig load_study_config(std::istream& in);
StudyConfig load_study_config_file(const std::string& path);

MethodEntry method_from_name(const std::string& name, int line = 0);

}  // namespace xnits
