// SPDX-License-Identifier: MIT
#include "xnits/config.hpp"

#include "xnits/errors.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <tuple>

namespace xnits {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string where(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

double to_double(const std::string& text, const std::string& key, int line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ConfigError("key '" + key + "': expected a number, got '" + text + "'", line);
  return v;
}

long to_int(const std::string& text, const std::string& key, int line) {
  long v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'", line);
  return v;
}

Point to_point(const std::string& text, const std::string& key, int line) {
  const auto parts = split_list(text);
  if (parts.size() != 2) throw ConfigError("key '" + key + "': expected two comma-separated numbers", line);
  return {to_double(parts[0], key, line), to_double(parts[1], key, line)};
}

bool to_bool(const std::string& text, const std::string& key, int line) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + text + "'", line);
}

}  // namespace

ConfigFile parse_config(std::istream& in) {
  ConfigFile cfg;
  std::string section;
  cfg.sections[section];
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) throw ConfigError("malformed section header '" + text + "'", line);
      section = trim(text.substr(1, text.size() - 2));
      cfg.sections[section];
      cfg.header_lines.emplace(section, line);
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + text + "'", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line);
    if (value.empty()) throw ConfigError("key '" + where(section, key) + "' has no value", line);
    auto [it, inserted] = cfg.sections[section].emplace(key, ConfigFile::Entry{value, line});
    if (!inserted) throw ConfigError("duplicate key '" + where(section, key) + "'", line);
  }
  return cfg;
}

MethodEntry method_from_name(const std::string& name, int line) {
  MethodEntry m;
  m.name = name;
  if (name == "nitsche") {
    m.config = MethodConfig::nitsche();
  } else if (name == "nitsche-weighted") {
    m.config = MethodConfig::nitsche(Weighting::Weighted);
  } else if (name == "nitsche-fixed") {
    m.config = MethodConfig::nitsche_fixed(1.0);
    m.uses_multiplier = true;
  } else if (name == "penalty") {
    m.config = MethodConfig::penalty(1.0);
    m.uses_multiplier = true;
  } else if (name == "lagrange") {
    m.config = MethodConfig::lagrange();
  } else {
    throw ConfigError("key 'methods.list': unknown method '" + name + "'", line);
  }
  return m;
}

StudyConfig load_study_config(std::istream& in) {
  const ConfigFile file = parse_config(in);
  StudyConfig c;

  // Every accepted key with its handler; anything else is an error.
  using Handler = std::function<void(const std::string&, const std::string&, int)>;
  const std::map<std::string, std::map<std::string, Handler>> grammar = {
      {"",
       {{"case",
         [&](const std::string& v, const std::string& k, int l) {
           static const std::map<std::string, CaseKind> kinds = {{"bar", CaseKind::Bar},
                                                                 {"block-strip", CaseKind::BlockStrip},
                                                                 {"inclusion", CaseKind::Inclusion},
                                                                 {"poisson-bc", CaseKind::PoissonBc},
                                                                 {"custom-mesh-file", CaseKind::CustomMesh}};
           const auto it = kinds.find(v);
           if (it == kinds.end()) throw ConfigError("key '" + k + "': unknown case '" + v + "'", l);
           c.kind = it->second;
           c.case_name = v;
         }}}},
      {"mesh",
       {{"h",
         [&](const std::string& v, const std::string& k, int l) {
           c.h.clear();
           for (const auto& s : split_list(v)) {
             const double h = to_double(s, k, l);
             if (!(h > 0.0)) throw ConfigError("key '" + k + "': mesh sizes must be positive", l);
             c.h.push_back(h);
           }
         }},
        {"order",
         [&](const std::string& v, const std::string& k, int l) {
           c.order = static_cast<int>(to_int(v, k, l));
           if (c.order != 1 && c.order != 2) throw ConfigError("key '" + k + "': order must be 1 or 2", l);
         }},
        {"grid",
         [&](const std::string& v, const std::string& k, int l) {
           if (v == "regular") c.grid = MeshKind::TriangleRegular;
           else if (v == "irregular") c.grid = MeshKind::TriangleIrregular;
           else if (v == "triangular-irregular") c.grid = MeshKind::TriangleIrregularMixed;
           else throw ConfigError("key '" + k + "': grid must be regular, irregular or triangular-irregular", l);
           c.grid_name = v;
         }},
        {"seed",
         [&](const std::string& v, const std::string& k, int l) {
           const long s = to_int(v, k, l);
           if (s < 0) throw ConfigError("key '" + k + "': seed must be non-negative", l);
           c.seed = static_cast<std::uint64_t>(s);
         }},
        {"dim",
         [&](const std::string& v, const std::string& k, int l) {
           c.dim = static_cast<int>(to_int(v, k, l));
           if (c.dim != 1 && c.dim != 2) throw ConfigError("key '" + k + "': dim must be 1 or 2", l);
         }},
        {"file", [&](const std::string& v, const std::string&, int) { c.mesh_file = v; }}}},
      {"methods",
       {{"list",
         [&](const std::string& v, const std::string&, int l) {
           c.methods.clear();
           for (const auto& s : split_list(v)) c.methods.push_back(method_from_name(s, l));
         }},
        {"alpha",
         [&](const std::string& v, const std::string& k, int l) {
           c.alpha = to_double(v, k, l);
           if (!(c.alpha > 0.0)) throw ConfigError("key '" + k + "': alpha multiplier must be positive", l);
         }}}},
      {"sweep",
       {{"alpha",
         [&](const std::string& v, const std::string& k, int l) {
           c.alpha_multipliers.clear();
           for (const auto& s : split_list(v)) {
             const double a = to_double(s, k, l);
             if (!(a > 0.0)) throw ConfigError("key '" + k + "': alpha multipliers must be positive", l);
             c.alpha_multipliers.push_back(a);
           }
         }}}},
      {"interface",
       {{"type",
         [&](const std::string& v, const std::string& k, int l) {
           if (v != "jump" && v != "dirichlet") throw ConfigError("key '" + k + "': type must be jump or dirichlet", l);
           c.interface = v;
         }},
        {"eps_hat",
         [&](const std::string& v, const std::string& k, int l) {
           c.eps_hat = to_double(v, k, l);
           if (!(c.eps_hat > 0.0 && c.eps_hat < 1.0)) throw ConfigError("key '" + k + "': must lie in (0, 1)", l);
         }},
        {"g", [&](const std::string& v, const std::string& k, int l) { c.g = to_double(v, k, l); }},
        {"shape",
         [&](const std::string& v, const std::string& k, int l) {
           if (v != "plane" && v != "circle") throw ConfigError("key '" + k + "': shape must be plane or circle", l);
           c.shape = v;
         }},
        {"point", [&](const std::string& v, const std::string& k, int l) { c.shape_point = to_point(v, k, l); }},
        {"normal", [&](const std::string& v, const std::string& k, int l) { c.shape_normal = to_point(v, k, l); }},
        {"radius", [&](const std::string& v, const std::string& k, int l) { c.radius = to_double(v, k, l); }},
        {"jump", [&](const std::string& v, const std::string& k, int l) { c.jump = to_point(v, k, l); }}}},
      {"material",
       {{"E", [&](const std::string& v, const std::string& k, int l) { c.E = to_double(v, k, l); }},
        {"E_minus", [&](const std::string& v, const std::string& k, int l) { c.E_minus = to_double(v, k, l); }},
        {"nu_minus", [&](const std::string& v, const std::string& k, int l) { c.nu_minus = to_double(v, k, l); }},
        {"E_plus", [&](const std::string& v, const std::string& k, int l) { c.E_plus = to_double(v, k, l); }},
        {"nu_plus", [&](const std::string& v, const std::string& k, int l) { c.nu_plus = to_double(v, k, l); }},
        {"a", [&](const std::string& v, const std::string& k, int l) { c.a = to_double(v, k, l); }},
        {"b", [&](const std::string& v, const std::string& k, int l) { c.b = to_double(v, k, l); }}}},
      {"poisson",
       {{"eps", [&](const std::string& v, const std::string& k, int l) { c.eps = to_double(v, k, l); }},
        {"gamma", [&](const std::string& v, const std::string& k, int l) { c.gamma = to_double(v, k, l); }}}},
      {"boundary",
       {{"fix",
         [&](const std::string& v, const std::string& k, int l) {
           // tag:component=value, ...
           for (const auto& item : split_list(v)) {
             const auto colon = item.find(':'), eq = item.find('=');
             if (colon == std::string::npos || eq == std::string::npos || eq < colon)
               throw ConfigError("key '" + k + "': expected tag:component=value, got '" + item + "'", l);
             PrescribedDof d;
             d.node = static_cast<int>(to_int(trim(item.substr(0, colon)), k, l));
             d.component = static_cast<int>(to_int(trim(item.substr(colon + 1, eq - colon - 1)), k, l));
             d.value = to_double(trim(item.substr(eq + 1)), k, l);
             c.fixed_tags.push_back(d);
           }
         }},
        {"traction",
         [&](const std::string& v, const std::string& k, int l) {
           // tag:tx;ty, ...
           for (const auto& item : split_list(v)) {
             const auto colon = item.find(':'), semi = item.find(';');
             if (colon == std::string::npos)
               throw ConfigError("key '" + k + "': expected tag:tx;ty, got '" + item + "'", l);
             const int tag = static_cast<int>(to_int(trim(item.substr(0, colon)), k, l));
             Point t = Point::Zero();
             if (semi == std::string::npos) {
               t.x() = to_double(trim(item.substr(colon + 1)), k, l);
             } else {
               t.x() = to_double(trim(item.substr(colon + 1, semi - colon - 1)), k, l);
               t.y() = to_double(trim(item.substr(semi + 1)), k, l);
             }
             c.tractions.emplace_back(tag, t);
           }
         }}}},
      {"output",
       {{"dir", [&](const std::string& v, const std::string&, int) { c.out_dir = v; }},
        {"condition", [&](const std::string& v, const std::string& k, int l) { c.condition = to_bool(v, k, l); }}}},
  };

  for (const auto& [section, entries] : file.sections) {
    const auto g = grammar.find(section);
    if (g == grammar.end()) {
      const auto h = file.header_lines.find(section);
      const int line = h != file.header_lines.end() ? h->second : 0;
      throw ConfigError("unknown section '[" + section + "]'", line);
    }
    for (const auto& [key, entry] : entries)
      if (!g->second.count(key)) throw ConfigError("unknown key '" + where(section, key) + "'", entry.line);
  }
  std::vector<std::tuple<int, std::string, std::string>> order;
  for (const auto& [section, entries] : file.sections)
    for (const auto& [key, entry] : entries) order.emplace_back(entry.line, section, key);
  std::sort(order.begin(), order.end());
  for (const auto& [line, section, key] : order)
    grammar.at(section).at(key)(file.sections.at(section).at(key).value, where(section, key), line);

  if (c.methods.empty()) c.methods.push_back(method_from_name("nitsche"));
  if (c.kind == CaseKind::CustomMesh && c.mesh_file.empty())
    throw ConfigError("key 'mesh.file' is required for case custom-mesh-file");
  return c;
}

StudyConfig load_study_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  StudyConfig c = load_study_config(in);
  // Mesh files are looked up next to the config file.
  if (!c.mesh_file.empty() && std::filesystem::path(c.mesh_file).is_relative())
    c.mesh_file = (std::filesystem::path(path).parent_path() / c.mesh_file).string();
  return c;
}

}  // namespace xnits
