// SPDX-License-Identifier: MIT
#include "xnits/mesh.hpp"

#include "xnits/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>

namespace xnits {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

int cell_count(double length, double h, const char* axis) {
  const double ratio = length / h;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio))
    throw GeometryError(std::string("box extent along ") + axis + " is not a multiple of h");
  return static_cast<int>(n);
}

}  // namespace

int Mesh::nodes_per_element() const {
  switch (type) {
    case ElementType::Segment2: return 2;
    case ElementType::Triangle3: return 3;
    case ElementType::Triangle6: return 6;
  }
  return 0;
}

double Mesh::element_measure(int e) const {
  const auto& el = elements[e];
  if (dim == 1) return std::abs(nodes[el[1]].x() - nodes[el[0]].x());
  return 0.5 * cross(nodes[el[1]] - nodes[el[0]], nodes[el[2]] - nodes[el[0]]);
}

double Mesh::element_size(int e) const {
  const auto& el = elements[e];
  if (dim == 1) return element_measure(e);
  double longest = 0.0;
  for (int i = 0; i < 3; ++i)
    longest = std::max(longest, (nodes[el[(i + 1) % 3]] - nodes[el[i]]).norm());
  return longest;
}

double Mesh::max_element_size() const {
  double h = 0.0;
  for (int e = 0; e < num_elements(); ++e) h = std::max(h, element_size(e));
  return h;
}

void validate_mesh(const Mesh& mesh) {
  if (mesh.dim != 1 && mesh.dim != 2) throw GeometryError("mesh dimension must be 1 or 2");
  if ((mesh.dim == 1) != (mesh.type == ElementType::Segment2))
    throw GeometryError("element type does not match mesh dimension");
  const int nn = mesh.num_nodes();
  const int npe = mesh.nodes_per_element();
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.elements[e];
    if (static_cast<int>(el.size()) != npe)
      throw GeometryError("element " + std::to_string(e) + " has the wrong number of nodes");
    for (int n : el)
      if (n < 0 || n >= nn)
        throw GeometryError("element " + std::to_string(e) + " references a missing node");
    if (mesh.dim == 2 && !(mesh.element_measure(e) > 0.0))
      throw GeometryError("triangle " + std::to_string(e) + " has non-positive area");
    if (mesh.dim == 1 && !(mesh.element_measure(e) > 0.0))
      throw GeometryError("segment " + std::to_string(e) + " has zero length");
  }
  for (const auto& f : mesh.boundary)
    for (int n : f.nodes)
      if (n < 0 || n >= nn) throw GeometryError("boundary facet references a missing node");
}

Mesh build_structured_mesh(const Box& box, double h, MeshKind kind, std::uint64_t seed) {
  if (!(h > 0.0)) throw GeometryError("mesh size h must be positive");
  Mesh mesh;
  if (kind == MeshKind::Segment) {
    const int n = cell_count(box.hi.x() - box.lo.x(), h, "x");
    mesh.dim = 1;
    mesh.type = ElementType::Segment2;
    for (int i = 0; i <= n; ++i)
      mesh.nodes.emplace_back(box.lo.x() + (box.hi.x() - box.lo.x()) * i / n, 0.0);
    for (int i = 0; i < n; ++i) mesh.elements.push_back({i, i + 1});
    mesh.boundary.push_back({{0}, 0});
    mesh.boundary.push_back({{n}, 1});
    return mesh;
  }

  const int nx = cell_count(box.hi.x() - box.lo.x(), h, "x");
  const int ny = cell_count(box.hi.y() - box.lo.y(), h, "y");
  mesh.dim = 2;
  mesh.type = ElementType::Triangle3;
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.nodes.emplace_back(box.lo.x() + (box.hi.x() - box.lo.x()) * i / nx,
                              box.lo.y() + (box.hi.y() - box.lo.y()) * j / ny);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool perturb = kind != MeshKind::TriangleRegular;
  const bool mixed = kind == MeshKind::TriangleIrregularMixed;
  if (perturb) {
    for (int j = 1; j < ny; ++j)
      for (int i = 1; i < nx; ++i) {
        const double r = 0.2 * h * unit(rng);
        const double t = 2.0 * std::numbers::pi * unit(rng);
        mesh.nodes[id(i, j)] += Point(r * std::cos(t), r * std::sin(t));
      }
  }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      const bool flip = mixed && unit(rng) < 0.5;
      if (!flip) {
        mesh.elements.push_back({a, b, c});
        mesh.elements.push_back({a, c, d});
      } else {
        mesh.elements.push_back({a, b, d});
        mesh.elements.push_back({b, c, d});
      }
    }
  for (int i = 0; i < nx; ++i) mesh.boundary.push_back({{id(i, 0), id(i + 1, 0)}, 0});
  for (int j = 0; j < ny; ++j) mesh.boundary.push_back({{id(nx, j), id(nx, j + 1)}, 1});
  for (int i = nx; i > 0; --i) mesh.boundary.push_back({{id(i, ny), id(i - 1, ny)}, 2});
  for (int j = ny; j > 0; --j) mesh.boundary.push_back({{id(0, j), id(0, j - 1)}, 3});
  validate_mesh(mesh);
  return mesh;
}

Mesh elevate_to_quadratic(const Mesh& mesh) {
  if (mesh.type != ElementType::Triangle3)
    throw GeometryError("only linear triangle meshes can be elevated");
  Mesh out = mesh;
  out.type = ElementType::Triangle6;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = out.num_nodes();
    out.nodes.push_back(0.5 * (mesh.nodes[a] + mesh.nodes[b]));
    midpoint.emplace(key, id);
    return id;
  };
  for (auto& el : out.elements) {
    const int a = el[0], b = el[1], c = el[2];
    el = {a, b, c, mid(a, b), mid(b, c), mid(c, a)};
  }
  for (auto& f : out.boundary) f.nodes = {f.nodes[0], f.nodes[1], mid(f.nodes[0], f.nodes[1])};
  return out;
}

namespace {

// Next non-empty, comment-stripped line.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::vector<double> numbers(const std::string& line) {
  std::istringstream ss(line);
  std::vector<double> v;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw GeometryError("bad number '" + tok + "' in mesh file");
    } catch (const std::logic_error&) {
      throw GeometryError("bad number '" + tok + "' in mesh file");
    }
  }
  return v;
}

int as_index(double v) {
  if (v != std::floor(v)) throw GeometryError("non-integer id in mesh file");
  return static_cast<int>(v);
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw GeometryError("empty mesh file");
  const auto head = numbers(line);
  if (head.size() != 3) throw GeometryError("mesh header must be 'dim n_nodes n_elems'");
  Mesh mesh;
  mesh.dim = as_index(head[0]);
  const int nn = as_index(head[1]);
  const int ne = as_index(head[2]);
  if (mesh.dim != 1 && mesh.dim != 2) throw GeometryError("mesh dimension must be 1 or 2");
  mesh.nodes.assign(nn, Point::Zero());
  std::vector<bool> seen(nn, false);
  for (int k = 0; k < nn; ++k) {
    if (!next_line(in, line)) throw GeometryError("truncated node section");
    const auto v = numbers(line);
    if (static_cast<int>(v.size()) != mesh.dim + 1) throw GeometryError("bad node line: " + line);
    const int id = as_index(v[0]);
    if (id < 0 || id >= nn || seen[id]) throw GeometryError("bad node id in line: " + line);
    seen[id] = true;
    mesh.nodes[id] = Point(v[1], mesh.dim == 2 ? v[2] : 0.0);
  }
  mesh.elements.assign(ne, {});
  std::vector<bool> eseen(ne, false);
  for (int k = 0; k < ne; ++k) {
    if (!next_line(in, line)) throw GeometryError("truncated element section");
    const auto v = numbers(line);
    const int id = as_index(v.at(0));
    if (id < 0 || id >= ne || eseen[id]) throw GeometryError("bad element id in line: " + line);
    eseen[id] = true;
    for (std::size_t i = 1; i < v.size(); ++i) mesh.elements[id].push_back(as_index(v[i]));
  }
  if (mesh.dim == 1) {
    mesh.type = ElementType::Segment2;
  } else {
    const std::size_t npe = ne > 0 ? mesh.elements[0].size() : 3;
    mesh.type = npe == 6 ? ElementType::Triangle6 : ElementType::Triangle3;
  }
  if (next_line(in, line)) {
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word != "boundary") throw GeometryError("expected 'boundary' section, got: " + line);
    while (next_line(in, line)) {
      const auto v = numbers(line);
      if (v.size() < 2) throw GeometryError("bad boundary line: " + line);
      BoundaryFacet f;
      for (std::size_t i = 0; i + 1 < v.size(); ++i) f.nodes.push_back(as_index(v[i]));
      f.tag = as_index(v.back());
      mesh.boundary.push_back(std::move(f));
    }
  }
  validate_mesh(mesh);
  return mesh;
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  std::ostringstream s;
  s.precision(17);
  s << mesh.dim << ' ' << mesh.num_nodes() << ' ' << mesh.num_elements() << '\n';
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    s << i << ' ' << mesh.nodes[i].x();
    if (mesh.dim == 2) s << ' ' << mesh.nodes[i].y();
    s << '\n';
  }
  for (int e = 0; e < mesh.num_elements(); ++e) {
    s << e;
    for (int n : mesh.elements[e]) s << ' ' << n;
    s << '\n';
  }
  s << "boundary\n";
  for (const auto& f : mesh.boundary) {
    for (int n : f.nodes) s << n << ' ';
    s << f.tag << '\n';
  }
  out << s.str();
}

}  // namespace xnits
