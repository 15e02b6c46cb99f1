#include "ballshape/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "ballshape/errors.hpp"
#include "ballshape/parallel.hpp"

namespace ballshape {

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  const std::uint64_t lo = static_cast<std::uint32_t>(std::min(a, b));
  const std::uint64_t hi = static_cast<std::uint32_t>(std::max(a, b));
  return (hi << 32) | lo;
}

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices,
                           std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  validate_and_repair();
}

void TriangleMesh::validate_and_repair() {
  const int nv = vertex_count();
  const int nt = triangle_count();
  if (nv < 4 || nt < 4)
    throw TopologyError("a closed surface needs at least 4 vertices/faces");

  for (const Vec3& p : vertices_)
    if (!p.allFinite()) throw ParseError("non-finite vertex coordinate");

  for (const Triangle& t : triangles_)
    for (int k = 0; k < 3; ++k)
      if (t[k] < 0 || t[k] >= nv)
        throw ParseError("face references vertex index out of range");

  for (const Triangle& t : triangles_)
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw DegenerateFaceError("face with repeated vertex");

  // Edge incidence: every undirected edge must bound exactly two faces.
  std::unordered_map<std::uint64_t, std::array<int, 2>> edge_faces;
  edge_faces.reserve(static_cast<std::size_t>(nt) * 3 / 2);
  for (int f = 0; f < nt; ++f) {
    for (int k = 0; k < 3; ++k) {
      const VertexId a = triangles_[f][k];
      const VertexId b = triangles_[f][(k + 1) % 3];
      auto [it, inserted] = edge_faces.try_emplace(edge_key(a, b),
                                                   std::array<int, 2>{-1, -1});
      auto& faces = it->second;
      if (faces[0] < 0)
        faces[0] = f;
      else if (faces[1] < 0)
        faces[1] = f;
      else
        throw TopologyError("non-manifold edge (more than two faces)");
    }
  }
  for (const auto& [key, faces] : edge_faces) {
    (void)key;
    if (faces[1] < 0)
      throw TopologyError("open surface (edge with a single face)");
  }
  edge_count_ = static_cast<int>(edge_faces.size());

  // Orientation repair: BFS over face adjacency, flipping faces so each
  // undirected edge is traversed once in each direction.
  std::vector<char> visited(nt, 0);
  std::vector<std::vector<int>> components;
  auto shares_consistently = [&](const Triangle& s, const Triangle& t) {
    // Returns +1 if some shared edge appears in opposite directions,
    // -1 if in the same direction, 0 if no shared edge.
    for (int i = 0; i < 3; ++i) {
      const VertexId a = s[i], b = s[(i + 1) % 3];
      for (int j = 0; j < 3; ++j) {
        const VertexId c = t[j], d = t[(j + 1) % 3];
        if (a == d && b == c) return +1;
        if (a == c && b == d) return -1;
      }
    }
    return 0;
  };
  std::unordered_map<std::uint64_t, std::array<int, 2>>& ef = edge_faces;
  for (int seed = 0; seed < nt; ++seed) {
    if (visited[seed]) continue;
    components.emplace_back();
    std::queue<int> frontier;
    frontier.push(seed);
    visited[seed] = 1;
    while (!frontier.empty()) {
      const int f = frontier.front();
      frontier.pop();
      components.back().push_back(f);
      for (int k = 0; k < 3; ++k) {
        const VertexId a = triangles_[f][k];
        const VertexId b = triangles_[f][(k + 1) % 3];
        const auto& faces = ef.at(edge_key(a, b));
        const int g = faces[0] == f ? faces[1] : faces[0];
        const int rel = shares_consistently(triangles_[f], triangles_[g]);
        if (!visited[g]) {
          if (rel < 0) std::swap(triangles_[g][1], triangles_[g][2]);
          visited[g] = 1;
          frontier.push(g);
        } else if (rel < 0) {
          throw TopologyError("unorientable surface");
        }
      }
    }
  }

  // Outward orientation per connected component: a closed oriented surface
  // has positive enclosed volume iff normals point outward.
  for (const auto& comp : components) {
    double vol6 = 0.0;
    for (int f : comp) {
      const Vec3& p0 = vertices_[triangles_[f][0]];
      const Vec3& p1 = vertices_[triangles_[f][1]];
      const Vec3& p2 = vertices_[triangles_[f][2]];
      vol6 += p0.dot(p1.cross(p2));
    }
    if (vol6 < 0.0)
      for (int f : comp) std::swap(triangles_[f][1], triangles_[f][2]);
  }

  // Degeneracy floor relative to the mean triangle area.
  double total_area = 0.0;
  for (int f = 0; f < nt; ++f) total_area += triangle_area(f);
  const double floor = 1e-12 * (total_area / nt);
  for (int f = 0; f < nt; ++f)
    if (triangle_area(f) < floor)
      throw DegenerateFaceError("face " + std::to_string(f) +
                                " below area floor");

  // Adjacency.
  vertex_neighbors_.assign(nv, {});
  vertex_triangles_.assign(nv, {});
  for (int f = 0; f < nt; ++f)
    for (int k = 0; k < 3; ++k) vertex_triangles_[triangles_[f][k]].push_back(f);
  for (const auto& [key, faces] : edge_faces) {
    (void)faces;
    const VertexId a = static_cast<VertexId>(key & 0xffffffffu);
    const VertexId b = static_cast<VertexId>(key >> 32);
    vertex_neighbors_[a].push_back(b);
    vertex_neighbors_[b].push_back(a);
  }
  for (auto& nbrs : vertex_neighbors_) std::sort(nbrs.begin(), nbrs.end());

  double edge_sum = 0.0;
  min_edge_length_ = std::numeric_limits<double>::infinity();
  max_edge_length_ = 0.0;
  for (const auto& [key, faces] : edge_faces) {
    (void)faces;
    const VertexId a = static_cast<VertexId>(key & 0xffffffffu);
    const VertexId b = static_cast<VertexId>(key >> 32);
    const double len = (vertices_[a] - vertices_[b]).norm();
    edge_sum += len;
    min_edge_length_ = std::min(min_edge_length_, len);
    max_edge_length_ = std::max(max_edge_length_, len);
  }
  mean_edge_length_ = edge_sum / edge_count_;
}

double TriangleMesh::triangle_area(int t) const {
  const Vec3& a = vertices_[triangles_[t][0]];
  const Vec3& b = vertices_[triangles_[t][1]];
  const Vec3& c = vertices_[triangles_[t][2]];
  return 0.5 * (b - a).cross(c - a).norm();
}

Vec3 TriangleMesh::triangle_normal(int t) const {
  const Vec3& a = vertices_[triangles_[t][0]];
  const Vec3& b = vertices_[triangles_[t][1]];
  const Vec3& c = vertices_[triangles_[t][2]];
  return (b - a).cross(c - a).normalized();
}

Vec3 TriangleMesh::triangle_centroid(int t) const {
  return (vertices_[triangles_[t][0]] + vertices_[triangles_[t][1]] +
          vertices_[triangles_[t][2]]) /
         3.0;
}

void TriangleMesh::bounding_box(Vec3& lo, Vec3& hi) const {
  lo = vertices_[0];
  hi = vertices_[0];
  for (const Vec3& p : vertices_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
}

double TriangleMesh::bounding_box_diagonal() const {
  Vec3 lo, hi;
  bounding_box(lo, hi);
  return (hi - lo).norm();
}

double TriangleMesh::diameter() const {
  const int nv = vertex_count();
  std::vector<double> per_vertex(nv, 0.0);
  parallel_for(0, static_cast<std::size_t>(nv), [&](std::size_t i) {
    double best = 0.0;
    for (int j = static_cast<int>(i) + 1; j < nv; ++j)
      best = std::max(best, (vertices_[i] - vertices_[j]).squaredNorm());
    per_vertex[i] = best;
  });
  double best = 0.0;
  for (double d : per_vertex) best = std::max(best, d);
  return std::sqrt(best);
}

TriangleMesh TriangleMesh::with_vertices(std::vector<Vec3> new_vertices) const {
  if (static_cast<int>(new_vertices.size()) != vertex_count())
    throw DomainError("vertex count mismatch in with_vertices");
  return TriangleMesh(std::move(new_vertices), triangles_);
}

MeshMeasures measures(const TriangleMesh& mesh) {
  MeshMeasures m;
  const int nt = mesh.triangle_count();
  std::vector<double> areas(nt), volumes(nt);
  for (int f = 0; f < nt; ++f) {
    const double area = mesh.triangle_area(f);
    areas[f] = area;
    // Divergence theorem with j[x,n] = <x|n>/3: each face contributes
    // <centroid|n> * area / 3.
    volumes[f] = mesh.triangle_centroid(f).dot(mesh.triangle_normal(f)) *
                 area / 3.0;
  }
  m.area = pairwise_sum(areas);
  m.volume = pairwise_sum(volumes);
  m.euler_characteristic =
      mesh.vertex_count() - mesh.edge_count() + mesh.triangle_count();
  m.genus = (2 - m.euler_characteristic) / 2;
  return m;
}

double tetrahedron_fan_volume(const TriangleMesh& mesh) {
  const int nt = mesh.triangle_count();
  std::vector<double> terms(nt);
  for (int f = 0; f < nt; ++f) {
    const Vec3& p0 = mesh.vertex(mesh.triangle(f)[0]);
    const Vec3& p1 = mesh.vertex(mesh.triangle(f)[1]);
    const Vec3& p2 = mesh.vertex(mesh.triangle(f)[2]);
    terms[f] = p0.dot(p1.cross(p2)) / 6.0;
  }
  return pairwise_sum(terms);
}

// ---------------------------------------------------------------------------
// I/O
// ---------------------------------------------------------------------------

namespace {

MeshFormat format_from_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(c));
  if (ext == "off") return MeshFormat::Off;
  if (ext == "obj") return MeshFormat::Obj;
  throw IoError("cannot infer mesh format from path: " + path);
}

// Next non-empty line with comments stripped ('#' both formats).
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    if (!blank) return true;
  }
  return false;
}

TriangleMesh parse_off(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("empty OFF file");
  {
    std::istringstream ls(line);
    std::string magic;
    ls >> magic;
    if (magic != "OFF") throw ParseError("missing OFF header");
    // Counts may share the header line.
    long nv = -1, nf = -1, ne = -1;
    if (ls >> nv >> nf >> ne) {
      line.clear();
    } else {
      if (!next_content_line(in, line)) throw ParseError("missing OFF counts");
      std::istringstream cs(line);
      if (!(cs >> nv >> nf >> ne)) throw ParseError("bad OFF counts line");
    }
    if (nv <= 0 || nf <= 0) throw ParseError("bad OFF counts");
    std::vector<Vec3> vertices;
    vertices.reserve(nv);
    for (long i = 0; i < nv; ++i) {
      if (!next_content_line(in, line))
        throw ParseError("truncated OFF vertex list");
      std::istringstream vs(line);
      double x, y, z;
      if (!(vs >> x >> y >> z))
        throw ParseError("bad OFF vertex line: " + line);
      vertices.emplace_back(x, y, z);
    }
    std::vector<Triangle> triangles;
    triangles.reserve(nf);
    for (long i = 0; i < nf; ++i) {
      if (!next_content_line(in, line))
        throw ParseError("truncated OFF face list");
      std::istringstream fs(line);
      long count, a, b, c;
      if (!(fs >> count >> a >> b >> c))
        throw ParseError("bad OFF face line: " + line);
      if (count != 3) throw ParseError("only triangular faces are supported");
      triangles.push_back(Triangle{{static_cast<VertexId>(a),
                                    static_cast<VertexId>(b),
                                    static_cast<VertexId>(c)}});
    }
    return TriangleMesh(std::move(vertices), std::move(triangles));
  }
}

TriangleMesh parse_obj(std::istream& in) {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::string line;
  while (next_content_line(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) throw ParseError("bad OBJ vertex: " + line);
      vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<long> ids;
      std::string tok;
      while (ls >> tok) {
        // "i", "i/t", "i/t/n", "i//n": the vertex index precedes any '/'.
        const auto slash = tok.find('/');
        ids.push_back(std::stol(tok.substr(0, slash)));
      }
      if (ids.size() != 3)
        throw ParseError("only triangular faces are supported");
      Triangle t;
      for (int k = 0; k < 3; ++k) {
        long id = ids[k];
        if (id < 0) id = static_cast<long>(vertices.size()) + 1 + id;
        if (id < 1) throw ParseError("bad OBJ face index");
        t[k] = static_cast<VertexId>(id - 1);
      }
      triangles.push_back(t);
    }
    // vn/vt/usemtl/o/g/s lines carry no geometry we keep.
  }
  if (vertices.empty() || triangles.empty())
    throw ParseError("OBJ file has no triangles");
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

}  // namespace

TriangleMesh load_mesh(const std::string& path) {
  return load_mesh(path, format_from_path(path));
}

TriangleMesh load_mesh(const std::string& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return format == MeshFormat::Off ? parse_off(in) : parse_obj(in);
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  char buf[128];
  if (format_from_path(path) == MeshFormat::Off) {
    out << "OFF\n"
        << mesh.vertex_count() << ' ' << mesh.triangle_count() << ' '
        << mesh.edge_count() << '\n';
    for (const Vec3& p : mesh.vertices()) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x(), p.y(),
                    p.z());
      out << buf;
    }
    for (const Triangle& t : mesh.triangles())
      out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  } else {
    for (const Vec3& p : mesh.vertices()) {
      std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", p.x(), p.y(),
                    p.z());
      out << buf;
    }
    for (const Triangle& t : mesh.triangles())
      out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace ballshape
