#include "lsfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lsfem {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

EdgeKey triangle_edge_key(const Triangle& t, int j) {
    return edge_key(t.v[(j + 1) % 3], t.v[(j + 2) % 3]);
}

double edge_length(const Mesh& m, int a, int b) {
    const double dx = m.vertices[a].x - m.vertices[b].x;
    const double dy = m.vertices[a].y - m.vertices[b].y;
    return std::hypot(dx, dy);
}

int longest_edge_index(const Mesh& m, const Triangle& t) {
    int best = 0;
    double best_len = -1.0;
    for (int j = 0; j < 3; ++j) {
        const double len = edge_length(m, t.v[(j + 1) % 3], t.v[(j + 2) % 3]);
        if (len > best_len + 1e-14 * (1.0 + best_len)) {
            best_len = len;
            best = j;
        }
    }
    return best;
}

void assign_initial_labels(Mesh& m) {
    // Refinement edge = longest edge, ties resolved toward the lowest index
    // by the strict comparison above.
    for (auto& t : m.triangles) t.refinement_edge = longest_edge_index(m, t);
}

void detect_boundary(Mesh& m) {
    std::map<EdgeKey, int> incidence;
    for (const auto& t : m.triangles)
        for (int j = 0; j < 3; ++j) incidence[triangle_edge_key(t, j)]++;
    for (auto& t : m.triangles)
        for (int j = 0; j < 3; ++j)
            t.boundary_flags[j] = incidence[triangle_edge_key(t, j)] == 1 ? 1 : 0;
}

Mesh fan_square(double x0, double y0, double side) {
    Mesh m;
    m.vertices = {{x0, y0},
                  {x0 + side, y0},
                  {x0 + side, y0 + side},
                  {x0, y0 + side},
                  {x0 + side / 2, y0 + side / 2}};
    m.triangles.resize(4);
    for (int j = 0; j < 4; ++j) m.triangles[j].v = {4, j, (j + 1) % 4};
    detect_boundary(m);
    assign_initial_labels(m);
    return m;
}

}  // namespace

double Mesh::signed_area(int k) const {
    const Triangle& t = triangles[k];
    const Vertex& a = vertices[t.v[0]];
    const Vertex& b = vertices[t.v[1]];
    const Vertex& c = vertices[t.v[2]];
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double Mesh::total_area() const {
    double area = 0.0;
    for (int k = 0; k < triangle_count(); ++k) area += signed_area(k);
    return area;
}

double Mesh::element_diameter(int k) const {
    const Triangle& t = triangles[k];
    double d = 0.0;
    for (int j = 0; j < 3; ++j)
        d = std::max(d, edge_length(*this, t.v[(j + 1) % 3], t.v[(j + 2) % 3]));
    return d;
}

double Mesh::max_diameter() const {
    double d = 0.0;
    for (int k = 0; k < triangle_count(); ++k) d = std::max(d, element_diameter(k));
    return d;
}

DomainId domain_from_string(const std::string& name) {
    if (name == "unit-square-centered") return DomainId::UnitSquareCentered;
    if (name == "unit-square") return DomainId::UnitSquare;
    if (name == "half-square") return DomainId::HalfSquare;
    if (name == "L-shape") return DomainId::LShape;
    if (name == "two-triangle") return DomainId::TwoTriangle;
    if (name == "big-square-centered") return DomainId::BigSquareCentered;
    throw std::invalid_argument("unknown domain id: " + name);
}

std::string to_string(DomainId id) {
    switch (id) {
        case DomainId::UnitSquareCentered: return "unit-square-centered";
        case DomainId::UnitSquare: return "unit-square";
        case DomainId::HalfSquare: return "half-square";
        case DomainId::LShape: return "L-shape";
        case DomainId::TwoTriangle: return "two-triangle";
        case DomainId::BigSquareCentered: return "big-square-centered";
    }
    throw std::invalid_argument("unknown domain id");
}

Mesh make_initial_mesh(DomainId id) {
    switch (id) {
        case DomainId::UnitSquareCentered: return fan_square(-0.5, -0.5, 1.0);
        case DomainId::UnitSquare: return fan_square(0.0, 0.0, 1.0);
        case DomainId::HalfSquare: return fan_square(0.0, 0.0, 0.5);
        case DomainId::BigSquareCentered: return fan_square(-1.0, -1.0, 2.0);
        case DomainId::TwoTriangle: {
            Mesh m;
            m.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
            m.triangles.resize(2);
            m.triangles[0].v = {0, 1, 2};
            m.triangles[1].v = {0, 2, 3};
            detect_boundary(m);
            assign_initial_labels(m);
            return m;
        }
        case DomainId::LShape: {
            Mesh m;
            m.vertices = {{0, 0},  {1, 0},   {1, 1},   {0, 1},
                          {-1, 1}, {-1, 0},  {-1, -1}, {0, -1}};
            m.triangles.resize(6);
            for (int j = 0; j < 6; ++j) m.triangles[j].v = {0, j + 1, j + 2};
            detect_boundary(m);
            assign_initial_labels(m);
            return m;
        }
    }
    throw std::invalid_argument("unknown domain id");
}

Mesh uniform_refine(const Mesh& mesh) {
    Mesh out;
    out.generation = mesh.generation + 1;
    out.vertices = mesh.vertices;
    std::map<EdgeKey, int> midpoint;
    auto midpoint_of = [&](int a, int b) {
        const EdgeKey key = edge_key(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int idx = out.vertex_count();
        out.vertices.push_back({0.5 * (mesh.vertices[a].x + mesh.vertices[b].x),
                                0.5 * (mesh.vertices[a].y + mesh.vertices[b].y)});
        midpoint.emplace(key, idx);
        return idx;
    };

    out.triangles.reserve(4 * mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        const int m0 = midpoint_of(t.v[1], t.v[2]);
        const int m1 = midpoint_of(t.v[2], t.v[0]);
        const int m2 = midpoint_of(t.v[0], t.v[1]);
        Triangle c0, c1, c2, cc;
        c0.v = {t.v[0], m2, m1};
        c0.boundary_flags = {0, t.boundary_flags[1], t.boundary_flags[2]};
        c1.v = {t.v[1], m0, m2};
        c1.boundary_flags = {0, t.boundary_flags[2], t.boundary_flags[0]};
        c2.v = {t.v[2], m1, m0};
        c2.boundary_flags = {0, t.boundary_flags[0], t.boundary_flags[1]};
        cc.v = {m0, m1, m2};
        cc.boundary_flags = {0, 0, 0};
        out.triangles.push_back(c0);
        out.triangles.push_back(c1);
        out.triangles.push_back(c2);
        out.triangles.push_back(cc);
    }
    for (auto& t : out.triangles) t.refinement_edge = longest_edge_index(out, t);
    return out;
}

namespace {

// Recursive bisection of one triangle against the global set of split edges.
// Closure guarantees that any triangle with a split edge has its refinement
// edge split as well, so recursion terminates after at most two levels.
void subdivide(const Triangle& t, const std::set<EdgeKey>& split,
               const std::map<EdgeKey, int>& midpoint, std::vector<Triangle>& out,
               int depth) {
    const int j = t.refinement_edge;
    const EdgeKey key = triangle_edge_key(t, j);
    if (split.find(key) == split.end()) {
        out.push_back(t);
        return;
    }
    if (depth > 3) throw std::runtime_error("bisection recursion exceeded bound");
    const int p = t.v[j];
    const int a = t.v[(j + 1) % 3];
    const int b = t.v[(j + 2) % 3];
    const int m = midpoint.at(key);
    Triangle c1, c2;
    c1.v = {p, a, m};
    c1.refinement_edge = 2;
    c1.boundary_flags = {t.boundary_flags[j], 0, t.boundary_flags[(j + 2) % 3]};
    c2.v = {p, m, b};
    c2.refinement_edge = 1;
    c2.boundary_flags = {t.boundary_flags[j], t.boundary_flags[(j + 1) % 3], 0};
    subdivide(c1, split, midpoint, out, depth + 1);
    subdivide(c2, split, midpoint, out, depth + 1);
}

}  // namespace

Mesh bisect(const Mesh& mesh, const std::vector<int>& marked) {
    std::set<EdgeKey> split;
    for (const int k : marked) {
        if (k < 0 || k >= mesh.triangle_count())
            throw std::out_of_range("marked triangle index out of range");
        split.insert(triangle_edge_key(mesh.triangles[k], mesh.triangles[k].refinement_edge));
    }

    // Closure: a triangle with any split edge must have its refinement edge
    // split.  Fixed point over a finite edge set; the iteration guard trips
    // on inconsistent labels.
    const std::size_t max_rounds = enumerate_edges(mesh).size() + 2;
    std::size_t rounds = 0;
    bool changed = !split.empty();
    while (changed) {
        if (++rounds > max_rounds)
            throw std::runtime_error("refinement closure failed to stabilize: inconsistent refinement-edge labeling");
        changed = false;
        for (const auto& t : mesh.triangles) {
            const EdgeKey ref = triangle_edge_key(t, t.refinement_edge);
            if (split.count(ref)) continue;
            for (int j = 0; j < 3; ++j) {
                if (split.count(triangle_edge_key(t, j))) {
                    split.insert(ref);
                    changed = true;
                    break;
                }
            }
        }
    }

    Mesh out;
    out.generation = mesh.generation + 1;
    out.vertices = mesh.vertices;
    std::map<EdgeKey, int> midpoint;
    for (const auto& t : mesh.triangles) {
        for (int j = 0; j < 3; ++j) {
            const EdgeKey key = triangle_edge_key(t, j);
            if (split.count(key) && !midpoint.count(key)) {
                const int a = key.first, b = key.second;
                out.vertices.push_back({0.5 * (mesh.vertices[a].x + mesh.vertices[b].x),
                                        0.5 * (mesh.vertices[a].y + mesh.vertices[b].y)});
                midpoint.emplace(key, out.vertex_count() - 1);
            }
        }
    }
    for (const auto& t : mesh.triangles) subdivide(t, split, midpoint, out.triangles, 0);
    return out;
}

bool is_conforming(const Mesh& mesh) {
    std::map<EdgeKey, int> incidence;
    std::map<EdgeKey, int> flagged;
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        if (mesh.signed_area(k) <= 0.0) return false;
        const Triangle& t = mesh.triangles[k];
        for (int j = 0; j < 3; ++j) {
            incidence[triangle_edge_key(t, j)]++;
            if (t.boundary_flags[j]) flagged[triangle_edge_key(t, j)]++;
        }
    }
    for (const auto& [key, count] : incidence) {
        if (count != 1 && count != 2) return false;
        const auto it = flagged.find(key);
        const bool is_flagged = it != flagged.end() && it->second > 0;
        if (count == 1 && !is_flagged) return false;
        if (count == 2 && is_flagged) return false;
    }
    return true;
}

std::vector<std::array<int, 2>> enumerate_edges(const Mesh& mesh) {
    std::set<EdgeKey> keys;
    for (const auto& t : mesh.triangles)
        for (int j = 0; j < 3; ++j) keys.insert(triangle_edge_key(t, j));
    std::vector<std::array<int, 2>> out;
    out.reserve(keys.size());
    for (const auto& [a, b] : keys) out.push_back({a, b});
    return out;
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
    char buf[80];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        out << buf;
    }
    for (const auto& t : mesh.triangles)
        out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << ' ' << t.boundary_flags[0]
            << ' ' << t.boundary_flags[1] << ' ' << t.boundary_flags[2] << '\n';
}

Mesh read_mesh(std::istream& in) {
    // Vertex lines carry two fields, triangle lines six.
    Mesh m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> fields;
        double value = 0.0;
        while (ls >> value) fields.push_back(value);
        if (fields.size() == 2) {
            if (!m.triangles.empty()) throw std::runtime_error("vertex line after triangle lines");
            m.vertices.push_back({fields[0], fields[1]});
        } else if (fields.size() == 6) {
            Triangle t;
            for (int j = 0; j < 3; ++j) t.v[j] = static_cast<int>(fields[j]);
            for (int j = 0; j < 3; ++j) t.boundary_flags[j] = static_cast<int>(fields[3 + j]);
            m.triangles.push_back(t);
        } else {
            throw std::runtime_error("malformed mesh line: " + line);
        }
    }
    assign_initial_labels(m);
    return m;
}

}  // namespace lsfem
