#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lsfem {

struct Vertex {
    double x = 0.0;
    double y = 0.0;
};

/// A counterclockwise triangle.  Local edge j is the edge opposite local
/// vertex j, i.e. it connects vertices (j+1)%3 and (j+2)%3.  The refinement
/// edge is the one split by newest-vertex bisection; the newest vertex sits
/// opposite it.  boundary_flags[j] != 0 marks edge j as lying on the domain
/// boundary.
struct Triangle {
    std::array<int, 3> v{};
    int refinement_edge = 0;
    std::array<int, 3> boundary_flags{};
};

struct Mesh {
    std::vector<Vertex> vertices;
    std::vector<Triangle> triangles;
    int generation = 0;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    double signed_area(int k) const;
    double total_area() const;
    /// Longest edge of triangle k.
    double element_diameter(int k) const;
    double max_diameter() const;
};

enum class DomainId {
    UnitSquareCentered,  // (-1/2,1/2)^2, four triangles through the diagonals
    UnitSquare,          // (0,1)^2, same four-triangle fan
    HalfSquare,          // (0,1/2)^2
    LShape,              // (-1,1)^2 minus [0,1)x(-1,0], six-triangle fan
    TwoTriangle,         // (0,1)^2 split along one diagonal
    BigSquareCentered,   // (-1,1)^2
};

DomainId domain_from_string(const std::string& name);
std::string to_string(DomainId id);

Mesh make_initial_mesh(DomainId id);

/// Red refinement: every triangle is split into four congruent children.
Mesh uniform_refine(const Mesh& mesh);

/// Newest-vertex bisection of the marked triangles plus conformity closure.
/// Throws std::runtime_error if the closure fails to stabilize, which signals
/// an inconsistent refinement-edge labeling.
Mesh bisect(const Mesh& mesh, const std::vector<int>& marked);

/// Every interior edge incident to exactly two triangles, every boundary-
/// flagged edge to exactly one, all triangles positively oriented.
bool is_conforming(const Mesh& mesh);

/// Sorted list of (a,b) vertex pairs with a<b over all triangle edges.
std::vector<std::array<int, 2>> enumerate_edges(const Mesh& mesh);

/// Plain-text dump: one "x y" line per vertex, then one "i j k b0 b1 b2"
/// line per triangle.
void write_mesh(const Mesh& mesh, std::ostream& out);
Mesh read_mesh(std::istream& in);

}  // namespace lsfem
