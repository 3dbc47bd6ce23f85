#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "lsfem/mesh.hpp"

namespace lsfem {

/// Global Lagrange numbering of degree k over a mesh: vertex dofs first,
/// then (k-1) dofs per edge (ordered from the lower-indexed endpoint), then
/// one interior dof per triangle for k = 3.
struct DofMap {
    int degree = 1;
    int total_dofs = 0;
    int edge_count = 0;
    std::vector<std::vector<int>> cell_dofs;   // local -> global, per triangle
    std::vector<Eigen::Vector2d> dof_coords;
    std::vector<char> on_boundary;             // Lagrange node lies on the domain boundary

    std::vector<int> boundary_dofs() const;
};

DofMap build_dofmap(const Mesh& mesh, int degree);

/// Nodal interpolation: field values at the Lagrange nodes.
std::vector<double> interpolate(const DofMap& dofmap,
                                const std::function<double(double, double)>& field);

/// Point evaluation of an FE coefficient vector; walks the triangles to find
/// a containing element.  Intended for tests and diagnostics, not inner loops.
double evaluate_fe(const Mesh& mesh, const DofMap& dofmap, const std::vector<double>& coeffs,
                   double x, double y);

/// Offsets of the (u, sigma1, sigma2) solution blocks plus the free /
/// constrained split (Dirichlet u-dofs are constrained, sigma is not).
struct BlockLayout {
    int n_u = 0;
    int n_sigma = 0;                 // per component
    int total = 0;                   // n_u + 2 n_sigma
    std::vector<int> free_of_global; // -1 when constrained
    std::vector<int> global_of_free;
    int free_count = 0;

    int sigma_offset(int component) const { return n_u + component * n_sigma; }
};

BlockLayout build_block_layout(const DofMap& u_map, const DofMap& sigma_map);

}  // namespace lsfem
