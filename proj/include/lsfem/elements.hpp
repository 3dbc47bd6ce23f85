#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lsfem/mesh.hpp"

namespace lsfem {

/// Value, gradient, and Hessian of one shape function at one point, all in
/// reference coordinates.
struct BasisEval {
    double value = 0.0;
    Eigen::Vector2d grad = Eigen::Vector2d::Zero();
    Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
};

int basis_node_count(int degree);

/// Lagrange lattice nodes on the reference triangle {xi>=0, eta>=0,
/// xi+eta<=1}.  Ordering: vertices (0,0),(1,0),(0,1); then edge nodes per
/// local edge j (opposite vertex j), walking from vertex (j+1)%3 toward
/// (j+2)%3; degree 3 appends the barycenter.
std::vector<Eigen::Vector2d> reference_nodes(int degree);

/// Shape functions of the given degree at a reference point.  Throws
/// std::invalid_argument for degrees outside {1,2,3}.
std::vector<BasisEval> basis_eval(int degree, const Eigen::Vector2d& point);

/// Affine map from the reference triangle onto a physical triangle.
struct ElementMap {
    Eigen::Vector2d origin = Eigen::Vector2d::Zero();
    Eigen::Matrix2d jacobian = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d inverse_transpose = Eigen::Matrix2d::Identity();
    double det = 1.0;

    static ElementMap from_triangle(const Mesh& mesh, int k);
    static ElementMap from_points(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                  const Eigen::Vector2d& c);

    Eigen::Vector2d to_physical(const Eigen::Vector2d& ref) const {
        return origin + jacobian * ref;
    }
};

Eigen::Vector2d push_gradient(const ElementMap& map, const Eigen::Vector2d& reference_gradient);
Eigen::Matrix2d push_hessian(const ElementMap& map, const Eigen::Matrix2d& reference_hessian);

}  // namespace lsfem
