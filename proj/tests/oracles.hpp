#pragma once

// Test-only oracles that deliberately avoid the production code paths they
// check: a dense pair-by-pair assembly (no local-matrix scatter, separate
// quadrature construction) and a trivial all-zero problem.

#include <Eigen/Dense>

#include "lsfem/assembly.hpp"
#include "lsfem/estimate.hpp"
#include "test_support.hpp"

namespace test_oracles {

inline lsfem::BenchmarkProblem zero_problem() {
    lsfem::BenchmarkProblem p = lsfem::benchmark("sanity-poisson");
    p.name = "zero";
    p.exact.u = [](double, double) { return 0.0; };
    p.exact.grad_u = [](double, double) { return Eigen::Vector2d::Zero().eval(); };
    p.exact.hess_u = [](double, double) { return Eigen::Matrix2d::Zero().eval(); };
    p.exact.f = [](double, double) { return 0.0; };
    p.exact.g = p.exact.u;
    return p;
}

struct DenseOracle {
    Eigen::MatrixXd matrix;  // over free dofs
    Eigen::VectorXd rhs;
};

/// Entry (i,j) is integrated directly for the pair of global shape functions,
/// with Golub-Welsch quadrature.  Exact for polynomial integrands, hence used
/// with constant coefficient matrices.
inline DenseOracle dense_oracle(const lsfem::Mesh& mesh, const lsfem::BenchmarkProblem& problem,
                                lsfem::Formulation formulation, int degree) {
    using namespace lsfem;
    const int s_deg = sigma_degree(formulation, degree);
    const DofMap u_map = build_dofmap(mesh, degree);
    const DofMap s_map = build_dofmap(mesh, s_deg);
    const BlockLayout layout = build_block_layout(u_map, s_map);
    const test_support::OracleRule rule(2 * degree + 6);

    std::vector<double> bval(u_map.total_dofs, 0.0);
    for (int i = 0; i < u_map.total_dofs; ++i)
        if (u_map.on_boundary[i])
            bval[i] = problem.exact.g(u_map.dof_coords[i].x(), u_map.dof_coords[i].y());

    const int total = layout.total;
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(total, total);
    Eigen::VectorXd full_rhs = Eigen::VectorXd::Zero(total);

    // "tau - grad v" vector and "A : grad tau" scalar of one system dof on
    // one element at one reference point; false when the dof has no support.
    auto dof_parts = [&](int gdof, int element, const ElementMap& map,
                         const Eigen::Vector2d& ref, const Eigen::Matrix2d& a,
                         Eigen::Vector2d& p_vec, double& d_val) -> bool {
        p_vec.setZero();
        d_val = 0.0;
        if (gdof < layout.n_u) {
            const auto& dofs = u_map.cell_dofs[element];
            for (std::size_t i = 0; i < dofs.size(); ++i) {
                if (dofs[i] != gdof) continue;
                p_vec = -push_gradient(map, basis_eval(degree, ref)[i].grad);
                return true;
            }
            return false;
        }
        const int comp = (gdof - layout.n_u) / layout.n_sigma;
        const int sdof = (gdof - layout.n_u) % layout.n_sigma;
        const auto& dofs = s_map.cell_dofs[element];
        for (std::size_t i = 0; i < dofs.size(); ++i) {
            if (dofs[i] != sdof) continue;
            const BasisEval b = basis_eval(s_deg, ref)[i];
            const Eigen::Vector2d g = push_gradient(map, b.grad);
            p_vec = comp == 0 ? Eigen::Vector2d(b.value, 0.0) : Eigen::Vector2d(0.0, b.value);
            d_val = a(comp, 0) * g.x() + a(comp, 1) * g.y();
            return true;
        }
        return false;
    };

    for (int gi = 0; gi < total; ++gi) {
        for (int gj = 0; gj < total; ++gj) {
            double entry = 0.0;
            for (int k = 0; k < mesh.triangle_count(); ++k) {
                const ElementMap map = ElementMap::from_triangle(mesh, k);
                const double h = mesh.element_diameter(k);
                const double w_k = formulation == Formulation::Weighted ? h * h : 1.0;
                for (std::size_t q = 0; q < rule.points.size(); ++q) {
                    const Eigen::Vector2d x = map.to_physical(rule.points[q]);
                    const Eigen::Matrix2d a = problem.coefficient.evaluate(x.x(), x.y());
                    Eigen::Vector2d pi, pj;
                    double di, dj;
                    if (!dof_parts(gi, k, map, rule.points[q], a, pi, di)) continue;
                    if (!dof_parts(gj, k, map, rule.points[q], a, pj, dj)) continue;
                    entry += rule.weights[q] * map.det * (pi.dot(pj) + w_k * di * dj);
                }
            }
            full(gi, gj) = entry;
        }
        double rhs_entry = 0.0;
        for (int k = 0; k < mesh.triangle_count(); ++k) {
            const ElementMap map = ElementMap::from_triangle(mesh, k);
            const double h = mesh.element_diameter(k);
            const double w_k = formulation == Formulation::Weighted ? h * h : 1.0;
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const Eigen::Vector2d x = map.to_physical(rule.points[q]);
                const Eigen::Matrix2d a = problem.coefficient.evaluate(x.x(), x.y());
                Eigen::Vector2d pi;
                double di;
                if (!dof_parts(gi, k, map, rule.points[q], a, pi, di)) continue;
                rhs_entry -=
                    rule.weights[q] * map.det * w_k * problem.exact.f(x.x(), x.y()) * di;
            }
        }
        full_rhs(gi) = rhs_entry;
    }

    DenseOracle out;
    const int n_free = layout.free_count;
    out.matrix.resize(n_free, n_free);
    out.rhs.resize(n_free);
    for (int gi = 0; gi < total; ++gi) {
        const int r = layout.free_of_global[gi];
        if (r < 0) continue;
        double lift = 0.0;
        for (int gj = 0; gj < total; ++gj) {
            const int c = layout.free_of_global[gj];
            if (c >= 0)
                out.matrix(r, c) = full(gi, gj);
            else
                lift += full(gi, gj) * bval[gj];
        }
        out.rhs(r) = full_rhs(gi) - lift;
    }
    return out;
}

}  // namespace test_oracles
