#pragma once

// Internal helpers shared by the assembler, the functional evaluation, and
// the estimator: reference-basis tables at quadrature points and pointwise
// evaluation of a discrete (u_h, sigma_h) pair on one element.

#include <Eigen/Dense>
#include <vector>

#include "lsfem/assembly.hpp"
#include "lsfem/dofmap.hpp"
#include "lsfem/elements.hpp"
#include "lsfem/quadrature.hpp"

namespace lsfem::detail {

struct BasisTable {
    std::vector<std::vector<BasisEval>> at;  // [quad point][local basis]

    static BasisTable make(int degree, const QuadRule& rule) {
        BasisTable table;
        table.at.reserve(rule.points.size());
        for (const auto& p : rule.points) table.at.push_back(basis_eval(degree, p));
        return table;
    }
};

struct SolutionSample {
    Eigen::Vector2d grad_u = Eigen::Vector2d::Zero();
    Eigen::Matrix2d hess_u = Eigen::Matrix2d::Zero();
    Eigen::Vector2d sigma = Eigen::Vector2d::Zero();
    Eigen::Matrix2d grad_sigma = Eigen::Matrix2d::Zero();  // row c = grad sigma_c
};

inline SolutionSample sample_solution(const ElementMap& map, const BasisTable& u_table,
                                      const BasisTable& s_table, const DofMap& u_map,
                                      const DofMap& s_map, int element, int qp,
                                      const SolutionPair& sol, bool with_hessian) {
    SolutionSample out;
    const auto& u_dofs = u_map.cell_dofs[element];
    const auto& s_dofs = s_map.cell_dofs[element];
    for (std::size_t i = 0; i < u_dofs.size(); ++i) {
        const BasisEval& b = u_table.at[qp][i];
        const double c = sol.u[u_dofs[i]];
        out.grad_u += c * (map.inverse_transpose * b.grad);
        if (with_hessian) out.hess_u += c * push_hessian(map, b.hess);
    }
    for (std::size_t i = 0; i < s_dofs.size(); ++i) {
        const BasisEval& b = s_table.at[qp][i];
        const Eigen::Vector2d g = map.inverse_transpose * b.grad;
        for (int c = 0; c < 2; ++c) {
            const double coeff = sol.sigma[c][s_dofs[i]];
            out.sigma[c] += coeff * b.value;
            out.grad_sigma.row(c) += coeff * g.transpose();
        }
    }
    return out;
}

/// A : grad(sigma) where grad_sigma row c holds the gradient of component c.
inline double contract_grad_sigma(const Eigen::Matrix2d& a, const Eigen::Matrix2d& grad_sigma) {
    return a(0, 0) * grad_sigma(0, 0) + a(0, 1) * grad_sigma(0, 1) +
           a(1, 0) * grad_sigma(1, 0) + a(1, 1) * grad_sigma(1, 1);
}

}  // namespace lsfem::detail
