#include "lsfem/assembly.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lsfem/quadrature.hpp"
#include "solution_eval.hpp"

namespace lsfem {

Formulation formulation_from_string(const std::string& name) {
    if (name == "weighted") return Formulation::Weighted;
    if (name == "l2") return Formulation::L2;
    throw std::invalid_argument("unknown formulation: " + name);
}

std::string to_string(Formulation f) {
    return f == Formulation::Weighted ? "weighted" : "l2";
}

int sigma_degree(Formulation formulation, int degree) {
    return formulation == Formulation::Weighted ? degree - 1 : 1;
}

void validate_formulation(Formulation formulation, int degree) {
    if (formulation == Formulation::L2 && degree != 1)
        throw std::invalid_argument("l2 formulation requires degree 1");
    if (formulation == Formulation::Weighted && (degree < 2 || degree > 3))
        throw std::invalid_argument("weighted formulation requires degree 2 or 3");
}

namespace {

// System dof ordering: u block, then sigma1, then sigma2.
struct LocalDofs {
    std::vector<int> global;  // system indices
    int n_u = 0;
    int n_s = 0;
};

LocalDofs local_system_dofs(const DofMap& u_map, const DofMap& s_map, const BlockLayout& layout,
                            int element) {
    LocalDofs out;
    const auto& ud = u_map.cell_dofs[element];
    const auto& sd = s_map.cell_dofs[element];
    out.n_u = static_cast<int>(ud.size());
    out.n_s = static_cast<int>(sd.size());
    out.global.reserve(out.n_u + 2 * out.n_s);
    for (const int g : ud) out.global.push_back(g);
    for (int c = 0; c < 2; ++c)
        for (const int g : sd) out.global.push_back(layout.sigma_offset(c) + g);
    return out;
}

}  // namespace

SparseSystem assemble(const Mesh& mesh, const BenchmarkProblem& problem,
                      Formulation formulation, int degree) {
    validate_formulation(formulation, degree);

    const int s_deg = sigma_degree(formulation, degree);
    const DofMap u_map = build_dofmap(mesh, degree);
    const DofMap s_map = build_dofmap(mesh, s_deg);

    SparseSystem system;
    system.formulation = formulation;
    system.degree = degree;
    system.layout = build_block_layout(u_map, s_map);

    // Dirichlet lift: g interpolated at the boundary Lagrange nodes.
    system.boundary_values.assign(u_map.total_dofs, 0.0);
    for (int i = 0; i < u_map.total_dofs; ++i)
        if (u_map.on_boundary[i])
            system.boundary_values[i] =
                problem.exact.g(u_map.dof_coords[i].x(), u_map.dof_coords[i].y());

    const BlockLayout& layout = system.layout;
    const int n_free = layout.free_count;
    const QuadRule& rule = rule_for_degree(assembly_quadrature_degree(degree));
    const detail::BasisTable u_table = detail::BasisTable::make(degree, rule);
    const detail::BasisTable s_table = detail::BasisTable::make(s_deg, rule);
    const int nq = static_cast<int>(rule.points.size());

    // Sparsity pattern over free dofs, duplicates compacted per row.
    std::vector<int> row_ptr(n_free + 1, 0);
    {
        std::vector<int> degree_bound(n_free, 0);
        for (int k = 0; k < mesh.triangle_count(); ++k) {
            const LocalDofs dofs = local_system_dofs(u_map, s_map, layout, k);
            int free_in_element = 0;
            for (const int g : dofs.global)
                if (layout.free_of_global[g] >= 0) ++free_in_element;
            for (const int g : dofs.global) {
                const int r = layout.free_of_global[g];
                if (r >= 0) degree_bound[r] += free_in_element;
            }
        }
        std::vector<int> bound_ptr(n_free + 1, 0);
        std::partial_sum(degree_bound.begin(), degree_bound.end(), bound_ptr.begin() + 1);
        std::vector<int> cols(bound_ptr.back());
        std::vector<int> fill = bound_ptr;
        for (int k = 0; k < mesh.triangle_count(); ++k) {
            const LocalDofs dofs = local_system_dofs(u_map, s_map, layout, k);
            for (const int gr : dofs.global) {
                const int r = layout.free_of_global[gr];
                if (r < 0) continue;
                for (const int gc : dofs.global) {
                    const int c = layout.free_of_global[gc];
                    if (c >= 0) cols[fill[r]++] = c;
                }
            }
        }
        std::vector<int> compact;
        compact.reserve(cols.size() / 4 + 16);
        for (int r = 0; r < n_free; ++r) {
            const auto begin = cols.begin() + bound_ptr[r];
            const auto end = cols.begin() + fill[r];
            std::sort(begin, end);
            const auto last = std::unique(begin, end);
            row_ptr[r + 1] = row_ptr[r] + static_cast<int>(last - begin);
            compact.insert(compact.end(), begin, last);
        }
        cols = std::move(compact);
        std::vector<double> values(cols.size(), 0.0);

        // Element loop accumulating (rho - grad w, tau - grad v) +
        // w_K (A:grad rho)(A:grad tau) and the right-hand side
        // -w_K (f, A:grad tau), with constrained columns folded into the rhs.
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_free);
        std::vector<Eigen::Vector2d> p_vec;
        std::vector<double> d_val;
        for (int k = 0; k < mesh.triangle_count(); ++k) {
            const ElementMap map = ElementMap::from_triangle(mesh, k);
            const double h = mesh.element_diameter(k);
            const double w_k = formulation == Formulation::Weighted ? h * h : 1.0;
            const LocalDofs dofs = local_system_dofs(u_map, s_map, layout, k);
            const int n_loc = static_cast<int>(dofs.global.size());
            Eigen::MatrixXd local = Eigen::MatrixXd::Zero(n_loc, n_loc);
            Eigen::VectorXd local_rhs = Eigen::VectorXd::Zero(n_loc);
            p_vec.assign(n_loc, Eigen::Vector2d::Zero());
            d_val.assign(n_loc, 0.0);
            for (int q = 0; q < nq; ++q) {
                const Eigen::Vector2d x = map.to_physical(rule.points[q]);
                const Eigen::Matrix2d a = problem.coefficient.evaluate(x.x(), x.y());
                const double f = problem.exact.f(x.x(), x.y());
                for (int i = 0; i < dofs.n_u; ++i) {
                    p_vec[i] = -(map.inverse_transpose * u_table.at[q][i].grad);
                    d_val[i] = 0.0;
                }
                for (int j = 0; j < dofs.n_s; ++j) {
                    const BasisEval& b = s_table.at[q][j];
                    const Eigen::Vector2d g = map.inverse_transpose * b.grad;
                    const int j1 = dofs.n_u + j;
                    const int j2 = dofs.n_u + dofs.n_s + j;
                    p_vec[j1] = {b.value, 0.0};
                    d_val[j1] = a(0, 0) * g.x() + a(0, 1) * g.y();
                    p_vec[j2] = {0.0, b.value};
                    d_val[j2] = a(1, 0) * g.x() + a(1, 1) * g.y();
                }
                const double wq = rule.weights[q] * map.det;
                for (int alpha = 0; alpha < n_loc; ++alpha) {
                    for (int beta = 0; beta < n_loc; ++beta) {
                        local(alpha, beta) += wq * (p_vec[alpha].dot(p_vec[beta]) +
                                                    w_k * d_val[alpha] * d_val[beta]);
                    }
                    local_rhs(alpha) -= wq * w_k * f * d_val[alpha];
                }
            }
            for (int alpha = 0; alpha < n_loc; ++alpha) {
                const int gr = dofs.global[alpha];
                const int r = layout.free_of_global[gr];
                if (r < 0) continue;
                rhs(r) += local_rhs(alpha);
                for (int beta = 0; beta < n_loc; ++beta) {
                    const int gc = dofs.global[beta];
                    const int c = layout.free_of_global[gc];
                    if (c >= 0) {
                        const auto begin = cols.begin() + row_ptr[r];
                        const auto end = cols.begin() + row_ptr[r + 1];
                        const auto pos = std::lower_bound(begin, end, c);
                        values[pos - cols.begin()] += local(alpha, beta);
                    } else {
                        // gc is a constrained u dof; fold the lift into the rhs.
                        rhs(r) -= local(alpha, beta) * system.boundary_values[gc];
                    }
                }
            }
        }

        using SpMap = Eigen::Map<const Eigen::SparseMatrix<double, Eigen::RowMajor, int>>;
        system.matrix = SpMap(n_free, n_free, static_cast<int>(cols.size()), row_ptr.data(),
                              cols.data(), values.data());
        system.rhs = std::move(rhs);
    }
    return system;
}

SolutionPair scatter_solution(const SparseSystem& system, const Eigen::VectorXd& x) {
    const BlockLayout& layout = system.layout;
    SolutionPair sol;
    sol.u.assign(layout.n_u, 0.0);
    sol.sigma[0].assign(layout.n_sigma, 0.0);
    sol.sigma[1].assign(layout.n_sigma, 0.0);
    for (int g = 0; g < layout.total; ++g) {
        const int r = layout.free_of_global[g];
        double value;
        if (r >= 0)
            value = x(r);
        else
            value = system.boundary_values[g];
        if (g < layout.n_u)
            sol.u[g] = value;
        else if (g < layout.n_u + layout.n_sigma)
            sol.sigma[0][g - layout.n_u] = value;
        else
            sol.sigma[1][g - layout.n_u - layout.n_sigma] = value;
    }
    return sol;
}

SolutionPair solve_ls(const SparseSystem& system, const SolverConfig& config, SolveInfo* info) {
    const int n = static_cast<int>(system.matrix.rows());
    Eigen::VectorXd x;
    SolveInfo local_info;
    if (n < config.direct_threshold) {
        Eigen::SparseMatrix<double> col_major = system.matrix;
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
        solver.compute(col_major);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("sparse Cholesky factorization failed");
        x = solver.solve(system.rhs);
        local_info.used_direct = true;
    } else {
        Eigen::ConjugateGradient<Eigen::SparseMatrix<double, Eigen::RowMajor>,
                                 Eigen::Lower | Eigen::Upper,
                                 Eigen::DiagonalPreconditioner<double>>
            solver;
        solver.setTolerance(config.tol);
        solver.setMaxIterations(config.max_iterations);
        solver.compute(system.matrix);
        x = solver.solve(system.rhs);
        local_info.iterations = static_cast<int>(solver.iterations());
        local_info.residual = solver.error();
        if (solver.info() != Eigen::Success)
            throw std::runtime_error(
                "conjugate gradient did not converge: relative residual " +
                std::to_string(solver.error()) + " after " +
                std::to_string(solver.iterations()) + " iterations");
    }
    const double rhs_norm = system.rhs.norm();
    if (rhs_norm > 0.0 && local_info.used_direct)
        local_info.residual = (system.matrix * x - system.rhs).norm() / rhs_norm;
    if (info) *info = local_info;
    return scatter_solution(system, x);
}

std::array<double, 2> functional_parts(const Mesh& mesh, const BenchmarkProblem& problem,
                                       Formulation formulation, int degree,
                                       const SolutionPair& solution) {
    validate_formulation(formulation, degree);
    const int s_deg = sigma_degree(formulation, degree);
    const DofMap u_map = build_dofmap(mesh, degree);
    const DofMap s_map = build_dofmap(mesh, s_deg);
    const QuadRule& rule = rule_for_degree(assembly_quadrature_degree(degree));
    const detail::BasisTable u_table = detail::BasisTable::make(degree, rule);
    const detail::BasisTable s_table = detail::BasisTable::make(s_deg, rule);

    double residual_term = 0.0, match_term = 0.0;
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const ElementMap map = ElementMap::from_triangle(mesh, k);
        const double h = mesh.element_diameter(k);
        const double w_k = formulation == Formulation::Weighted ? h * h : 1.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const Eigen::Vector2d x = map.to_physical(rule.points[q]);
            const Eigen::Matrix2d a = problem.coefficient.evaluate(x.x(), x.y());
            const double f = problem.exact.f(x.x(), x.y());
            const auto s = detail::sample_solution(map, u_table, s_table, u_map, s_map, k,
                                                   static_cast<int>(q), solution, false);
            const double wq = rule.weights[q] * map.det;
            const double res = f + detail::contract_grad_sigma(a, s.grad_sigma);
            residual_term += wq * w_k * res * res;
            match_term += wq * (s.sigma - s.grad_u).squaredNorm();
        }
    }
    return {residual_term, match_term};
}

double functional_value(const Mesh& mesh, const BenchmarkProblem& problem,
                        Formulation formulation, int degree, const SolutionPair& solution) {
    const auto parts = functional_parts(mesh, problem, formulation, degree, solution);
    return parts[0] + parts[1];
}

}  // namespace lsfem
