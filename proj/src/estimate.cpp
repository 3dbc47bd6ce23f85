#include "lsfem/estimate.hpp"

#include <cmath>
#include <limits>

#include "lsfem/quadrature.hpp"
#include "solution_eval.hpp"

namespace lsfem {

namespace {

struct EstimateContext {
    DofMap u_map;
    DofMap s_map;
    const QuadRule* rule;
    detail::BasisTable u_table;
    detail::BasisTable s_table;

    EstimateContext(const Mesh& mesh, Formulation formulation, int degree)
        : u_map(build_dofmap(mesh, degree)),
          s_map(build_dofmap(mesh, sigma_degree(formulation, degree))),
          rule(&rule_for_degree(estimate_quadrature_degree(degree))),
          u_table(detail::BasisTable::make(degree, *rule)),
          s_table(detail::BasisTable::make(sigma_degree(formulation, degree), *rule)) {
        validate_formulation(formulation, degree);
    }
};

}  // namespace

ElementIndicator indicators(const Mesh& mesh, const BenchmarkProblem& problem,
                            const SolutionPair& solution, Formulation formulation, int degree) {
    EstimateContext ctx(mesh, formulation, degree);
    ElementIndicator out;
    out.formulation = formulation;
    out.eta2.assign(mesh.triangle_count(), 0.0);
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const ElementMap map = ElementMap::from_triangle(mesh, k);
        const double h = mesh.element_diameter(k);
        const double w_k = formulation == Formulation::Weighted ? h * h : 1.0;
        double acc = 0.0;
        for (std::size_t q = 0; q < ctx.rule->points.size(); ++q) {
            const Eigen::Vector2d x = map.to_physical(ctx.rule->points[q]);
            const Eigen::Matrix2d a = problem.coefficient.evaluate(x.x(), x.y());
            const double f = problem.exact.f(x.x(), x.y());
            const auto s = detail::sample_solution(map, ctx.u_table, ctx.s_table, ctx.u_map,
                                                   ctx.s_map, k, static_cast<int>(q), solution,
                                                   false);
            const double res = f + detail::contract_grad_sigma(a, s.grad_sigma);
            const double wq = ctx.rule->weights[q] * map.det;
            acc += wq * (w_k * res * res + (s.sigma - s.grad_u).squaredNorm());
        }
        out.eta2[k] = acc;
    }
    double total = 0.0;
    for (const double e2 : out.eta2) total += e2;
    out.eta = std::sqrt(total);
    return out;
}

std::vector<double> local_error2(const Mesh& mesh, const BenchmarkProblem& problem,
                                 const SolutionPair& solution, Formulation formulation,
                                 int degree) {
    EstimateContext ctx(mesh, formulation, degree);
    std::vector<double> out(mesh.triangle_count(), 0.0);
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const ElementMap map = ElementMap::from_triangle(mesh, k);
        const double h = mesh.element_diameter(k);
        const double w_k = formulation == Formulation::Weighted ? h * h : 1.0;
        double acc = 0.0;
        for (std::size_t q = 0; q < ctx.rule->points.size(); ++q) {
            const Eigen::Vector2d x = map.to_physical(ctx.rule->points[q]);
            const Eigen::Matrix2d a = problem.coefficient.evaluate(x.x(), x.y());
            const auto s = detail::sample_solution(map, ctx.u_table, ctx.s_table, ctx.u_map,
                                                   ctx.s_map, k, static_cast<int>(q), solution,
                                                   false);
            const Eigen::Vector2d grad_e = problem.exact.grad_u(x.x(), x.y()) - s.grad_u;
            const Eigen::Vector2d sigma_e =
                problem.exact.grad_u(x.x(), x.y()) - s.sigma;  // sigma = grad u
            const Eigen::Matrix2d grad_sigma_e =
                problem.exact.hess_u(x.x(), x.y()) - s.grad_sigma;
            const double res = detail::contract_grad_sigma(a, grad_sigma_e);
            const double wq = ctx.rule->weights[q] * map.det;
            acc += wq * (w_k * res * res + (sigma_e - grad_e).squaredNorm());
        }
        out[k] = acc;
    }
    return out;
}

ErrorReport error_norms(const Mesh& mesh, const BenchmarkProblem& problem,
                        const SolutionPair& solution, Formulation formulation, int degree) {
    EstimateContext ctx(mesh, formulation, degree);
    ErrorReport rep;
    const bool with_hessian = degree >= 2;
    double ls2 = 0, l2u2 = 0, h1u2 = 0, l2s2 = 0, wbh2a2 = 0, wbh22 = 0, eta2 = 0;
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const ElementMap map = ElementMap::from_triangle(mesh, k);
        const double h = mesh.element_diameter(k);
        const double h2 = h * h;
        const double w_k = formulation == Formulation::Weighted ? h2 : 1.0;
        for (std::size_t q = 0; q < ctx.rule->points.size(); ++q) {
            const Eigen::Vector2d x = map.to_physical(ctx.rule->points[q]);
            const Eigen::Matrix2d a = problem.coefficient.evaluate(x.x(), x.y());
            const double wq = ctx.rule->weights[q] * map.det;
            const auto s = detail::sample_solution(map, ctx.u_table, ctx.s_table, ctx.u_map,
                                                   ctx.s_map, k, static_cast<int>(q), solution,
                                                   with_hessian);
            const double ue = problem.exact.u(x.x(), x.y());
            const Eigen::Vector2d ge = problem.exact.grad_u(x.x(), x.y());
            const Eigen::Matrix2d he = problem.exact.hess_u(x.x(), x.y());

            double uh = 0.0;
            for (std::size_t i = 0; i < ctx.u_map.cell_dofs[k].size(); ++i)
                uh += solution.u[ctx.u_map.cell_dofs[k][i]] * ctx.u_table.at[q][i].value;

            const Eigen::Vector2d grad_e = ge - s.grad_u;
            const Eigen::Vector2d sigma_e = ge - s.sigma;
            const Eigen::Matrix2d grad_sigma_e = he - s.grad_sigma;
            const double res = detail::contract_grad_sigma(a, grad_sigma_e);

            ls2 += wq * (w_k * res * res + (sigma_e - grad_e).squaredNorm());
            l2u2 += wq * (ue - uh) * (ue - uh);
            h1u2 += wq * grad_e.squaredNorm();
            l2s2 += wq * sigma_e.squaredNorm();
            if (with_hessian) {
                const Eigen::Matrix2d hess_e = he - s.hess_u;
                const double a_d2 = contract(a, hess_e);
                wbh2a2 += wq * h2 * a_d2 * a_d2;
                wbh22 += wq * h2 * hess_e.squaredNorm();
            }

            // Estimator contribution on the same nodes.
            const double fres =
                problem.exact.f(x.x(), x.y()) + detail::contract_grad_sigma(a, s.grad_sigma);
            eta2 += wq * (w_k * fres * fres + (s.sigma - s.grad_u).squaredNorm());
        }
    }
    rep.ls = std::sqrt(ls2);
    rep.l2_u = std::sqrt(l2u2);
    rep.h1_u = std::sqrt(h1u2);
    rep.l2_sigma = std::sqrt(l2s2);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.wbh2_A = with_hessian ? std::sqrt(wbh2a2) : nan;
    rep.wbh2 = with_hessian ? std::sqrt(wbh22) : nan;
    rep.eta = std::sqrt(eta2);
    return rep;
}

}  // namespace lsfem
