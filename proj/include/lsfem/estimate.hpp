#pragma once

#include <vector>

#include "lsfem/assembly.hpp"
#include "lsfem/mesh.hpp"
#include "lsfem/problems.hpp"

namespace lsfem {

/// Per-element squared indicators eta_K^2 = w_K ||f + A:grad sigma_h||^2_K
/// + ||sigma_h - grad u_h||^2_K with w_K = h_K^2 for the weighted
/// formulation and 1 for the L2 formulation.
struct ElementIndicator {
    std::vector<double> eta2;
    double eta = 0.0;
    Formulation formulation = Formulation::L2;
};

ElementIndicator indicators(const Mesh& mesh, const BenchmarkProblem& problem,
                            const SolutionPair& solution, Formulation formulation, int degree);

/// Exact-error norms of a discrete solution.  ls is the least-squares norm
/// |||(e,E)||| (h-weighted iff the formulation is weighted); wbh2_A and wbh2
/// are the h-weighted broken H2 quantities ||h A:D2_h e||_0 and
/// ||h D2_h e||_0, reported only for degree >= 2 (NaN otherwise).  eta is
/// the estimator computed on the same quadrature nodes.
struct ErrorReport {
    double ls = 0.0;
    double l2_u = 0.0;
    double h1_u = 0.0;
    double l2_sigma = 0.0;
    double wbh2_A = 0.0;
    double wbh2 = 0.0;
    double eta = 0.0;
    long dofs = 0;
    int level = 0;
};

ErrorReport error_norms(const Mesh& mesh, const BenchmarkProblem& problem,
                        const SolutionPair& solution, Formulation formulation, int degree);

/// Per-element squared local error seminorms |||(e,E)|||_K^2, on the same
/// quadrature nodes as indicators().
std::vector<double> local_error2(const Mesh& mesh, const BenchmarkProblem& problem,
                                 const SolutionPair& solution, Formulation formulation,
                                 int degree);

}  // namespace lsfem
