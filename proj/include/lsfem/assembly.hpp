#pragma once

#include <Eigen/Sparse>
#include <array>
#include <string>
#include <vector>

#include "lsfem/dofmap.hpp"
#include "lsfem/mesh.hpp"
#include "lsfem/problems.hpp"

namespace lsfem {

enum class Formulation { Weighted, L2 };

Formulation formulation_from_string(const std::string& name);
std::string to_string(Formulation f);

/// Valid pairings: L2 uses degree 1 for both u and sigma; Weighted uses
/// degree k in {2,3} for u and k-1 for sigma.
int sigma_degree(Formulation formulation, int degree);
void validate_formulation(Formulation formulation, int degree);

/// Quadrature degree used when assembling (and when evaluating the discrete
/// functional, so the solved coefficients minimize exactly what is measured).
inline int assembly_quadrature_degree(int degree) { return 2 * degree + 4; }
/// Quadrature degree shared by the error norms and the estimator.
inline int estimate_quadrature_degree(int degree) { return 2 * degree + 6; }

struct SparseSystem {
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;  // over free dofs
    Eigen::VectorXd rhs;
    BlockLayout layout;
    Formulation formulation = Formulation::L2;
    int degree = 1;
    std::vector<double> boundary_values;  // interpolated g over the u dofs
};

struct SolutionPair {
    std::vector<double> u;                         // includes constrained boundary values
    std::array<std::vector<double>, 2> sigma;
};

struct SolverConfig {
    double tol = 1e-10;          // CG relative residual
    int max_iterations = 50000;
    int direct_threshold = 20000;  // below this many free dofs use sparse Cholesky
};

struct SolveInfo {
    bool used_direct = false;
    int iterations = 0;
    double residual = 0.0;
};

SparseSystem assemble(const Mesh& mesh, const BenchmarkProblem& problem,
                      Formulation formulation, int degree);

SolutionPair solve_ls(const SparseSystem& system, const SolverConfig& config = {},
                      SolveInfo* info = nullptr);

/// Gathers a full solution vector (free entries from x, boundary from the
/// lift) into per-block coefficient vectors.
SolutionPair scatter_solution(const SparseSystem& system, const Eigen::VectorXd& x);

/// The two terms of the least-squares functional evaluated with the assembly
/// quadrature: (sum_K w_K ||f + A:grad sigma_h||^2_K, ||sigma_h - grad u_h||^2).
std::array<double, 2> functional_parts(const Mesh& mesh, const BenchmarkProblem& problem,
                                       Formulation formulation, int degree,
                                       const SolutionPair& solution);

/// J(u_h, sigma_h; f), the sum of the two parts above.
double functional_value(const Mesh& mesh, const BenchmarkProblem& problem,
                        Formulation formulation, int degree, const SolutionPair& solution);

}  // namespace lsfem
