#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "lsfem/mesh.hpp"

namespace lsfem {

enum class Smoothness { Holder, Uniform, Discontinuous, Degenerate };

/// Pointwise symmetric 2x2 coefficient matrix A(x,y).
struct CoefficientField {
    std::string name;
    Smoothness smoothness = Smoothness::Uniform;
    std::function<Eigen::Matrix2d(double, double)> evaluate;
};

/// Exact solution with analytic derivatives; f = -A:D^2 u and g is the
/// boundary trace of u.
struct ExactSolutionBundle {
    std::function<double(double, double)> u;
    std::function<Eigen::Vector2d(double, double)> grad_u;
    std::function<Eigen::Matrix2d(double, double)> hess_u;
    std::function<double(double, double)> f;
    std::function<double(double, double)> g;
};

struct BenchmarkProblem {
    std::string name;
    DomainId domain = DomainId::UnitSquare;
    CoefficientField coefficient;
    ExactSolutionBundle exact;
};

/// Coefficient matrices by catalog name "A1".."A7" or "I".
CoefficientField coefficient(const std::string& name);

/// Benchmark problems: smooth-a1..smooth-a4, discont-ss13, singular-r74,
/// degenerate-x43, lshape-a5..lshape-a7, plus the sanity-poisson check
/// problem (A = I, u = sin(pi x) sin(pi y) on the unit square).
BenchmarkProblem benchmark(const std::string& name);

const std::vector<std::string>& benchmark_names();

/// Frobenius contraction A:B of two 2x2 matrices.
inline double contract(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
    return a(0, 0) * b(0, 0) + a(0, 1) * b(0, 1) + a(1, 0) * b(1, 0) + a(1, 1) * b(1, 1);
}

}  // namespace lsfem
