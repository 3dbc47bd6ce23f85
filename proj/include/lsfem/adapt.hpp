#pragma once

#include <vector>

#include "lsfem/assembly.hpp"
#include "lsfem/estimate.hpp"
#include "lsfem/mesh.hpp"
#include "lsfem/problems.hpp"

namespace lsfem {

struct AdaptConfig {
    double theta = 0.5;        // Dörfler fraction in (0,1]
    int max_levels = 30;
    long max_dofs = 150000;
    double stop_eta = 0.0;
};

/// Minimal-cardinality marked set: take elements greedily by descending
/// eta_K^2 (ties toward lower index) until the marked sum reaches
/// theta * sum eta_K^2.
std::vector<int> dorfler_mark(const ElementIndicator& indicators, double theta);

struct RunRecord {
    int level = 0;
    long dofs = 0;      // free dofs of the solved system
    long nodes = 0;     // mesh vertices
    double h_max = 0.0;
    ErrorReport errors;
};

/// Solve -> estimate -> mark -> bisect until max_levels, max_dofs, or
/// stop_eta triggers; one record per solved level.
std::vector<RunRecord> adaptive_loop(const BenchmarkProblem& problem, Formulation formulation,
                                     int degree, const AdaptConfig& config,
                                     const SolverConfig& solver = {});

}  // namespace lsfem
