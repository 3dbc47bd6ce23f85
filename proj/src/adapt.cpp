#include "lsfem/adapt.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lsfem {

std::vector<int> dorfler_mark(const ElementIndicator& indicators, double theta) {
    if (!(theta > 0.0) || theta > 1.0)
        throw std::invalid_argument("Dörfler fraction must lie in (0,1]");
    const auto& eta2 = indicators.eta2;
    const double total = std::accumulate(eta2.begin(), eta2.end(), 0.0);
    std::vector<int> order(eta2.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (eta2[a] != eta2[b]) return eta2[a] > eta2[b];
        return a < b;
    });
    std::vector<int> marked;
    double acc = 0.0;
    for (const int k : order) {
        if (eta2[k] <= 0.0) break;
        if (acc >= theta * total) break;
        marked.push_back(k);
        acc += eta2[k];
    }
    return marked;
}

std::vector<RunRecord> adaptive_loop(const BenchmarkProblem& problem, Formulation formulation,
                                     int degree, const AdaptConfig& config,
                                     const SolverConfig& solver) {
    validate_formulation(formulation, degree);
    if (!(config.theta > 0.0) || config.theta > 1.0)
        throw std::invalid_argument("Dörfler fraction must lie in (0,1]");

    std::vector<RunRecord> records;
    Mesh mesh = make_initial_mesh(problem.domain);
    for (int level = 0; level <= config.max_levels; ++level) {
        const SparseSystem system = assemble(mesh, problem, formulation, degree);
        const SolutionPair solution = solve_ls(system, solver);
        const ElementIndicator ind = indicators(mesh, problem, solution, formulation, degree);
        RunRecord rec;
        rec.level = level;
        rec.dofs = system.layout.free_count;
        rec.nodes = mesh.vertex_count();
        rec.h_max = mesh.max_diameter();
        rec.errors = error_norms(mesh, problem, solution, formulation, degree);
        rec.errors.dofs = rec.dofs;
        rec.errors.level = level;
        records.push_back(rec);

        if (level == config.max_levels) break;
        if (rec.dofs >= config.max_dofs) break;
        if (config.stop_eta > 0.0 && ind.eta <= config.stop_eta) break;

        const std::vector<int> marked = dorfler_mark(ind, config.theta);
        if (marked.empty()) break;
        mesh = bisect(mesh, marked);
    }
    return records;
}

}  // namespace lsfem
