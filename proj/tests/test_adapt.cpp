#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "lsfem/adapt.hpp"
#include "test_support.hpp"

using namespace lsfem;
using test_support::uniform;

namespace {

ElementIndicator make_indicator(std::vector<double> eta2) {
    ElementIndicator ind;
    ind.eta2 = std::move(eta2);
    double total = 0.0;
    for (const double v : ind.eta2) total += v;
    ind.eta = std::sqrt(total);
    return ind;
}

// Smallest subset cardinality reaching theta * total, by exhaustive search.
int brute_force_minimum(const std::vector<double>& eta2, double theta) {
    const int n = static_cast<int>(eta2.size());
    const double total = std::accumulate(eta2.begin(), eta2.end(), 0.0);
    int best = n + 1;
    for (int mask = 0; mask < (1 << n); ++mask) {
        double sum = 0.0;
        int size = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) {
                sum += eta2[i];
                ++size;
            }
        if (sum >= theta * total) best = std::min(best, size);
    }
    return best;
}

}  // namespace

TEST_CASE("Dörfler marking") {
    SUBCASE("dominant element suffices") {
        const auto marked = dorfler_mark(make_indicator({9, 4, 1}), 0.5);
        REQUIRE(marked.size() == 1);
        CHECK(marked[0] == 0);
    }
    SUBCASE("equal indicators mark the ceiling of the fraction") {
        const auto marked = dorfler_mark(make_indicator(std::vector<double>(10, 1.0)), 0.3);
        CHECK(marked.size() == 3);
        CHECK(marked == std::vector<int>{0, 1, 2});  // ties resolved by index
    }
    SUBCASE("theta = 1 marks exactly the positive indicators") {
        const auto marked = dorfler_mark(make_indicator({1, 0, 2, 0, 3}), 1.0);
        CHECK(marked.size() == 3);
    }
    SUBCASE("invalid fractions are rejected") {
        CHECK_THROWS_AS(dorfler_mark(make_indicator({1, 2}), 0.0), std::invalid_argument);
        CHECK_THROWS_AS(dorfler_mark(make_indicator({1, 2}), 1.5), std::invalid_argument);
    }
    SUBCASE("greedy set is minimal") {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> eta2(10);
            for (double& v : eta2) v = uniform(0.0, 1.0);
            const double theta = uniform(0.2, 0.95);
            const double total = std::accumulate(eta2.begin(), eta2.end(), 0.0);
            const auto marked = dorfler_mark(make_indicator(eta2), theta);
            CHECK(static_cast<int>(marked.size()) == brute_force_minimum(eta2, theta));
            double sum = 0.0;
            for (const int k : marked) sum += eta2[k];
            CHECK(sum >= theta * total - 1e-12);
            // dropping the smallest marked indicator breaks the inequality
            double smallest = 1e300;
            for (const int k : marked) smallest = std::min(smallest, eta2[k]);
            CHECK(sum - smallest < theta * total);
        }
    }
}

TEST_CASE("adaptive loop") {
    const BenchmarkProblem p = benchmark("smooth-a1");
    AdaptConfig cfg;
    cfg.theta = 0.5;
    cfg.max_levels = 5;

    SUBCASE("dof counts strictly increase and the loop is deterministic") {
        const auto a = adaptive_loop(p, Formulation::L2, 1, cfg);
        const auto b = adaptive_loop(p, Formulation::L2, 1, cfg);
        REQUIRE(a.size() == b.size());
        REQUIRE(a.size() == 6);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].dofs == b[i].dofs);
            CHECK(a[i].nodes == b[i].nodes);
            CHECK(a[i].errors.ls == b[i].errors.ls);
            if (i > 0) CHECK(a[i].dofs > a[i - 1].dofs);
        }
    }

    SUBCASE("max_dofs stops the loop") {
        AdaptConfig small = cfg;
        small.max_levels = 50;
        small.max_dofs = 500;
        const auto records = adaptive_loop(p, Formulation::L2, 1, small);
        REQUIRE(!records.empty());
        CHECK(records.back().dofs >= 500);
        if (records.size() > 1) CHECK(records[records.size() - 2].dofs < 500);
    }
}

TEST_CASE("adaptive refinement concentrates at the reentrant corner") {
    const BenchmarkProblem p = benchmark("lshape-a5");
    AdaptConfig cfg;
    cfg.theta = 0.5;
    cfg.max_levels = 14;
    cfg.max_dofs = 40000;
    const auto records = adaptive_loop(p, Formulation::L2, 1, cfg);
    REQUIRE(records.size() > 5);

    // Rebuild the final mesh deterministically to inspect it.
    Mesh mesh = make_initial_mesh(p.domain);
    for (std::size_t level = 0; level + 1 < records.size(); ++level) {
        const SolutionPair sol = solve_ls(assemble(mesh, p, Formulation::L2, 1));
        const auto ind = indicators(mesh, p, sol, Formulation::L2, 1);
        mesh = bisect(mesh, dorfler_mark(ind, cfg.theta));
    }
    double nearest = 1e300;
    int nearest_k = -1;
    for (int k = 0; k < mesh.triangle_count(); ++k) {
        const auto& t = mesh.triangles[k];
        double cx = 0, cy = 0;
        for (int i = 0; i < 3; ++i) {
            cx += mesh.vertices[t.v[i]].x / 3.0;
            cy += mesh.vertices[t.v[i]].y / 3.0;
        }
        const double d = std::hypot(cx, cy);
        if (d < nearest) {
            nearest = d;
            nearest_k = k;
        }
    }
    CHECK(mesh.element_diameter(nearest_k) < mesh.max_diameter() / 10.0);
}
