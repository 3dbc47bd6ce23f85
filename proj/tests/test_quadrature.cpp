#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lsfem/quadrature.hpp"
#include "test_support.hpp"

using namespace lsfem;

TEST_CASE("rule bookkeeping") {
    CHECK_THROWS_AS(rule_for_degree(0), std::invalid_argument);
    CHECK_THROWS_AS(rule_for_degree(13), std::invalid_argument);

    const QuadRule& r1 = rule_for_degree(1);
    REQUIRE(r1.points.size() == 1);
    CHECK(r1.points[0].x() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r1.points[0].y() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(0.5).epsilon(1e-15));

    for (int d = 1; d <= 12; ++d) {
        const QuadRule& rule = rule_for_degree(d);
        CHECK(rule.exactness_degree == d);
        double total = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto& p = rule.points[q];
            CHECK(rule.weights[q] > 0.0);
            CHECK(p.x() > 0.0);
            CHECK(p.y() > 0.0);
            CHECK(p.x() + p.y() < 1.0);
            total += rule.weights[q];
        }
        CHECK(std::abs(total - 0.5) <= 1e-14);
    }
}

TEST_CASE("monomial exactness against the closed form") {
    for (int d = 1; d <= 12; ++d) {
        const QuadRule& rule = rule_for_degree(d);
        for (int a = 0; a + 0 <= d; ++a) {
            for (int b = 0; a + b <= d; ++b) {
                double acc = 0.0;
                for (std::size_t q = 0; q < rule.points.size(); ++q)
                    acc += rule.weights[q] * std::pow(rule.points[q].x(), a) *
                           std::pow(rule.points[q].y(), b);
                CHECK(std::abs(acc - test_support::monomial_integral(a, b)) <= 1e-13);
            }
        }
    }
}

TEST_CASE("integration over physical elements") {
    const ElementMap unit = ElementMap::from_points({0, 0}, {1, 0}, {0, 1});

    SUBCASE("constant integrand gives the area") {
        for (int d : {1, 4, 9}) {
            const double area =
                integrate(rule_for_degree(d), unit, [](const Eigen::Vector2d&) { return 1.0; });
            CHECK(area == doctest::Approx(0.5).epsilon(1e-15));
        }
        const ElementMap skew = ElementMap::from_points({0.5, 0.25}, {2.5, 1.0}, {1.0, 3.0});
        const double area =
            integrate(rule_for_degree(4), skew, [](const Eigen::Vector2d&) { return 1.0; });
        CHECK(area == doctest::Approx(0.5 * skew.det).epsilon(1e-14));
    }

    SUBCASE("linear integrand") {
        const double value = integrate(rule_for_degree(2), unit,
                                       [](const Eigen::Vector2d& p) { return p.x(); });
        CHECK(value == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    }

    SUBCASE("sin(x+y) against a composite-Simpson oracle") {
        const auto f = [](const Eigen::Vector2d& p) { return std::sin(p.x() + p.y()); };
        const double value = integrate(rule_for_degree(12), unit, f);
        const double oracle = test_support::simpson_triangle(
            unit, [](double x, double y) { return std::sin(x + y); });
        CHECK(std::abs(value - oracle) <= 1e-10);
    }
}
