#include "lsfem/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace lsfem {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on P_n over [-1,1], then map to [0,1].
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[n - 1 - i] = 0.5 * (x + 1.0);
        weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

namespace {

// Collapsed tensor-product Gauss rule on the triangle via x = u, y = v(1-u).
QuadRule duffy_rule(int d) {
    const int nu = (d + 3) / 2;  // ceil((d+2)/2): the Duffy factor raises the u-degree by one
    const int nv = (d + 2) / 2;  // ceil((d+1)/2)
    std::vector<double> un, uw, vn, vw;
    gauss_legendre_01(nu, un, uw);
    gauss_legendre_01(nv, vn, vw);
    QuadRule rule;
    rule.exactness_degree = d;
    rule.points.reserve(nu * nv);
    rule.weights.reserve(nu * nv);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            rule.points.emplace_back(un[i], vn[j] * (1.0 - un[i]));
            rule.weights.push_back(uw[i] * vw[j] * (1.0 - un[i]));
        }
    }
    return rule;
}

QuadRule build_rule(int d) {
    if (d == 1) {
        QuadRule rule;
        rule.exactness_degree = 1;
        rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
        rule.weights.push_back(0.5);
        return rule;
    }
    if (d == 2) {
        QuadRule rule;
        rule.exactness_degree = 2;
        rule.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
        rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
        return rule;
    }
    return duffy_rule(d);
}

}  // namespace

const QuadRule& rule_for_degree(int d) {
    if (d < 1 || d > 12)
        throw std::invalid_argument("quadrature degree out of range [1,12]: " + std::to_string(d));
    static std::array<QuadRule, 12> cache;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int k = 1; k <= 12; ++k) cache[k - 1] = build_rule(k);
    });
    return cache[d - 1];
}

double integrate(const QuadRule& rule, const ElementMap& map,
                 const std::function<double(const Eigen::Vector2d&)>& integrand) {
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
        sum += rule.weights[q] * integrand(map.to_physical(rule.points[q]));
    return sum * map.det;
}

}  // namespace lsfem
