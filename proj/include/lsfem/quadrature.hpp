#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "lsfem/elements.hpp"

namespace lsfem {

struct QuadRule {
    std::vector<Eigen::Vector2d> points;  // reference coordinates, strictly interior
    std::vector<double> weights;          // positive, summing to 1/2
    int exactness_degree = 0;
};

/// Rule exact for all bivariate polynomials of total degree <= d, 1 <= d <= 12.
const QuadRule& rule_for_degree(int d);

/// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

double integrate(const QuadRule& rule, const ElementMap& map,
                 const std::function<double(const Eigen::Vector2d&)>& integrand);

}  // namespace lsfem
