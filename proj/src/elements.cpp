#include "lsfem/elements.hpp"

#include <cmath>
#include <stdexcept>

namespace lsfem {

namespace {

// Barycentric coordinates (1-xi-eta, xi, eta) have constant gradients.
const Eigen::Vector2d kBaryGrad[3] = {
    Eigen::Vector2d(-1.0, -1.0),
    Eigen::Vector2d(1.0, 0.0),
    Eigen::Vector2d(0.0, 1.0),
};

Eigen::Matrix2d sym_outer(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a * b.transpose() + b * a.transpose();
}

void check_degree(int degree) {
    if (degree < 1 || degree > 3)
        throw std::invalid_argument("unsupported basis degree " + std::to_string(degree));
}

}  // namespace

int basis_node_count(int degree) {
    check_degree(degree);
    return (degree + 1) * (degree + 2) / 2;
}

std::vector<Eigen::Vector2d> reference_nodes(int degree) {
    check_degree(degree);
    const Eigen::Vector2d v[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    std::vector<Eigen::Vector2d> nodes(v, v + 3);
    if (degree == 2) {
        for (int j = 0; j < 3; ++j) nodes.push_back(0.5 * (v[(j + 1) % 3] + v[(j + 2) % 3]));
    } else if (degree == 3) {
        for (int j = 0; j < 3; ++j) {
            const Eigen::Vector2d a = v[(j + 1) % 3], b = v[(j + 2) % 3];
            nodes.push_back((2.0 * a + b) / 3.0);
            nodes.push_back((a + 2.0 * b) / 3.0);
        }
        nodes.push_back(Eigen::Vector2d(1.0 / 3.0, 1.0 / 3.0));
    }
    return nodes;
}

std::vector<BasisEval> basis_eval(int degree, const Eigen::Vector2d& point) {
    check_degree(degree);
    const double lambda[3] = {1.0 - point.x() - point.y(), point.x(), point.y()};

    std::vector<BasisEval> out(basis_node_count(degree));

    if (degree == 1) {
        for (int i = 0; i < 3; ++i) {
            out[i].value = lambda[i];
            out[i].grad = kBaryGrad[i];
        }
        return out;
    }

    if (degree == 2) {
        for (int i = 0; i < 3; ++i) {
            out[i].value = lambda[i] * (2.0 * lambda[i] - 1.0);
            out[i].grad = (4.0 * lambda[i] - 1.0) * kBaryGrad[i];
            out[i].hess = 4.0 * kBaryGrad[i] * kBaryGrad[i].transpose();
        }
        for (int j = 0; j < 3; ++j) {
            const int a = (j + 1) % 3, b = (j + 2) % 3;
            BasisEval& e = out[3 + j];
            e.value = 4.0 * lambda[a] * lambda[b];
            e.grad = 4.0 * (lambda[b] * kBaryGrad[a] + lambda[a] * kBaryGrad[b]);
            e.hess = 4.0 * sym_outer(kBaryGrad[a], kBaryGrad[b]);
        }
        return out;
    }

    // degree == 3
    for (int i = 0; i < 3; ++i) {
        const double l = lambda[i];
        out[i].value = 0.5 * l * (3.0 * l - 1.0) * (3.0 * l - 2.0);
        out[i].grad = 0.5 * (27.0 * l * l - 18.0 * l + 2.0) * kBaryGrad[i];
        out[i].hess = (27.0 * l - 9.0) * kBaryGrad[i] * kBaryGrad[i].transpose();
    }
    for (int j = 0; j < 3; ++j) {
        const int a = (j + 1) % 3, b = (j + 2) % 3;
        const double la = lambda[a], lb = lambda[b];
        // Node nearer vertex a: 9/2 la lb (3 la - 1).
        {
            BasisEval& e = out[3 + 2 * j];
            e.value = 4.5 * la * lb * (3.0 * la - 1.0);
            const double fa = 4.5 * lb * (6.0 * la - 1.0);
            const double fb = 4.5 * la * (3.0 * la - 1.0);
            e.grad = fa * kBaryGrad[a] + fb * kBaryGrad[b];
            e.hess = 27.0 * lb * kBaryGrad[a] * kBaryGrad[a].transpose() +
                     4.5 * (6.0 * la - 1.0) * sym_outer(kBaryGrad[a], kBaryGrad[b]);
        }
        // Node nearer vertex b: 9/2 la lb (3 lb - 1).
        {
            BasisEval& e = out[3 + 2 * j + 1];
            e.value = 4.5 * la * lb * (3.0 * lb - 1.0);
            const double fa = 4.5 * lb * (3.0 * lb - 1.0);
            const double fb = 4.5 * la * (6.0 * lb - 1.0);
            e.grad = fa * kBaryGrad[a] + fb * kBaryGrad[b];
            e.hess = 27.0 * la * kBaryGrad[b] * kBaryGrad[b].transpose() +
                     4.5 * (6.0 * lb - 1.0) * sym_outer(kBaryGrad[a], kBaryGrad[b]);
        }
    }
    {
        BasisEval& e = out.back();
        const double l0 = lambda[0], l1 = lambda[1], l2 = lambda[2];
        e.value = 27.0 * l0 * l1 * l2;
        e.grad = 27.0 * (l1 * l2 * kBaryGrad[0] + l0 * l2 * kBaryGrad[1] + l0 * l1 * kBaryGrad[2]);
        e.hess = 27.0 * (l2 * sym_outer(kBaryGrad[0], kBaryGrad[1]) +
                         l1 * sym_outer(kBaryGrad[0], kBaryGrad[2]) +
                         l0 * sym_outer(kBaryGrad[1], kBaryGrad[2]));
    }
    return out;
}

ElementMap ElementMap::from_points(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                   const Eigen::Vector2d& c) {
    ElementMap map;
    map.origin = a;
    map.jacobian.col(0) = b - a;
    map.jacobian.col(1) = c - a;
    map.det = map.jacobian.determinant();
    if (!(map.det > 0.0))
        throw std::invalid_argument("element map requires positive orientation");
    map.inverse_transpose = map.jacobian.inverse().transpose();
    return map;
}

ElementMap ElementMap::from_triangle(const Mesh& mesh, int k) {
    const Triangle& t = mesh.triangles.at(k);
    auto pt = [&](int i) {
        return Eigen::Vector2d(mesh.vertices[t.v[i]].x, mesh.vertices[t.v[i]].y);
    };
    return from_points(pt(0), pt(1), pt(2));
}

Eigen::Vector2d push_gradient(const ElementMap& map, const Eigen::Vector2d& reference_gradient) {
    return map.inverse_transpose * reference_gradient;
}

Eigen::Matrix2d push_hessian(const ElementMap& map, const Eigen::Matrix2d& reference_hessian) {
    // Affine map: no curvature term.
    return map.inverse_transpose * reference_hessian * map.inverse_transpose.transpose();
}

}  // namespace lsfem
