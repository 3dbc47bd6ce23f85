#include "lsfem/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace lsfem {

namespace {

constexpr double kOriginGuard = 1e-14;

double sign0(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

Eigen::Matrix2d sym(double a11, double a12, double a22) {
    Eigen::Matrix2d m;
    m << a11, a12, a12, a22;
    return m;
}

[[noreturn]] void origin_error(const char* what) {
    throw std::domain_error(std::string(what) + " requested at a singular point");
}

// ---------------------------------------------------------------------------
// Coefficient matrices.  r = sqrt(x^2+y^2) throughout.
// ---------------------------------------------------------------------------

Eigen::Matrix2d eval_a1(double x, double y) {
    const double sr = std::sqrt(std::hypot(x, y));
    return sym(sr + 1.0, -sr, 5.0 * sr + 1.0);
}

Eigen::Matrix2d eval_a2(double x, double y) {
    const double r = std::hypot(x, y);
    if (r >= 1.0) throw std::domain_error("A2 evaluated at r >= 1 where ln(r) >= 0");
    if (r < kOriginGuard) return sym(15.0, 1.0, 3.0);  // -c/ln(r) -> 0 as r -> 0
    const double il = 1.0 / std::log(r);
    return sym(-5.0 * il + 15.0, 1.0, -il + 3.0);
}

Eigen::Matrix2d eval_a3(double x, double y) {
    const double s = sign0(x * y);
    return sym(2.0, s, 2.0);
}

Eigen::Matrix2d eval_a4(double x, double y) {
    const double cx = std::cbrt(std::abs(x)), cy = std::cbrt(std::abs(y));
    return sym(cx * cx, -cx * cy, cy * cy);
}

Eigen::Matrix2d eval_a5(double x, double y) {
    const double r = std::hypot(x, y);
    const double d = 5.0 * std::sqrt(r) + 1.0;
    return sym(d, r * r / 2.0, d);
}

Eigen::Matrix2d eval_a6(double x, double y) {
    const double r = std::hypot(x, y);
    if (r < kOriginGuard) return sym(5.0, 0.0, 5.0);
    const double lr = std::log(r);
    // The formula is singular on the unit circle, which crosses the L-shaped
    // domain; only an exact hit is rejected.
    if (std::abs(lr) < kOriginGuard) throw std::domain_error("A6 evaluated at r = 1 where ln(r) = 0");
    const double d = 5.0 - 1.0 / lr;
    return sym(d, r * r / 2.0, d);
}

Eigen::Matrix2d eval_a7(double x, double y) {
    const double r2 = x * x + y * y;
    return sym(2.0, r2 * sign0(x * y), 2.0);
}

// ---------------------------------------------------------------------------
// Exact solutions.
// ---------------------------------------------------------------------------

// u = sin(2 pi x) sin(2 pi y) exp(x cos y) on (-1/2,1/2)^2.
struct SmoothSolution {
    static double u(double x, double y) {
        return std::sin(2.0 * M_PI * x) * std::sin(2.0 * M_PI * y) * std::exp(x * std::cos(y));
    }
    static Eigen::Vector2d grad(double x, double y) {
        const double s1 = std::sin(2.0 * M_PI * x), c1 = std::cos(2.0 * M_PI * x);
        const double s2 = std::sin(2.0 * M_PI * y), c2 = std::cos(2.0 * M_PI * y);
        const double cy = std::cos(y), sy = std::sin(y);
        const double e = std::exp(x * cy);
        return {e * s2 * (2.0 * M_PI * c1 + s1 * cy),
                e * s1 * (2.0 * M_PI * c2 - x * sy * s2)};
    }
    static Eigen::Matrix2d hess(double x, double y) {
        const double pi = M_PI;
        const double s1 = std::sin(2.0 * pi * x), c1 = std::cos(2.0 * pi * x);
        const double s2 = std::sin(2.0 * pi * y), c2 = std::cos(2.0 * pi * y);
        const double cy = std::cos(y), sy = std::sin(y);
        const double e = std::exp(x * cy);
        const double uxx = e * s2 * (-4.0 * pi * pi * s1 + 4.0 * pi * c1 * cy + s1 * cy * cy);
        const double uxy =
            e * ((2.0 * pi * c1 + s1 * cy) * (2.0 * pi * c2 - x * sy * s2) - s1 * s2 * sy);
        const double uyy = e * s1 * (-4.0 * pi * pi * s2 - 4.0 * pi * x * sy * c2 +
                                     x * x * sy * sy * s2 - x * cy * s2);
        return sym(uxx, uxy, uyy);
    }
};

// u = x y (e^{1-|x|}-1)(e^{1-|y|}-1) on (-1,1)^2; separable u = X(x) Y(y).
struct Ss13Solution {
    static double X(double t) { return t * (std::exp(1.0 - std::abs(t)) - 1.0); }
    static double dX(double t) {
        const double e = std::exp(1.0 - std::abs(t));
        return (e - 1.0) - std::abs(t) * e;
    }
    static double ddX(double t) {
        return sign0(t) * std::exp(1.0 - std::abs(t)) * (std::abs(t) - 2.0);
    }
    static double u(double x, double y) { return X(x) * X(y); }
    static Eigen::Vector2d grad(double x, double y) {
        return {dX(x) * X(y), X(x) * dX(y)};
    }
    static Eigen::Matrix2d hess(double x, double y) {
        return sym(ddX(x) * X(y), dX(x) * dX(y), X(x) * ddX(y));
    }
};

// u = (x^2+y^2)^{7/8} on (0,1/2)^2, singular at the origin corner.
struct R74Solution {
    static double u(double x, double y) { return std::pow(x * x + y * y, 7.0 / 8.0); }
    static Eigen::Vector2d grad(double x, double y) {
        const double r2 = x * x + y * y;
        if (r2 < kOriginGuard * kOriginGuard) origin_error("grad of r^{7/4}");
        const double c = 1.75 * std::pow(r2, -1.0 / 8.0);
        return {c * x, c * y};
    }
    static Eigen::Matrix2d hess(double x, double y) {
        const double r2 = x * x + y * y;
        if (r2 < kOriginGuard * kOriginGuard) origin_error("hessian of r^{7/4}");
        const double c = 1.75 * std::pow(r2, -9.0 / 8.0);
        return sym(c * (y * y + 0.75 * x * x), -0.25 * c * x * y, c * (x * x + 0.75 * y * y));
    }
};

// u = x^{4/3} - y^{4/3} on (0,1)^2, singular derivatives along the axes.
struct X43Solution {
    static double u(double x, double y) {
        return std::pow(x, 4.0 / 3.0) - std::pow(y, 4.0 / 3.0);
    }
    static Eigen::Vector2d grad(double x, double y) {
        return {(4.0 / 3.0) * std::cbrt(x), -(4.0 / 3.0) * std::cbrt(y)};
    }
    static Eigen::Matrix2d hess(double x, double y) {
        if (x < kOriginGuard || y < kOriginGuard) origin_error("hessian of x^{4/3}-y^{4/3}");
        return sym((4.0 / 9.0) * std::pow(x, -2.0 / 3.0), 0.0,
                   -(4.0 / 9.0) * std::pow(y, -2.0 / 3.0));
    }
};

// u = r^{2/3} sin(2 theta / 3) on the L-shape, theta in [0, 3 pi / 2].
struct LshapeSolution {
    static double theta(double x, double y) {
        double t = std::atan2(y, x);
        if (t < 0.0) t += 2.0 * M_PI;
        return t;
    }
    static double u(double x, double y) {
        const double r2 = x * x + y * y;
        if (r2 == 0.0) return 0.0;
        return std::pow(r2, 1.0 / 3.0) * std::sin(2.0 * theta(x, y) / 3.0);
    }
    static Eigen::Vector2d grad(double x, double y) {
        const double r = std::hypot(x, y);
        if (r < kOriginGuard) origin_error("grad of r^{2/3} sin(2 theta/3)");
        const double t = theta(x, y);
        const double c = (2.0 / 3.0) * std::pow(r, -1.0 / 3.0);
        return {-c * std::sin(t / 3.0), c * std::cos(t / 3.0)};
    }
    static Eigen::Matrix2d hess(double x, double y) {
        const double r = std::hypot(x, y);
        if (r < kOriginGuard) origin_error("hessian of r^{2/3} sin(2 theta/3)");
        const double t = theta(x, y);
        const double c = (2.0 / 9.0) * std::pow(r, -4.0 / 3.0);
        const double uxx = c * std::sin(4.0 * t / 3.0);
        const double uxy = -c * std::cos(4.0 * t / 3.0);
        return sym(uxx, uxy, -uxx);  // harmonic: u_yy = -u_xx
    }
};

// Sanity check: A = I, u = sin(pi x) sin(pi y) on (0,1)^2.
struct PoissonSolution {
    static double u(double x, double y) { return std::sin(M_PI * x) * std::sin(M_PI * y); }
    static Eigen::Vector2d grad(double x, double y) {
        return {M_PI * std::cos(M_PI * x) * std::sin(M_PI * y),
                M_PI * std::sin(M_PI * x) * std::cos(M_PI * y)};
    }
    static Eigen::Matrix2d hess(double x, double y) {
        const double p2 = M_PI * M_PI;
        return sym(-p2 * u(x, y), p2 * std::cos(M_PI * x) * std::cos(M_PI * y), -p2 * u(x, y));
    }
};

template <class Sol>
ExactSolutionBundle make_bundle(const CoefficientField& coeff) {
    ExactSolutionBundle b;
    b.u = [](double x, double y) { return Sol::u(x, y); };
    b.grad_u = [](double x, double y) { return Sol::grad(x, y); };
    b.hess_u = [](double x, double y) { return Sol::hess(x, y); };
    auto a = coeff.evaluate;
    b.f = [a](double x, double y) { return -contract(a(x, y), Sol::hess(x, y)); };
    b.g = b.u;
    return b;
}

BenchmarkProblem make_problem(const std::string& name, DomainId domain,
                              const std::string& coeff_name) {
    BenchmarkProblem p;
    p.name = name;
    p.domain = domain;
    p.coefficient = coefficient(coeff_name);
    return p;
}

}  // namespace

CoefficientField coefficient(const std::string& name) {
    CoefficientField c;
    c.name = name;
    if (name == "A1") {
        c.smoothness = Smoothness::Holder;
        c.evaluate = eval_a1;
    } else if (name == "A2") {
        c.smoothness = Smoothness::Uniform;
        c.evaluate = eval_a2;
    } else if (name == "A3") {
        c.smoothness = Smoothness::Discontinuous;
        c.evaluate = eval_a3;
    } else if (name == "A4") {
        c.smoothness = Smoothness::Degenerate;
        c.evaluate = eval_a4;
    } else if (name == "A5") {
        c.smoothness = Smoothness::Holder;
        c.evaluate = eval_a5;
    } else if (name == "A6") {
        c.smoothness = Smoothness::Uniform;
        c.evaluate = eval_a6;
    } else if (name == "A7") {
        c.smoothness = Smoothness::Discontinuous;
        c.evaluate = eval_a7;
    } else if (name == "I") {
        c.smoothness = Smoothness::Uniform;
        c.evaluate = [](double, double) { return Eigen::Matrix2d::Identity().eval(); };
    } else {
        throw std::invalid_argument("unknown coefficient matrix: " + name);
    }
    return c;
}

BenchmarkProblem benchmark(const std::string& name) {
    if (name == "smooth-a1" || name == "smooth-a2" || name == "smooth-a3" ||
        name == "smooth-a4") {
        const std::string cname = "A" + name.substr(8);
        BenchmarkProblem p = make_problem(name, DomainId::UnitSquareCentered, cname);
        p.exact = make_bundle<SmoothSolution>(p.coefficient);
        return p;
    }
    if (name == "discont-ss13") {
        BenchmarkProblem p = make_problem(name, DomainId::BigSquareCentered, "A3");
        p.exact = make_bundle<Ss13Solution>(p.coefficient);
        return p;
    }
    if (name == "singular-r74") {
        BenchmarkProblem p = make_problem(name, DomainId::HalfSquare, "A2");
        p.exact = make_bundle<R74Solution>(p.coefficient);
        return p;
    }
    if (name == "degenerate-x43") {
        BenchmarkProblem p = make_problem(name, DomainId::UnitSquare, "A4");
        p.exact = make_bundle<X43Solution>(p.coefficient);
        p.exact.f = [](double, double) { return 0.0; };  // A:D^2 u vanishes identically
        return p;
    }
    if (name == "lshape-a5" || name == "lshape-a6" || name == "lshape-a7") {
        const std::string cname = "A" + name.substr(8);
        BenchmarkProblem p = make_problem(name, DomainId::LShape, cname);
        p.exact = make_bundle<LshapeSolution>(p.coefficient);
        return p;
    }
    if (name == "sanity-poisson") {
        BenchmarkProblem p = make_problem(name, DomainId::UnitSquare, "I");
        p.exact = make_bundle<PoissonSolution>(p.coefficient);
        return p;
    }
    throw std::invalid_argument("unknown benchmark: " + name);
}

const std::vector<std::string>& benchmark_names() {
    static const std::vector<std::string> names = {
        "smooth-a1",  "smooth-a2",  "smooth-a3",      "smooth-a4", "discont-ss13",
        "singular-r74", "degenerate-x43", "lshape-a5", "lshape-a6", "lshape-a7",
        "sanity-poisson",
    };
    return names;
}

}  // namespace lsfem
