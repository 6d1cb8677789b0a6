#include "moobox/problems.hpp"

#include <cmath>
#include <numbers>

namespace moobox {

namespace {

constexpr double kRatioFloor = 1e-12;  // keeps sqrt-type gradients finite at f1 = 0

// f1 = sum (x_i - i)^2 / n^2 (1-based i), f2 = sum exp(-x_i) + x_i.
// Convex; f1's minimizer is x_i = i, f2's is x = 0.
ProblemSpec make_man(int n) {
    ProblemSpec p;
    p.name = "MAN";
    p.n = n;
    p.m = 2;
    p.lower.assign(static_cast<std::size_t>(n), -1e4);
    p.upper.assign(static_cast<std::size_t>(n), 1e4);
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    p.eval = [n, nn](const Vec& x) {
        double f1 = 0.0, f2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xi = x[static_cast<std::size_t>(i)];
            const double t = xi - static_cast<double>(i + 1);
            f1 += t * t;
            f2 += std::exp(-xi) + xi;
        }
        return Vec{f1 / nn, f2};
    };
    p.jac = [n, nn](const Vec& x) {
        Matrix J(2, static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            J(0, u) = 2.0 * (x[u] - static_cast<double>(i + 1)) / nn;
            J(1, u) = 1.0 - std::exp(-x[u]);
        }
        return J;
    };
    return p;
}

// Shared ZDT scaffolding: f1 = x1, f2 = g * h(f1, g) with
// g = 1 + 9 * sum_{i>=2} x_i / (n-1) for ZDT1-3.
double zdt_g(const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i];
    return 1.0 + 9.0 * s / (static_cast<double>(x.size()) - 1.0);
}

ProblemSpec zdt_base(const char* name, int n) {
    if (n < 2) throw std::invalid_argument(std::string(name) + ": dimension must be >= 2");
    ProblemSpec p;
    p.name = name;
    p.n = n;
    p.m = 2;
    p.lower.assign(static_cast<std::size_t>(n), 0.0);
    p.upper.assign(static_cast<std::size_t>(n), 1.0);
    return p;
}

ProblemSpec make_zdt1(int n) {
    ProblemSpec p = zdt_base("ZDT1", n);
    p.eval = [](const Vec& x) {
        const double g = zdt_g(x);
        return Vec{x[0], g * (1.0 - std::sqrt(x[0] / g))};
    };
    p.jac = [n](const Vec& x) {
        const double g = zdt_g(x);
        const double r = std::max(x[0] / g, kRatioFloor);
        const double gp = 9.0 / (static_cast<double>(n) - 1.0);
        Matrix J(2, static_cast<std::size_t>(n));
        J(0, 0) = 1.0;
        J(1, 0) = -0.5 / std::sqrt(r);
        for (int i = 1; i < n; ++i) {
            J(0, static_cast<std::size_t>(i)) = 0.0;
            J(1, static_cast<std::size_t>(i)) = gp * (1.0 - 0.5 * std::sqrt(r));
        }
        return J;
    };
    p.near_singularity = [](const Vec& x) { return std::fabs(x[0]) < 1e-8; };
    return p;
}

ProblemSpec make_zdt2(int n) {
    ProblemSpec p = zdt_base("ZDT2", n);
    p.eval = [](const Vec& x) {
        const double g = zdt_g(x);
        const double r = x[0] / g;
        return Vec{x[0], g * (1.0 - r * r)};
    };
    p.jac = [n](const Vec& x) {
        const double g = zdt_g(x);
        const double r = x[0] / g;
        const double gp = 9.0 / (static_cast<double>(n) - 1.0);
        Matrix J(2, static_cast<std::size_t>(n));
        J(0, 0) = 1.0;
        J(1, 0) = -2.0 * r;
        for (int i = 1; i < n; ++i) {
            J(0, static_cast<std::size_t>(i)) = 0.0;
            J(1, static_cast<std::size_t>(i)) = gp * (1.0 + r * r);
        }
        return J;
    };
    return p;
}

ProblemSpec make_zdt3(int n) {
    ProblemSpec p = zdt_base("ZDT3", n);
    p.eval = [](const Vec& x) {
        const double g = zdt_g(x);
        const double f1 = x[0];
        const double h =
            1.0 - std::sqrt(f1 / g) - (f1 / g) * std::sin(10.0 * std::numbers::pi * f1);
        return Vec{f1, g * h};
    };
    p.jac = [n](const Vec& x) {
        const double g = zdt_g(x);
        const double f1 = x[0];
        const double r = std::max(f1 / g, kRatioFloor);
        const double gp = 9.0 / (static_cast<double>(n) - 1.0);
        const double pi = std::numbers::pi;
        Matrix J(2, static_cast<std::size_t>(n));
        J(0, 0) = 1.0;
        // f2 = g - sqrt(f1 g) - f1 sin(10 pi f1)
        J(1, 0) = -0.5 / std::sqrt(r) - std::sin(10.0 * pi * f1) -
                  10.0 * pi * f1 * std::cos(10.0 * pi * f1);
        for (int i = 1; i < n; ++i) {
            J(0, static_cast<std::size_t>(i)) = 0.0;
            J(1, static_cast<std::size_t>(i)) = gp * (1.0 - 0.5 * std::sqrt(r));
        }
        return J;
    };
    p.near_singularity = [](const Vec& x) { return std::fabs(x[0]) < 1e-8; };
    return p;
}

ProblemSpec make_zdt4(int n) {
    if (n < 2) throw std::invalid_argument("ZDT4: dimension must be >= 2");
    ProblemSpec p;
    p.name = "ZDT4";
    p.n = n;
    p.m = 2;
    p.lower.assign(static_cast<std::size_t>(n), -5.0);
    p.upper.assign(static_cast<std::size_t>(n), 5.0);
    p.lower[0] = 0.0;
    p.upper[0] = 1.0;
    const double pi = std::numbers::pi;
    auto g_of = [n, pi](const Vec& x) {
        double g = 1.0 + 10.0 * (static_cast<double>(n) - 1.0);
        for (int i = 1; i < n; ++i) {
            const double xi = x[static_cast<std::size_t>(i)];
            g += xi * xi - 10.0 * std::cos(4.0 * pi * xi);
        }
        return g;
    };
    p.eval = [g_of](const Vec& x) {
        const double g = g_of(x);
        return Vec{x[0], g * (1.0 - std::sqrt(x[0] / g))};
    };
    p.jac = [n, pi, g_of](const Vec& x) {
        const double g = g_of(x);
        const double r = std::max(x[0] / g, kRatioFloor);
        Matrix J(2, static_cast<std::size_t>(n));
        J(0, 0) = 1.0;
        J(1, 0) = -0.5 / std::sqrt(r);
        for (int i = 1; i < n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            const double dg = 2.0 * x[u] + 40.0 * pi * std::sin(4.0 * pi * x[u]);
            J(0, u) = 0.0;
            J(1, u) = dg * (1.0 - 0.5 * std::sqrt(r));
        }
        return J;
    };
    p.near_singularity = [](const Vec& x) { return std::fabs(x[0]) < 1e-8; };
    return p;
}

// Schaffer's single-variable problem; the classical domain is truncated to
// [-1e3, 1e3] to keep the quadratic values well scaled.
ProblemSpec make_mop1() {
    ProblemSpec p;
    p.name = "MOP1";
    p.n = 1;
    p.m = 2;
    p.lower = {-1e3};
    p.upper = {1e3};
    p.eval = [](const Vec& x) { return Vec{x[0] * x[0], (x[0] - 2.0) * (x[0] - 2.0)}; };
    p.jac = [](const Vec& x) {
        Matrix J(2, 1);
        J(0, 0) = 2.0 * x[0];
        J(1, 0) = 2.0 * (x[0] - 2.0);
        return J;
    };
    return p;
}

// Fonseca-Fleming: f_{1,2} = 1 - exp(-sum (x_i -+ 1/sqrt(n))^2).
ProblemSpec make_mop2(int n) {
    ProblemSpec p;
    p.name = "MOP2";
    p.n = n;
    p.m = 2;
    p.lower.assign(static_cast<std::size_t>(n), -4.0);
    p.upper.assign(static_cast<std::size_t>(n), 4.0);
    const double c = 1.0 / std::sqrt(static_cast<double>(n));
    p.eval = [n, c](const Vec& x) {
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xi = x[static_cast<std::size_t>(i)];
            s1 += (xi - c) * (xi - c);
            s2 += (xi + c) * (xi + c);
        }
        return Vec{1.0 - std::exp(-s1), 1.0 - std::exp(-s2)};
    };
    p.jac = [n, c](const Vec& x) {
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xi = x[static_cast<std::size_t>(i)];
            s1 += (xi - c) * (xi - c);
            s2 += (xi + c) * (xi + c);
        }
        const double e1 = std::exp(-s1), e2 = std::exp(-s2);
        Matrix J(2, static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            J(0, u) = 2.0 * (x[u] - c) * e1;
            J(1, u) = 2.0 * (x[u] + c) * e2;
        }
        return J;
    };
    return p;
}

// Poloni's two-variable problem in its minimization form.
ProblemSpec make_mop3() {
    ProblemSpec p;
    p.name = "MOP3";
    p.n = 2;
    p.m = 2;
    const double pi = std::numbers::pi;
    p.lower = {-pi, -pi};
    p.upper = {pi, pi};
    const double a1 = 0.5 * std::sin(1.0) - 2.0 * std::cos(1.0) + std::sin(2.0) -
                      1.5 * std::cos(2.0);
    const double a2 = 1.5 * std::sin(1.0) - std::cos(1.0) + 2.0 * std::sin(2.0) -
                      0.5 * std::cos(2.0);
    p.eval = [a1, a2](const Vec& v) {
        const double x = v[0], y = v[1];
        const double b1 =
            0.5 * std::sin(x) - 2.0 * std::cos(x) + std::sin(y) - 1.5 * std::cos(y);
        const double b2 =
            1.5 * std::sin(x) - std::cos(x) + 2.0 * std::sin(y) - 0.5 * std::cos(y);
        const double f1 = 1.0 + (a1 - b1) * (a1 - b1) + (a2 - b2) * (a2 - b2);
        const double f2 = (x + 3.0) * (x + 3.0) + (y + 1.0) * (y + 1.0);
        return Vec{f1, f2};
    };
    p.jac = [a1, a2](const Vec& v) {
        const double x = v[0], y = v[1];
        const double b1 =
            0.5 * std::sin(x) - 2.0 * std::cos(x) + std::sin(y) - 1.5 * std::cos(y);
        const double b2 =
            1.5 * std::sin(x) - std::cos(x) + 2.0 * std::sin(y) - 0.5 * std::cos(y);
        const double db1dx = 0.5 * std::cos(x) + 2.0 * std::sin(x);
        const double db1dy = std::cos(y) + 1.5 * std::sin(y);
        const double db2dx = 1.5 * std::cos(x) + std::sin(x);
        const double db2dy = 2.0 * std::cos(y) + 0.5 * std::sin(y);
        Matrix J(2, 2);
        J(0, 0) = -2.0 * (a1 - b1) * db1dx - 2.0 * (a2 - b2) * db2dx;
        J(0, 1) = -2.0 * (a1 - b1) * db1dy - 2.0 * (a2 - b2) * db2dy;
        J(1, 0) = 2.0 * (x + 3.0);
        J(1, 1) = 2.0 * (y + 1.0);
        return J;
    };
    return p;
}

}  // namespace

const std::vector<ProblemInfo>& problem_registry() {
    static const std::vector<ProblemInfo> reg = {
        {"MAN", 2, 0, 1, "[-1e4, 1e4]^n"},
        {"ZDT1", 2, 0, 2, "[0, 1]^n"},
        {"ZDT2", 2, 0, 2, "[0, 1]^n"},
        {"ZDT3", 2, 0, 2, "[0, 1]^n"},
        {"ZDT4", 2, 0, 2, "x1 in [0, 1], x(i>1) in [-5, 5]"},
        {"MOP1", 2, 1, 1, "[-1e3, 1e3]"},
        {"MOP2", 2, 0, 1, "[-4, 4]^n"},
        {"MOP3", 2, 2, 2, "[-pi, pi]^2"},
    };
    return reg;
}

std::string family_name(ProblemFamily f) {
    switch (f) {
        case ProblemFamily::MAN: return "MAN";
        case ProblemFamily::ZDT1: return "ZDT1";
        case ProblemFamily::ZDT2: return "ZDT2";
        case ProblemFamily::ZDT3: return "ZDT3";
        case ProblemFamily::ZDT4: return "ZDT4";
        case ProblemFamily::MOP1: return "MOP1";
        case ProblemFamily::MOP2: return "MOP2";
        case ProblemFamily::MOP3: return "MOP3";
    }
    throw std::invalid_argument("family_name: unknown family");
}

ProblemFamily parse_family(const std::string& name) {
    for (const auto& info : problem_registry())
        if (info.name == name) {
            if (name == "MAN") return ProblemFamily::MAN;
            if (name == "ZDT1") return ProblemFamily::ZDT1;
            if (name == "ZDT2") return ProblemFamily::ZDT2;
            if (name == "ZDT3") return ProblemFamily::ZDT3;
            if (name == "ZDT4") return ProblemFamily::ZDT4;
            if (name == "MOP1") return ProblemFamily::MOP1;
            if (name == "MOP2") return ProblemFamily::MOP2;
            if (name == "MOP3") return ProblemFamily::MOP3;
        }
    if (name.rfind("CEC09", 0) == 0 || name.rfind("UF", 0) == 0)
        throw UnsupportedProblem("problem family '" + name +
                                 "' is reserved but not implemented");
    throw std::invalid_argument("unknown problem family '" + name + "'");
}

ProblemSpec make_problem(const ProblemId& id) {
    if (id.n <= 0) throw std::invalid_argument("make_problem: dimension must be positive");
    switch (id.family) {
        case ProblemFamily::MAN: return make_man(id.n);
        case ProblemFamily::ZDT1: return make_zdt1(id.n);
        case ProblemFamily::ZDT2: return make_zdt2(id.n);
        case ProblemFamily::ZDT3: return make_zdt3(id.n);
        case ProblemFamily::ZDT4: return make_zdt4(id.n);
        case ProblemFamily::MOP1:
            if (id.n != 1) throw std::invalid_argument("MOP1: dimension is fixed to 1");
            return make_mop1();
        case ProblemFamily::MOP2: return make_mop2(id.n);
        case ProblemFamily::MOP3:
            if (id.n != 2) throw std::invalid_argument("MOP3: dimension is fixed to 2");
            return make_mop3();
    }
    throw std::invalid_argument("make_problem: unknown family");
}

ProblemSpec make_problem(const std::string& name, int n) {
    return make_problem(ProblemId{parse_family(name), n});
}

std::vector<Individual> initial_points(const ProblemSpec& p, int count) {
    if (count <= 0) throw std::invalid_argument("initial_points: count must be positive");
    std::vector<Individual> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        Vec x(static_cast<std::size_t>(p.n));
        if (p.name == "MOP1") {
            x[0] = 0.0;
        } else {
            for (int i = 0; i < p.n; ++i) {
                const auto u = static_cast<std::size_t>(i);
                x[u] = 0.5 * (p.lower[u] + p.upper[u]);
            }
        }
        out.emplace_back(p, std::move(x));
        return out;
    }
    for (int j = 1; j <= count; ++j) {
        const double t = static_cast<double>(j - 1) / static_cast<double>(count - 1);
        Vec x(static_cast<std::size_t>(p.n));
        for (int i = 0; i < p.n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            x[u] = p.lower[u] + t * (p.upper[u] - p.lower[u]);
        }
        out.emplace_back(p, p.clamp(std::move(x)));
    }
    return out;
}

}  // namespace moobox
