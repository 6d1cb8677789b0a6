#pragma once

// Small hand-built problems shared by the test files.

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "moobox/types.hpp"

namespace testsup {

using moobox::Individual;
using moobox::Matrix;
using moobox::ProblemSpec;
using moobox::Vec;

// Assembles a ProblemSpec from explicit callables.
inline ProblemSpec custom(std::string name, int n, int m, Vec lo, Vec hi,
                          std::function<Vec(const Vec&)> eval,
                          std::function<Matrix(const Vec&)> jac) {
    ProblemSpec p;
    p.name = std::move(name);
    p.n = n;
    p.m = m;
    p.lower = std::move(lo);
    p.upper = std::move(hi);
    p.eval = std::move(eval);
    p.jac = std::move(jac);
    return p;
}

// f(x) = x with m = n, so a test can state objective vectors directly as
// decision vectors.
inline ProblemSpec identity_problem(int n, double lo = -1e6, double hi = 1e6) {
    return custom("identity", n, n, Vec((std::size_t)n, lo), Vec((std::size_t)n, hi),
                  [](const Vec& x) { return x; },
                  [n](const Vec&) {
                      Matrix J((std::size_t)n, (std::size_t)n);
                      for (std::size_t i = 0; i < (std::size_t)n; ++i) J(i, i) = 1.0;
                      return J;
                  });
}

// One variable, one convex objective f = x^2.
inline ProblemSpec parabola(double lo = -100.0, double hi = 100.0) {
    return custom("parabola", 1, 1, {lo}, {hi},
                  [](const Vec& x) { return Vec{x[0] * x[0]}; },
                  [](const Vec& x) {
                      Matrix J(1, 1);
                      J(0, 0) = 2.0 * x[0];
                      return J;
                  });
}

// The classical one-variable biobjective toy f1 = x^2, f2 = (x - 2)^2 whose
// efficient set is [0, 2].
inline ProblemSpec parabola_pair(double lo = -10.0, double hi = 10.0) {
    return custom("parabola-pair", 1, 2, {lo}, {hi},
                  [](const Vec& x) {
                      return Vec{x[0] * x[0], (x[0] - 2.0) * (x[0] - 2.0)};
                  },
                  [](const Vec& x) {
                      Matrix J(2, 1);
                      J(0, 0) = 2.0 * x[0];
                      J(1, 0) = 2.0 * (x[0] - 2.0);
                      return J;
                  });
}

// Both objectives equal x^2: every vector subproblem is stationary exactly
// where the scalar one is.
inline ProblemSpec twin_parabola(double lo = -10.0, double hi = 10.0) {
    return custom("twin-parabola", 1, 2, {lo}, {hi},
                  [](const Vec& x) { return Vec{x[0] * x[0], x[0] * x[0]}; },
                  [](const Vec& x) {
                      Matrix J(2, 1);
                      J(0, 0) = 2.0 * x[0];
                      J(1, 0) = 2.0 * x[0];
                      return J;
                  });
}

// Linear objectives f_j = g_j . x with a constant Jacobian; handy because the
// direction subproblem then has a known value independent of the base point.
inline ProblemSpec linear_problem(std::vector<Vec> gradients, Vec lo, Vec hi) {
    const std::size_t n = lo.size();
    const std::size_t m = gradients.size();
    Matrix J(m, n);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) J(j, i) = gradients[j][i];
    return custom("linear", (int)n, (int)m, std::move(lo), std::move(hi),
                  [g = std::move(gradients)](const Vec& x) {
                      Vec f(g.size(), 0.0);
                      for (std::size_t j = 0; j < g.size(); ++j)
                          for (std::size_t i = 0; i < x.size(); ++i) f[j] += g[j][i] * x[i];
                      return f;
                  },
                  [J](const Vec&) { return J; });
}

inline std::vector<Individual> points_of(const ProblemSpec& p, const std::vector<Vec>& xs) {
    std::vector<Individual> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.emplace_back(p, x);
    return out;
}

}  // namespace testsup
