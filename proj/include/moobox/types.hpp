#pragma once

#include <cassert>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/// Core vocabulary shared by every part of the library: dense vectors and
/// matrices, the problem description, feasible evaluated points, and
/// objective subsets.
namespace moobox {

using Vec = std::vector<double>;

/// Dense row-major matrix, sized once and indexed with operator().
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) {
        assert(r < rows && c < cols);
        return data[r * cols + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        assert(r < rows && c < cols);
        return data[r * cols + c];
    }

    /// Matrix-vector product; v must have `cols` entries.
    Vec mul(const Vec& v) const {
        assert(v.size() == cols);
        Vec out(rows, 0.0);
        for (std::size_t r = 0; r < rows; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < cols; ++c) acc += data[r * cols + c] * v[c];
            out[r] = acc;
        }
        return out;
    }
};

/// Raised when a numeric routine cannot continue (non-finite data, pivot
/// breakdown, iteration caps). Carries only a message; callers that can
/// recover attach their own context.
class NumericFailure : public std::runtime_error {
  public:
    explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

/// A box-constrained multi-objective problem. Objectives and Jacobian are
/// analytic callables; there is no finite-difference fallback.
struct ProblemSpec {
    std::string name;
    int n = 0;  ///< decision dimension
    int m = 0;  ///< number of objectives
    Vec lower;  ///< componentwise lower bounds, finite
    Vec upper;  ///< componentwise upper bounds, finite, lower <= upper
    std::function<Vec(const Vec&)> eval;    ///< x -> (f_1(x), ..., f_m(x))
    std::function<Matrix(const Vec&)> jac;  ///< x -> m x n Jacobian, row j = grad f_j

    /// Optional marker for points where derivatives degenerate; used by
    /// diagnostics and tests, never by the solvers themselves.
    std::function<bool(const Vec&)> near_singularity;

    /// Exact componentwise bound check, no tolerance.
    bool in_bounds(const Vec& x) const {
        if (x.size() != static_cast<std::size_t>(n)) return false;
        for (int i = 0; i < n; ++i)
            if (!(lower[i] <= x[i] && x[i] <= upper[i])) return false;
        return true;
    }

    /// Componentwise projection onto the box.
    Vec clamp(Vec x) const {
        for (int i = 0; i < n; ++i) {
            if (x[i] < lower[i]) x[i] = lower[i];
            if (x[i] > upper[i]) x[i] = upper[i];
        }
        return x;
    }
};

/// Sanity-checks a ProblemSpec's shape fields. Throws std::invalid_argument.
void validate_problem(const ProblemSpec& p);

/// A feasible decision vector with its objective vector cached at
/// construction. Infeasible input is rejected, never clipped; the cache is
/// immutable afterwards, so fx() is always exactly eval(x()).
class Individual {
  public:
    /// Evaluates the problem at x. Throws std::invalid_argument if x lies
    /// outside the box.
    Individual(const ProblemSpec& p, Vec x) : x_(std::move(x)) {
        require_feasible(p, x_);
        fx_ = p.eval(x_);
    }

    /// Adopts a precomputed objective vector. The caller guarantees fx was
    /// evaluated at exactly this x; feasibility is still enforced.
    Individual(const ProblemSpec& p, Vec x, Vec fx) : x_(std::move(x)), fx_(std::move(fx)) {
        require_feasible(p, x_);
        if (fx_.size() != static_cast<std::size_t>(p.m))
            throw std::invalid_argument("Individual: objective vector has wrong length");
    }

    const Vec& x() const { return x_; }
    const Vec& fx() const { return fx_; }

    /// Decision-space identity: exact componentwise equality of x.
    bool same_decision(const Individual& o) const { return x_ == o.x_; }

  private:
    static void require_feasible(const ProblemSpec& p, const Vec& x) {
        if (x.size() != static_cast<std::size_t>(p.n))
            throw std::invalid_argument("Individual: decision vector has wrong length");
        if (!p.in_bounds(x))
            throw std::invalid_argument("Individual: decision vector violates bounds");
    }

    Vec x_;
    Vec fx_;
};

/// A nonempty, strictly increasing set of objective indices (0-based).
/// Passing a subset to an operation restricts comparisons to those
/// coordinates of the objective vector.
class ObjectiveSubset {
  public:
    /// Throws std::invalid_argument unless indices are nonempty, strictly
    /// increasing and nonnegative.
    explicit ObjectiveSubset(std::vector<int> indices) : idx_(std::move(indices)) {
        if (idx_.empty()) throw std::invalid_argument("ObjectiveSubset: empty index set");
        for (std::size_t k = 0; k < idx_.size(); ++k) {
            if (idx_[k] < 0) throw std::invalid_argument("ObjectiveSubset: negative index");
            if (k > 0 && idx_[k] <= idx_[k - 1])
                throw std::invalid_argument("ObjectiveSubset: indices must be strictly increasing");
        }
    }

    /// All m objectives: {0, 1, ..., m-1}.
    static ObjectiveSubset full(int m) {
        std::vector<int> v(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) v[static_cast<std::size_t>(j)] = j;
        return ObjectiveSubset(std::move(v));
    }

    static ObjectiveSubset single(int j) { return ObjectiveSubset({j}); }

    std::size_t size() const { return idx_.size(); }
    int operator[](std::size_t k) const { return idx_[k]; }
    const std::vector<int>& indices() const { return idx_; }

    /// Throws std::invalid_argument if any index is >= m.
    void check_against(int m) const {
        if (idx_.back() >= m)
            throw std::invalid_argument("ObjectiveSubset: index exceeds objective count");
    }

    /// Extracts the selected coordinates of a full objective vector.
    Vec project(const Vec& f) const {
        Vec out(idx_.size());
        for (std::size_t k = 0; k < idx_.size(); ++k)
            out[k] = f[static_cast<std::size_t>(idx_[k])];
        return out;
    }

    bool operator==(const ObjectiveSubset& o) const { return idx_ == o.idx_; }

  private:
    std::vector<int> idx_;
};

/// Result of a descent-direction subproblem: the optimal value theta (always
/// <= 0) and the minimizing direction.
struct DirectionResult {
    double theta = 0.0;
    Vec d;
};

}  // namespace moobox
