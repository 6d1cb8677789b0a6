#include "moobox/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace moobox {

namespace {

constexpr double kTolPivot = 1e-10;
constexpr double kTolFeas = 1e-9;
constexpr double kTolDegenerate = 1e-12;
constexpr int kBlandTrigger = 50;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Gaussian elimination with partial pivoting on a copy of M.
Vec solve_dense(Matrix M, Vec rhs) {
    const std::size_t n = M.rows;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::fabs(M(r, k)) > std::fabs(M(piv, k))) piv = r;
        if (std::fabs(M(piv, k)) < 1e-14)
            throw NumericFailure("lp: singular basis matrix");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(M(k, c), M(piv, c));
            std::swap(rhs[k], rhs[piv]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = M(r, k) / M(k, k);
            if (f == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) M(r, c) -= f * M(k, c);
            rhs[r] -= f * rhs[k];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double acc = rhs[k];
        for (std::size_t c = k + 1; c < n; ++c) acc -= M(k, c) * x[c];
        x[k] = acc / M(k, k);
    }
    return x;
}

enum class VarState { Basic, AtLower, AtUpper };

// Variable layout: [0, p) structural, [p, p+q) slack, [p+q, ...) artificial.
struct Tableau {
    std::size_t p = 0;   // structural count
    std::size_t q = 0;   // row count
    std::vector<Vec> col;  // equality-form column per variable, length q
    Vec lo, hi;            // per-variable bounds (slack/artificial hi = +inf)
    Vec cost;              // current-phase costs
    std::vector<VarState> state;
    std::vector<std::size_t> basis;  // q entries
    Vec b;

    std::size_t nvars() const { return col.size(); }

    // Nonbasic variables sit exactly on one of their bounds.
    double nonbasic_value(std::size_t j) const {
        return state[j] == VarState::AtUpper ? hi[j] : lo[j];
    }

    Vec basic_values() const {
        Vec rhs = b;
        for (std::size_t j = 0; j < nvars(); ++j) {
            if (state[j] == VarState::Basic) continue;
            const double v = nonbasic_value(j);
            if (v == 0.0) continue;
            for (std::size_t r = 0; r < q; ++r) rhs[r] -= col[j][r] * v;
        }
        Matrix B(q, q);
        for (std::size_t k = 0; k < q; ++k)
            for (std::size_t r = 0; r < q; ++r) B(r, k) = col[basis[k]][r];
        return q == 0 ? Vec{} : solve_dense(B, rhs);
    }

    Vec duals() const {
        Matrix Bt(q, q);
        Vec cb(q);
        for (std::size_t k = 0; k < q; ++k) {
            cb[k] = cost[basis[k]];
            for (std::size_t r = 0; r < q; ++r) Bt(k, r) = col[basis[k]][r];
        }
        return q == 0 ? Vec{} : solve_dense(Bt, cb);
    }
};

struct PivotOutcome {
    bool optimal = false;
    bool unbounded = false;
    bool degenerate = false;
};

// One simplex iteration on the current phase costs. Entering rule is Dantzig
// unless `bland` forces smallest-index selection.
PivotOutcome iterate(Tableau& t, bool bland) {
    PivotOutcome out;
    const Vec y = t.duals();
    Vec xb = t.basic_values();

    std::size_t enter = t.nvars();
    double best_score = kTolPivot;
    int enter_dir = 0;
    for (std::size_t j = 0; j < t.nvars(); ++j) {
        if (t.state[j] == VarState::Basic) continue;
        if (t.lo[j] == t.hi[j]) continue;  // fixed variable, never enters
        double rc = t.cost[j];
        for (std::size_t r = 0; r < t.q; ++r) rc -= y[r] * t.col[j][r];
        int dir = 0;
        double score = 0.0;
        if (t.state[j] == VarState::AtLower && rc < -kTolPivot) {
            dir = +1;
            score = -rc;
        } else if (t.state[j] == VarState::AtUpper && rc > kTolPivot) {
            dir = -1;
            score = rc;
        } else {
            continue;
        }
        if (bland) {
            enter = j;
            enter_dir = dir;
            break;
        }
        if (score > best_score) {
            best_score = score;
            enter = j;
            enter_dir = dir;
        }
    }
    if (enter == t.nvars()) {
        out.optimal = true;
        return out;
    }

    // Ray through the basis: x_B(t) = x_B - t * dir * u.
    Vec u;
    if (t.q > 0) {
        Matrix B(t.q, t.q);
        for (std::size_t k = 0; k < t.q; ++k)
            for (std::size_t r = 0; r < t.q; ++r) B(r, k) = t.col[t.basis[k]][r];
        u = solve_dense(B, t.col[enter]);
    }

    double tmax = t.hi[enter] - t.lo[enter];  // own-bound flip distance
    std::size_t leave = t.q;                  // q means bound flip
    int leave_to = 0;                         // -1 hits lower, +1 hits upper
    for (std::size_t k = 0; k < t.q; ++k) {
        const double rate = enter_dir * u[k];  // basic k decreases at this rate
        const std::size_t v = t.basis[k];
        double cand = kInf;
        int to = 0;
        if (rate > kTolPivot) {
            if (t.lo[v] > -kInf) {
                cand = (xb[k] - t.lo[v]) / rate;
                to = -1;
            }
        } else if (rate < -kTolPivot) {
            if (t.hi[v] < kInf) {
                cand = (xb[k] - t.hi[v]) / rate;
                to = +1;
            }
        } else {
            continue;
        }
        if (cand < 0.0) cand = 0.0;  // round-off guard
        // Strict improvement, ties broken toward the smallest variable index
        // so Bland's rule stays cycle-free.
        if (cand < tmax - kTolDegenerate ||
            (cand < tmax + kTolDegenerate && leave < t.q && v < t.basis[leave])) {
            tmax = cand;
            leave = k;
            leave_to = to;
        } else if (cand < tmax + kTolDegenerate && leave == t.q && cand < tmax) {
            tmax = cand;
            leave = k;
            leave_to = to;
        }
    }

    if (tmax == kInf) {
        out.unbounded = true;
        return out;
    }
    out.degenerate = tmax <= kTolDegenerate;

    if (leave == t.q) {
        // The entering variable runs all the way to its other bound.
        t.state[enter] =
            t.state[enter] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
        return out;
    }

    const std::size_t gone = t.basis[leave];
    t.state[gone] = leave_to < 0 ? VarState::AtLower : VarState::AtUpper;
    t.basis[leave] = enter;
    t.state[enter] = VarState::Basic;
    return out;
}

double phase_objective(const Tableau& t) {
    Vec xb = t.basic_values();
    double obj = 0.0;
    for (std::size_t j = 0; j < t.nvars(); ++j)
        if (t.state[j] != VarState::Basic) obj += t.cost[j] * t.nonbasic_value(j);
    for (std::size_t k = 0; k < t.q; ++k) obj += t.cost[t.basis[k]] * xb[k];
    return obj;
}

// Runs simplex iterations on the current costs until optimality.
void optimize(Tableau& t, const char* phase, Vec (*extract)(const Tableau&), LpStatus* unbounded_flag) {
    const int cap = 200 + 40 * static_cast<int>(t.nvars());
    int degenerate_streak = 0;
    for (int it = 0; it < cap; ++it) {
        const bool bland = degenerate_streak >= kBlandTrigger;
        const PivotOutcome step = iterate(t, bland);
        if (step.optimal) return;
        if (step.unbounded) {
            if (unbounded_flag) *unbounded_flag = LpStatus::Unbounded;
            return;
        }
        degenerate_streak = step.degenerate ? degenerate_streak + 1 : 0;
    }
    Vec w = extract ? extract(t) : Vec{};
    throw LpIterationLimit(std::string("lp: pivot cap exceeded in ") + phase, std::move(w),
                           phase_objective(t), false);
}

Vec extract_structural(const Tableau& t) {
    Vec xb = t.basic_values();
    Vec w(t.p, 0.0);
    for (std::size_t j = 0; j < t.p; ++j)
        if (t.state[j] != VarState::Basic) w[j] = t.nonbasic_value(j);
    for (std::size_t k = 0; k < t.q; ++k)
        if (t.basis[k] < t.p) w[t.basis[k]] = xb[k];
    return w;
}

void validate(const BoundedLp& lp) {
    const std::size_t p = lp.c.size();
    const std::size_t q = lp.b.size();
    if (lp.lo.size() != p || lp.hi.size() != p)
        throw std::invalid_argument("lp: bound vectors must match c in length");
    if (q > 0 && (lp.A.rows != q || lp.A.cols != p))
        throw std::invalid_argument("lp: A must be |b| x |c|");
    for (std::size_t j = 0; j < p; ++j) {
        if (!std::isfinite(lp.lo[j]) || !std::isfinite(lp.hi[j]))
            throw std::invalid_argument("lp: variable bounds must be finite");
        if (lp.lo[j] > lp.hi[j]) throw std::invalid_argument("lp: lo exceeds hi");
        if (!std::isfinite(lp.c[j])) throw std::invalid_argument("lp: cost must be finite");
    }
    for (double v : lp.b)
        if (!std::isfinite(v)) throw std::invalid_argument("lp: rhs must be finite");
    for (double v : lp.A.data)
        if (!std::isfinite(v)) throw std::invalid_argument("lp: matrix must be finite");
}

}  // namespace

LpSolution solve_bounded_lp(const BoundedLp& lp) {
    validate(lp);
    const std::size_t p = lp.c.size();
    const std::size_t q = lp.b.size();

    Tableau t;
    t.p = p;
    t.q = q;
    t.b = lp.b;
    t.basis.resize(q);

    for (std::size_t j = 0; j < p; ++j) {
        Vec c(q, 0.0);
        for (std::size_t r = 0; r < q; ++r) c[r] = lp.A(r, j);
        t.col.push_back(std::move(c));
        t.lo.push_back(lp.lo[j]);
        t.hi.push_back(lp.hi[j]);
        t.state.push_back(VarState::AtLower);
    }
    for (std::size_t r = 0; r < q; ++r) {  // slack per row
        Vec c(q, 0.0);
        c[r] = 1.0;
        t.col.push_back(std::move(c));
        t.lo.push_back(0.0);
        t.hi.push_back(kInf);
        t.state.push_back(VarState::AtLower);
    }

    // Residuals with structurals at their lower bounds decide which rows need
    // an artificial variable to start feasibly.
    Vec resid = lp.b;
    for (std::size_t r = 0; r < q; ++r)
        for (std::size_t j = 0; j < p; ++j) resid[r] -= lp.A(r, j) * lp.lo[j];

    std::vector<std::size_t> artificials;
    for (std::size_t r = 0; r < q; ++r) {
        if (resid[r] >= 0.0) {
            t.basis[r] = p + r;  // slack carries the row
            t.state[p + r] = VarState::Basic;
        } else {
            Vec c(q, 0.0);
            c[r] = -1.0;
            t.col.push_back(std::move(c));
            t.lo.push_back(0.0);
            t.hi.push_back(kInf);
            t.state.push_back(VarState::Basic);
            t.basis[r] = t.nvars() - 1;
            artificials.push_back(t.nvars() - 1);
        }
    }

    if (!artificials.empty()) {
        t.cost.assign(t.nvars(), 0.0);
        for (std::size_t a : artificials) t.cost[a] = 1.0;
        optimize(t, "phase 1", &extract_structural, nullptr);
        if (phase_objective(t) > kTolFeas) return {LpStatus::Infeasible, {}, 0.0};
        for (std::size_t a : artificials) t.hi[a] = 0.0;  // freeze at zero for phase 2
    }

    t.cost.assign(t.nvars(), 0.0);
    for (std::size_t j = 0; j < p; ++j) t.cost[j] = lp.c[j];
    LpStatus status = LpStatus::Optimal;
    optimize(t, "phase 2", &extract_structural, &status);
    if (status == LpStatus::Unbounded) return {LpStatus::Unbounded, {}, 0.0};

    Vec w = extract_structural(t);
    for (std::size_t j = 0; j < p; ++j) w[j] = std::clamp(w[j], lp.lo[j], lp.hi[j]);
    double obj = 0.0;
    for (std::size_t j = 0; j < p; ++j) obj += lp.c[j] * w[j];
    return {LpStatus::Optimal, std::move(w), obj};
}

DirectionResult solve_minimax_box(const Matrix& G, const Vec& lo, const Vec& hi) {
    const std::size_t k = G.rows;
    const std::size_t p = G.cols;
    if (k == 0) throw std::invalid_argument("solve_minimax_box: no gradient rows");
    if (lo.size() != p || hi.size() != p)
        throw std::invalid_argument("solve_minimax_box: bound length mismatch");
    for (std::size_t i = 0; i < p; ++i)
        if (!(lo[i] <= 0.0 && 0.0 <= hi[i]))
            throw std::invalid_argument("solve_minimax_box: box must contain the origin");
    for (double v : G.data)
        if (!std::isfinite(v)) throw NumericFailure("solve_minimax_box: non-finite gradient");

    double theta_cap = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        double col_max = 0.0;
        for (std::size_t j = 0; j < k; ++j) col_max = std::max(col_max, std::fabs(G(j, i)));
        theta_cap += col_max * std::max(std::fabs(lo[i]), std::fabs(hi[i]));
    }

    BoundedLp lp;
    lp.c.assign(p + 1, 0.0);
    lp.c[p] = 1.0;  // minimize beta
    lp.A = Matrix(k, p + 1);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < p; ++i) lp.A(j, i) = G(j, i);
        lp.A(j, p) = -1.0;
    }
    lp.b.assign(k, 0.0);
    lp.lo = lo;
    lp.hi = hi;
    lp.lo.push_back(-theta_cap);
    lp.hi.push_back(0.0);

    const LpSolution sol = solve_bounded_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw NumericFailure("solve_minimax_box: direction subproblem not solved to optimality");

    DirectionResult res;
    res.theta = sol.w[p];
    res.d.assign(sol.w.begin(), sol.w.begin() + static_cast<std::ptrdiff_t>(p));
    return res;
}

}  // namespace moobox
