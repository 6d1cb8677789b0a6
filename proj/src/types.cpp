#include "moobox/types.hpp"

#include <cmath>

namespace moobox {

void validate_problem(const ProblemSpec& p) {
    if (p.n <= 0) throw std::invalid_argument("ProblemSpec: n must be positive");
    if (p.m <= 0) throw std::invalid_argument("ProblemSpec: m must be positive");
    if (p.lower.size() != static_cast<std::size_t>(p.n) ||
        p.upper.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("ProblemSpec: bound vectors have wrong length");
    for (int i = 0; i < p.n; ++i) {
        if (!std::isfinite(p.lower[i]) || !std::isfinite(p.upper[i]))
            throw std::invalid_argument("ProblemSpec: bounds must be finite");
        if (p.lower[i] > p.upper[i])
            throw std::invalid_argument("ProblemSpec: lower bound exceeds upper bound");
    }
    if (!p.eval) throw std::invalid_argument("ProblemSpec: missing objective callable");
    if (!p.jac) throw std::invalid_argument("ProblemSpec: missing Jacobian callable");
}

}  // namespace moobox
