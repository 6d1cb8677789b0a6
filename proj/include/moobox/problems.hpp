#pragma once

#include <string>
#include <vector>

#include "moobox/types.hpp"

/// Built-in benchmark problems, all box-constrained with analytic Jacobians.
namespace moobox {

enum class ProblemFamily { MAN, ZDT1, ZDT2, ZDT3, ZDT4, MOP1, MOP2, MOP3 };

struct ProblemId {
    ProblemFamily family;
    int n;
};

/// Registry metadata for one problem family.
struct ProblemInfo {
    std::string name;
    int objectives;
    int fixed_n;   ///< 0 when the dimension is free
    int min_n;     ///< smallest supported dimension
    std::string bounds;  ///< human-readable bound description
};

/// Raised for recognized-but-unsupported problem identifiers.
class UnsupportedProblem : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

const std::vector<ProblemInfo>& problem_registry();

std::string family_name(ProblemFamily f);

/// Parses a registry name ("MAN", "ZDT3", ...). Names of the CEC09 family
/// are reserved and raise UnsupportedProblem; anything else unknown raises
/// std::invalid_argument.
ProblemFamily parse_family(const std::string& name);

/// Instantiates a problem at dimension n. Dimension restrictions (MOP1 is
/// 1-D, MOP3 is 2-D, ZDT needs n >= 2) are enforced with
/// std::invalid_argument.
ProblemSpec make_problem(const ProblemId& id);
ProblemSpec make_problem(const std::string& name, int n);

/// Evenly spaced points on the diagonal of the box:
/// x(j) = lower + ((j-1)/(count-1)) * (upper - lower), j = 1..count.
/// A single requested point is the box midpoint, except MOP1 whose
/// conventional start is x = 0.
std::vector<Individual> initial_points(const ProblemSpec& p, int count);

}  // namespace moobox
