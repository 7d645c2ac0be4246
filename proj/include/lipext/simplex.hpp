#pragma once

#include <optional>
#include <vector>

namespace lipext {

// Dense tableau simplex for oracle-scale linear programs:
//   maximize c.x  subject to  A x <= b,  x >= 0,
// starting from the slack basis (requires b >= 0). Bland's rule, so it
// terminates on degenerate instances. Returns nullopt when unbounded.
struct LpSolution {
    double value = 0.0;
    std::vector<double> x;
};

std::optional<LpSolution> simplex_maximize(const std::vector<std::vector<double>>& a,
                                           const std::vector<double>& b,
                                           const std::vector<double>& c);

} // namespace lipext
