#include "lipext/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace lipext {

// Dense tableau with Bland's rule on both the entering column and the leaving
// row, so degenerate pivots cannot cycle. Fine for the oracle-scale problems
// this backs (tens of variables, hundreds of constraints).
std::optional<LpSolution> simplex_maximize(const std::vector<std::vector<double>>& a,
                                           const std::vector<double>& b,
                                           const std::vector<double>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("simplex: ragged constraint matrix");
    if (b.size() != m) throw std::invalid_argument("simplex: rhs size mismatch");
    for (double v : b)
        if (v < 0.0) throw std::invalid_argument("simplex: needs b >= 0 (slack basis start)");

    double scale = 1.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    const double eps = 1e-11 * scale;

    const std::size_t cols = n + m + 1;
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1.0;
        t[i][cols - 1] = b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

    const std::size_t max_iterations = 50000 + 200 * (m + n);
    for (std::size_t iter = 0;; ++iter) {
        if (iter > max_iterations) throw std::runtime_error("simplex: iteration limit");

        std::size_t entering = cols - 1;
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            if (t[m][j] < -eps) {
                entering = j;
                break;
            }
        }
        if (entering == cols - 1) break; // optimal

        std::size_t leaving = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][entering] > eps) {
                const double ratio = t[i][cols - 1] / t[i][entering];
                if (leaving == m || ratio < best_ratio - eps ||
                    (ratio < best_ratio + eps && basis[i] < basis[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leaving == m) return std::nullopt; // unbounded

        const double pivot = t[leaving][entering];
        for (double& v : t[leaving]) v /= pivot;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leaving) continue;
            const double factor = t[i][entering];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leaving][j];
        }
        basis[leaving] = entering;
    }

    LpSolution sol;
    sol.value = t[m][cols - 1];
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = t[i][cols - 1];
    return sol;
}

} // namespace lipext
