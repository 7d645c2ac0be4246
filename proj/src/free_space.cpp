#include "lipext/free_space.hpp"

#include "lipext/simplex.hpp"
#include "lipext/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lipext {

namespace {

// Transportation simplex on the complete bipartite graph. Supplies and
// demands are real-valued; Bland-style entering selection keeps degenerate
// pivots from cycling.
struct Transportation {
    std::size_t ns, nt;
    const std::vector<double>& cost; // ns * nt row-major

    std::vector<double> flow;         // per basic cell
    std::vector<std::size_t> cell_i;  // basic cell source
    std::vector<std::size_t> cell_j;  // basic cell sink
    std::vector<double> u, v;         // potentials

    Transportation(std::vector<double> supply, std::vector<double> demand,
                   const std::vector<double>& c)
        : ns(supply.size()), nt(demand.size()), cost(c) {
        // northwest-corner start: exactly ns + nt - 1 basic cells, padding a
        // zero cell whenever supply and demand run out together
        std::size_t i = 0, j = 0;
        double rs = supply[0], rt = demand[0];
        while (true) {
            const double amount = std::min(rs, rt);
            cell_i.push_back(i);
            cell_j.push_back(j);
            flow.push_back(amount);
            rs -= amount;
            rt -= amount;
            if (i + 1 == ns && j + 1 == nt) break;
            if ((rs <= rt || j + 1 == nt) && i + 1 < ns) {
                ++i;
                rs = supply[i];
            } else {
                ++j;
                rt = demand[j];
            }
        }
        solve();
    }

    void compute_potentials() {
        u.assign(ns, 0.0);
        v.assign(nt, 0.0);
        std::vector<char> u_set(ns, 0), v_set(nt, 0);
        std::vector<std::vector<std::size_t>> at_src(ns), at_snk(nt);
        for (std::size_t k = 0; k < flow.size(); ++k) {
            at_src[cell_i[k]].push_back(k);
            at_snk[cell_j[k]].push_back(k);
        }
        // u_0 = 0, propagate over the basic spanning tree
        std::vector<std::pair<char, std::size_t>> stack; // (is_source, node)
        u_set[0] = 1;
        stack.emplace_back(1, 0);
        while (!stack.empty()) {
            const auto [is_source, node] = stack.back();
            stack.pop_back();
            if (is_source) {
                for (std::size_t k : at_src[node]) {
                    if (!v_set[cell_j[k]]) {
                        v[cell_j[k]] = cost[node * nt + cell_j[k]] - u[node];
                        v_set[cell_j[k]] = 1;
                        stack.emplace_back(0, cell_j[k]);
                    }
                }
            } else {
                for (std::size_t k : at_snk[node]) {
                    if (!u_set[cell_i[k]]) {
                        u[cell_i[k]] = cost[cell_i[k] * nt + node] - v[node];
                        u_set[cell_i[k]] = 1;
                        stack.emplace_back(1, cell_i[k]);
                    }
                }
            }
        }
    }

    // path from source i to sink j through basic cells, as cell indices
    std::vector<std::size_t> tree_path(std::size_t from_src, std::size_t to_snk) const {
        std::vector<std::vector<std::size_t>> at_src(ns), at_snk(nt);
        for (std::size_t k = 0; k < flow.size(); ++k) {
            at_src[cell_i[k]].push_back(k);
            at_snk[cell_j[k]].push_back(k);
        }
        // DFS over the spanning tree; nodes 0..ns-1 sources, ns..ns+nt-1 sinks
        const std::size_t target = ns + to_snk;
        std::vector<std::size_t> parent_cell(ns + nt, SIZE_MAX);
        std::vector<char> seen(ns + nt, 0);
        std::vector<std::size_t> stack{from_src};
        seen[from_src] = 1;
        while (!stack.empty()) {
            const std::size_t node = stack.back();
            stack.pop_back();
            if (node == target) break;
            if (node < ns) {
                for (std::size_t k : at_src[node]) {
                    const std::size_t next = ns + cell_j[k];
                    if (!seen[next]) {
                        seen[next] = 1;
                        parent_cell[next] = k;
                        stack.push_back(next);
                    }
                }
            } else {
                for (std::size_t k : at_snk[node - ns]) {
                    const std::size_t next = cell_i[k];
                    if (!seen[next]) {
                        seen[next] = 1;
                        parent_cell[next] = k;
                        stack.push_back(next);
                    }
                }
            }
        }
        std::vector<std::size_t> path;
        std::size_t node = target;
        while (node != from_src) {
            const std::size_t k = parent_cell[node];
            path.push_back(k);
            node = (node == ns + cell_j[k]) ? cell_i[k] : ns + cell_j[k];
        }
        return path; // ordered from the sink end back to the source
    }

    void solve() {
        double max_cost = 0.0;
        for (double c : cost) max_cost = std::max(max_cost, std::abs(c));
        const double eps = 1e-12 * (1.0 + max_cost);
        const std::size_t max_iterations = 2000 + 50 * (ns * nt);

        for (std::size_t iter = 0;; ++iter) {
            if (iter > max_iterations)
                throw std::runtime_error("transportation simplex: iteration limit");
            compute_potentials();

            // Bland: first cell (row-major) with negative reduced cost
            std::size_t enter_i = ns, enter_j = nt;
            for (std::size_t i = 0; i < ns && enter_i == ns; ++i) {
                for (std::size_t j = 0; j < nt; ++j) {
                    if (cost[i * nt + j] - u[i] - v[j] < -eps) {
                        enter_i = i;
                        enter_j = j;
                        break;
                    }
                }
            }
            if (enter_i == ns) return; // optimal

            // entering cell closes a unique cycle with the tree path; flows
            // along the path alternate -theta, +theta starting at the sink end
            const auto path = tree_path(enter_i, enter_j);
            double theta = std::numeric_limits<double>::infinity();
            std::size_t leaving = SIZE_MAX;
            for (std::size_t p = 0; p < path.size(); p += 2) {
                const std::size_t k = path[p];
                if (flow[k] < theta - eps ||
                    (flow[k] < theta + eps &&
                     (leaving == SIZE_MAX ||
                      std::make_pair(cell_i[k], cell_j[k]) <
                          std::make_pair(cell_i[leaving], cell_j[leaving])))) {
                    theta = flow[k];
                    leaving = k;
                }
            }
            for (std::size_t p = 0; p < path.size(); ++p) {
                if (p % 2 == 0)
                    flow[path[p]] -= theta;
                else
                    flow[path[p]] += theta;
            }
            cell_i[leaving] = enter_i;
            cell_j[leaving] = enter_j;
            flow[leaving] = theta;
        }
    }

    double total_cost() const {
        double total = 0.0;
        for (std::size_t k = 0; k < flow.size(); ++k)
            total += flow[k] * cost[cell_i[k] * nt + cell_j[k]];
        return total;
    }
};

void check_balanced(const std::vector<double>& coefficients) {
    double sum = 0.0, mass = 0.0;
    for (double a : coefficients) {
        sum += a;
        mass += std::abs(a);
    }
    if (std::abs(sum) > tol::chain_balance_rel * std::max(1.0, mass))
        throw std::invalid_argument("chain is not balanced");
}

} // namespace

KrResult kr_norm(const FiniteMetricSpace& space, const BalancedChain& chain) {
    if (chain.coefficients.size() != space.size())
        throw std::invalid_argument("kr_norm: coefficient count must match space size");
    check_balanced(chain.coefficients);

    KrResult result;
    double pos_mass = 0.0, neg_mass = 0.0;
    std::vector<double> supply, demand;
    for (PointId m = 0; m < space.size(); ++m) {
        const double a = chain.coefficients[m];
        if (a > 0.0) {
            result.sources.push_back(m);
            supply.push_back(a);
            pos_mass += a;
        } else if (a < 0.0) {
            result.sinks.push_back(m);
            demand.push_back(-a);
            neg_mass += -a;
        }
    }
    if (result.sources.empty() || result.sinks.empty()) return result; // zero chain

    // make the residual balance exact
    const double rescale = pos_mass / neg_mass;
    for (double& d : demand) d *= rescale;

    std::vector<double> cost(supply.size() * demand.size());
    for (std::size_t i = 0; i < supply.size(); ++i)
        for (std::size_t j = 0; j < demand.size(); ++j)
            cost[i * demand.size() + j] = space.dist(result.sources[i], result.sinks[j]);

    Transportation transport(supply, demand, cost);
    result.value = transport.total_cost();
    result.source_potentials = transport.u;
    result.sink_potentials = transport.v;

    // the optimal potentials must reproduce the primal value (complementary
    // slackness); a gap here means the pivoting went wrong
    double dual_value = 0.0;
    for (std::size_t i = 0; i < supply.size(); ++i) dual_value += supply[i] * transport.u[i];
    for (std::size_t j = 0; j < demand.size(); ++j) dual_value += demand[j] * transport.v[j];
    const double scale = 1.0 + std::abs(result.value) + pos_mass * space.diameter();
    if (std::abs(dual_value - result.value) > 1e-9 * scale)
        throw std::runtime_error("kr_norm: primal/dual mismatch in the transport solve");
    for (std::size_t k = 0; k < transport.flow.size(); ++k) {
        if (transport.flow[k] > 0.0) {
            result.plan.flows.push_back({result.sources[transport.cell_i[k]],
                                         result.sinks[transport.cell_j[k]], transport.flow[k]});
        }
    }
    result.plan.cost = result.value;
    return result;
}

std::vector<double> kr_extremal(const FiniteMetricSpace& space, const KrResult& result,
                                PointId basepoint) {
    std::vector<double> f(space.size(), 0.0);
    if (result.sinks.empty()) return f;
    // infimal convolution over the sinks of the optimal potentials; this is
    // 1-Lipschitz and attains the transport value on the chain
    for (PointId m = 0; m < space.size(); ++m) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < result.sinks.size(); ++j)
            best = std::min(best, -result.sink_potentials[j] + space.dist(m, result.sinks[j]));
        f[m] = best;
    }
    const double offset = f[basepoint];
    for (double& v : f) v -= offset;
    return f;
}

KrDualResult kr_norm_dual(const FiniteMetricSpace& space, const BalancedChain& chain,
                          PointId basepoint) {
    if (chain.coefficients.size() != space.size())
        throw std::invalid_argument("kr_norm_dual: coefficient count must match space size");
    check_balanced(chain.coefficients);
    const std::size_t n = space.size();

    // maximize sum a_i g_i over g >= 0 with g_i - g_j <= d(i,j); the balanced
    // objective is shift-invariant, so the nonnegativity gauge costs nothing,
    // and a box g_i <= 2 diam keeps the polytope bounded
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            std::vector<double> row(n, 0.0);
            row[i] = 1.0;
            row[j] = -1.0;
            a.push_back(std::move(row));
            b.push_back(space.dist(i, j));
        }
    }
    const double box = 2.0 * std::max(space.diameter(), 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        row[i] = 1.0;
        a.push_back(std::move(row));
        b.push_back(box);
    }

    const auto solution = simplex_maximize(a, b, chain.coefficients);
    if (!solution) throw std::runtime_error("kr_norm_dual: unbounded LP (unbalanced chain?)");

    KrDualResult result;
    result.value = solution->value;
    result.extremal = solution->x;
    const double offset = result.extremal[basepoint];
    for (double& v : result.extremal) v -= offset;
    return result;
}

bool delta_isometry_check(const FiniteMetricSpace& space, double tolerance) {
    for (PointId a = 0; a < space.size(); ++a) {
        for (PointId b = a + 1; b < space.size(); ++b) {
            BalancedChain chain{std::vector<double>(space.size(), 0.0)};
            chain.coefficients[a] = 1.0;
            chain.coefficients[b] = -1.0;
            if (std::abs(kr_norm(space, chain).value - space.dist(a, b)) > tolerance) return false;
        }
    }
    return true;
}

} // namespace lipext
