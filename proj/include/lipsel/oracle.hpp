#pragma once

// Exact optimal Lipschitz selection by linear programming.
//
// Variables are f(x) in the plane for every point plus lambda. Membership is
// the half-plane description of F(x); each pair contributes
// +-(f_i(x) - f_i(y)) <= lambda rho(x,y), and pairs at distance zero are tied
// by equalities. Larger instances add pair constraints lazily.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lipsel/geometry.hpp"
#include "lipsel/lp.hpp"
#include "lipsel/set_map.hpp"

namespace lipsel {

enum class OracleStatus { optimal, infeasible };

inline const char* to_string(OracleStatus s) {
    return s == OracleStatus::optimal ? "optimal" : "infeasible";
}

struct OracleResult {
    OracleStatus status = OracleStatus::infeasible;
    double lambda_star = inf;
    Selection selection;
};

/// Instances with more points than this start from membership constraints
/// only and add violated pair constraints in rounds.
inline constexpr std::size_t oracle_dense_limit = 12;

namespace detail {

struct PairCut {
    std::size_t x, y;
};

inline void add_pair_rows(lp::LinearProgram& p, std::size_t n, std::size_t x, std::size_t y,
                          double rho) {
    const std::size_t L = 2 * n;
    for (std::size_t c = 0; c < 2; ++c)
        for (double sign : {1.0, -1.0}) {
            std::vector<double> row(p.variables, 0.0);
            row[2 * x + c] = sign;
            row[2 * y + c] = -sign;
            row[L] = -rho;
            p.add(std::move(row), 0.0);
        }
}

} // namespace detail

inline OracleResult optimal_selection(const SetMap& F) {
    OracleResult res;
    const std::size_t n = F.size();
    if (n == 0)
        throw input_error("empty instance");
    if (!F.all_nonempty())
        return res;

    lp::LinearProgram base;
    base.variables = 2 * n + 1;
    base.objective.assign(base.variables, 0.0);
    base.objective[2 * n] = 1.0;
    {
        std::vector<double> row(base.variables, 0.0);
        row[2 * n] = -1.0;
        base.add(std::move(row), 0.0); // lambda >= 0
    }
    for (std::size_t x = 0; x < n; ++x) {
        const ConvexSet fx = F[x].planar();
        for (const auto& h : fx.halfplanes()) {
            std::vector<double> row(base.variables, 0.0);
            row[2 * x] = h.n.x1;
            row[2 * x + 1] = h.n.x2;
            base.add(std::move(row), -h.alpha);
        }
    }

    const bool dense = n <= oracle_dense_limit;
    std::vector<std::vector<bool>> included(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (dense || F.m(x, y) == 0.0) {
                detail::add_pair_rows(base, n, x, y, F.m(x, y));
                included[x][y] = true;
            }

    for (int round = 0; round < 200; ++round) {
        const auto sol = lp::solve(base);
        if (sol.status != lp::Status::optimal)
            return res; // disjoint sets tied by rho = 0
        std::vector<Point2> f(n);
        for (std::size_t x = 0; x < n; ++x)
            f[x] = {sol.point[2 * x], sol.point[2 * x + 1]};
        const double lambda = std::max(0.0, sol.point[2 * n]);

        std::size_t added = 0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y)
                if (!included[x][y] &&
                    dist_inf(f[x], f[y]) > lambda * F.m(x, y) + 1e-9 * (1.0 + lambda)) {
                    detail::add_pair_rows(base, n, x, y, F.m(x, y));
                    included[x][y] = true;
                    ++added;
                }
        if (added == 0) {
            res.status = OracleStatus::optimal;
            res.lambda_star = lambda;
            res.selection = Selection::measured(F.m, std::move(f));
            return res;
        }
    }
    throw refusal("oracle cutting-plane loop did not converge");
}

inline OracleResult optimal_on_subset(const SetMap& F, const std::vector<std::size_t>& subset) {
    if (subset.empty())
        throw input_error("subset must be nonempty");
    return optimal_selection(F.restrict_to(subset));
}

struct GridCheck {
    bool confirmed = false; // no grid selection beats lambda_star - slack
    bool coarse = false;    // slack is at least lambda_star, so the check is vacuous
    double best_grid = inf; // smallest seminorm over grid selections
    double slack = 0.0;     // 2 * step / (min positive rho)
    std::size_t candidates = 0;
};

/// Brute force over selections whose values are grid points of step `step`
/// lying in F(x), plus the vertices of F(x). Bounded values only; meant for
/// three or four points.
inline GridCheck grid_check(const SetMap& F, const OracleResult& result, double step) {
    if (!(step > 0))
        throw input_error("grid step must be positive");
    if (!F.all_bounded() || !F.all_nonempty())
        throw input_error("grid_check needs bounded nonempty values");
    const std::size_t n = F.size();
    std::vector<std::vector<Point2>> cand(n);
    for (std::size_t x = 0; x < n; ++x) {
        const ConvexSet s = F[x].planar();
        cand[x] = s.vertices();
        const Box b = rect_hull(s);
        for (double u = std::ceil(b.i1.lo / step) * step; u <= b.i1.hi; u += step)
            for (double v = std::ceil(b.i2.lo / step) * step; v <= b.i2.hi; v += step)
                if (s.contains({u, v}, 1e-12))
                    cand[x].push_back({u, v});
    }
    GridCheck g;
    std::size_t combos = 1;
    for (const auto& c : cand) {
        g.candidates += c.size();
        combos *= c.size();
        if (combos > 20'000'000)
            throw input_error("grid too fine for brute force");
    }
    const auto minrho = F.m.min_positive_distance();
    g.slack = minrho ? 2 * step / *minrho : 0.0;

    std::vector<std::size_t> idx(n, 0);
    std::vector<Point2> f(n);
    while (true) {
        for (std::size_t x = 0; x < n; ++x)
            f[x] = cand[x][idx[x]];
        g.best_grid = std::min(g.best_grid, measure_seminorm(F.m, f));
        std::size_t k = 0;
        while (k < n && ++idx[k] == cand[k].size())
            idx[k++] = 0;
        if (k == n)
            break;
    }
    g.confirmed = g.best_grid >= result.lambda_star - g.slack - 1e-9;
    g.coarse = g.slack >= result.lambda_star && result.lambda_star > 0;
    return g;
}

} // namespace lipsel
