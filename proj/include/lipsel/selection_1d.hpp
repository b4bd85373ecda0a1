#pragma once

// Lipschitz selections of interval-valued mappings on the real line.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lipsel/geometry.hpp"
#include "lipsel/metric_space.hpp"
#include "lipsel/set_map.hpp"

namespace lipsel {

struct IntervalMap {
    PseudoMetric m;
    std::vector<Interval1> F;

    IntervalMap() = default;
    IntervalMap(PseudoMetric metric, std::vector<Interval1> values)
        : m(std::move(metric)), F(std::move(values)) {
        if (F.size() != m.size())
            throw input_error("interval map has " + std::to_string(F.size()) + " intervals for " +
                              std::to_string(m.size()) + " points");
    }
    std::size_t size() const { return F.size(); }

    /// Planar set map with each interval stored as the interval kind.
    SetMap as_set_map() const {
        std::vector<ConvexSet> sets;
        for (const auto& i : F)
            sets.push_back(ConvexSet::interval(i));
        return SetMap(m, std::move(sets), SetKind::interval);
    }
};

struct Selection1D {
    std::vector<double> f;
    double seminorm = 0.0;
};

inline double measure_seminorm_1d(const PseudoMetric& m, const std::vector<double>& f) {
    std::vector<Point2> pts;
    for (double v : f)
        pts.push_back({v, 0.0});
    return measure_seminorm(m, pts);
}

namespace detail {

inline double lambda_slack(double lambda) { return 1e-9 * (1.0 + lambda); }

inline void require_bounded(const IntervalMap& F) {
    for (std::size_t i = 0; i < F.size(); ++i)
        if (!F.F[i].bounded())
            throw input_error("selection needs bounded intervals (point " + F.m.id(i) + ")");
}

} // namespace detail

struct PairWitness {
    std::size_t x = 0, y = 0;
    double ratio = 0.0; // [a(x)-b(y)]_+ / rho(x,y)
};

/// The binding pair of the optimal seminorm, or nullopt when lambda_F = 0.
inline std::optional<PairWitness> lambda_f_witness(const IntervalMap& F) {
    std::optional<PairWitness> best;
    for (std::size_t x = 0; x < F.size(); ++x)
        for (std::size_t y = 0; y < F.size(); ++y) {
            const double gap = F.F[x].lo - F.F[y].hi;
            if (!(gap > 0))
                continue; // [.]_+ = 0, including 0/0 = 0
            const double r = F.m(x, y);
            const double ratio = r > 0 ? gap / r : inf;
            if (!best || ratio > best->ratio)
                best = PairWitness{x, y, ratio};
        }
    return best;
}

/// lambda_F = sup [min F(x) - max F(y)]_+ / rho(x,y), with 0/0 = 0, a/0 = inf.
inline double lambda_f(const IntervalMap& F) {
    auto w = lambda_f_witness(F);
    return w ? w->ratio : 0.0;
}

namespace detail {

inline void require_lambda(const IntervalMap& F, double lambda) {
    if (!(lambda >= 0))
        throw input_error("lambda must be nonnegative");
    require_bounded(F);
    auto w = lambda_f_witness(F);
    if (w && w->ratio > lambda + lambda_slack(lambda))
        throw refusal("lambda " + std::to_string(lambda) + " is below the optimal seminorm: pair (" +
                      F.m.id(w->x) + ", " + F.m.id(w->y) + ") needs " +
                      std::to_string(w->ratio));
}

inline Selection1D finish(const IntervalMap& F, std::vector<double> f) {
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::clamp(f[i], F.F[i].lo, F.F[i].hi);
    Selection1D s;
    s.seminorm = measure_seminorm_1d(F.m, f);
    s.f = std::move(f);
    return s;
}

} // namespace detail

/// f+(x) = min_y (max F(y) + lambda rho(x,y)).
inline Selection1D select_plus(const IntervalMap& F, double lambda) {
    detail::require_lambda(F, lambda);
    std::vector<double> f(F.size(), inf);
    for (std::size_t x = 0; x < F.size(); ++x)
        for (std::size_t y = 0; y < F.size(); ++y)
            f[x] = std::min(f[x], F.F[y].hi + lambda * F.m(x, y));
    return detail::finish(F, std::move(f));
}

/// f-(x) = max_y (min F(y) - lambda rho(x,y)).
inline Selection1D select_minus(const IntervalMap& F, double lambda) {
    detail::require_lambda(F, lambda);
    std::vector<double> f(F.size(), -inf);
    for (std::size_t x = 0; x < F.size(); ++x)
        for (std::size_t y = 0; y < F.size(); ++y)
            f[x] = std::max(f[x], F.F[y].lo - lambda * F.m(x, y));
    return detail::finish(F, std::move(f));
}

/// Average of f+ and f-.
inline Selection1D select_mid(const IntervalMap& F, double lambda) {
    const auto p = select_plus(F, lambda), q = select_minus(F, lambda);
    std::vector<double> f(F.size());
    for (std::size_t x = 0; x < F.size(); ++x)
        f[x] = 0.5 * (p.f[x] + q.f[x]);
    return detail::finish(F, std::move(f));
}

/// lambda-balanced refinement: F1(x) = intersection over z of
/// [min F(z) - lambda rho, max F(z) + lambda rho]; nullopt marks Empty.
inline std::vector<std::optional<Interval1>> refine_1d(const IntervalMap& F, double lambda) {
    if (!(lambda >= 0) || !std::isfinite(lambda))
        throw input_error("lambda must be finite and nonnegative");
    std::vector<std::optional<Interval1>> out;
    for (std::size_t x = 0; x < F.size(); ++x) {
        double lo = -inf, hi = inf;
        for (std::size_t z = 0; z < F.size(); ++z) {
            const double r = lambda * F.m(x, z);
            lo = std::max(lo, F.F[z].lo - r);
            hi = std::min(hi, F.F[z].hi + r);
        }
        if (lo <= hi)
            out.emplace_back(Interval1{lo, hi});
        else if (lo - hi <= detail::lambda_slack(lambda))
            out.emplace_back(Interval1{0.5 * (lo + hi), 0.5 * (lo + hi)});
        else
            out.emplace_back(std::nullopt);
    }
    return out;
}

/// True iff the lambda-balanced refinement has no empty entry.
inline bool criterion_1d(const IntervalMap& F, double lambda) {
    for (const auto& v : refine_1d(F, lambda))
        if (!v)
            return false;
    return true;
}

} // namespace lipsel
