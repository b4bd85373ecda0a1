#pragma once

// Set-valued mappings over a finite pseudometric space and their selections.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipsel/geometry.hpp"
#include "lipsel/metric_space.hpp"

namespace lipsel {

/// Raised when an algorithm declines to run because its hypothesis fails
/// (an empty refined set, an unaccepted lambda, ...). Distinct from
/// input_error, which signals malformed input.
class refusal : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// F : points -> convex sets, indexed like the metric. Entries may be Empty
/// only for refinement stages; `kind` is the declared kind of the input sets.
struct SetMap {
    PseudoMetric m;
    std::vector<ConvexSet> sets;
    SetKind kind = SetKind::polygon;

    SetMap() = default;
    SetMap(PseudoMetric metric, std::vector<ConvexSet> values, SetKind declared)
        : m(std::move(metric)), sets(std::move(values)), kind(declared) {
        if (sets.size() != m.size())
            throw input_error("set map has " + std::to_string(sets.size()) + " sets for " +
                              std::to_string(m.size()) + " points");
    }

    std::size_t size() const { return sets.size(); }
    const ConvexSet& operator[](std::size_t i) const { return sets[i]; }

    std::vector<std::size_t> empty_points() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (sets[i].is_empty())
                out.push_back(i);
        return out;
    }
    bool all_nonempty() const { return empty_points().empty(); }
    bool all_bounded() const {
        for (const auto& s : sets)
            if (!s.is_bounded())
                return false;
        return true;
    }

    /// Restriction to a subset of points, in the given order.
    SetMap restrict_to(const std::vector<std::size_t>& subset) const {
        std::vector<ConvexSet> vals;
        for (auto i : subset) {
            if (i >= size())
                throw input_error("subset index out of range");
            vals.push_back(sets[i]);
        }
        return SetMap(m.restrict_to(subset), std::move(vals), kind);
    }
};

/// Pairs with rho = 0 must map to points this close.
inline constexpr double zero_distance_slack = 1e-7;

/// max over pairs with rho > 0 of |f(x)-f(y)|_inf / rho(x,y); +inf when a
/// rho = 0 pair is mapped further apart than zero_distance_slack.
inline double measure_seminorm(const PseudoMetric& m, const std::vector<Point2>& f) {
    if (f.size() != m.size())
        throw input_error("selection size does not match the metric");
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const double d = dist_inf(f[i], f[j]);
            const double r = m(i, j);
            if (r > 0)
                best = std::max(best, d / r);
            else if (d > zero_distance_slack)
                return inf;
        }
    return best;
}

/// A selection together with its measured Lipschitz seminorm.
struct Selection {
    std::vector<Point2> f;
    double seminorm = 0.0;

    static Selection measured(const PseudoMetric& m, std::vector<Point2> pts) {
        Selection s;
        s.seminorm = measure_seminorm(m, pts);
        s.f = std::move(pts);
        return s;
    }
};

/// Largest uniform-norm distance from f(x) to F(x).
inline double membership_slack(const SetMap& F, const std::vector<Point2>& f) {
    if (f.size() != F.size())
        throw input_error("selection size does not match the set map");
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, dist_point(f[i], F[i]));
    return worst;
}

/// Largest finite pairwise uniform distance between values, the scale used
/// for tolerances and search brackets.
inline double max_set_distance(const SetMap& F) {
    double best = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i)
        for (std::size_t j = i + 1; j < F.size(); ++j)
            best = std::max(best, dist_linf(F[i], F[j]));
    return best;
}

} // namespace lipsel
