#pragma once

// Balanced refinements over the uniform unit ball Q0 = [-1,1]^2:
//   F1(x) = intersection over z of (F(z) + lambda rho(x,z) Q0).

#include <cstddef>
#include <optional>
#include <vector>

#include "lipsel/geometry.hpp"
#include "lipsel/set_map.hpp"

namespace lipsel {

/// One refinement step. Any Empty input value empties every output value.
inline SetMap balanced_refine(const SetMap& F, double lambda) {
    if (!(lambda >= 0) || !std::isfinite(lambda))
        throw input_error("lambda must be finite and nonnegative");
    const std::size_t n = F.size();
    std::vector<ConvexSet> out(n);
    if (!F.all_nonempty())
        return SetMap(F.m, std::move(out), F.kind);
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<ConvexSet> parts;
        parts.reserve(n);
        for (std::size_t z = 0; z < n; ++z)
            parts.push_back(minkowski_square(F[z], lambda * F.m(x, z)));
        out[x] = intersect(parts);
    }
    return SetMap(F.m, std::move(out), F.kind);
}

struct RefinementTrace {
    std::vector<double> lambdas;
    std::vector<SetMap> stages; // stages[k] is the (k+1)-th refinement
    std::vector<std::vector<std::size_t>> empty_points;

    const SetMap& last() const { return stages.back(); }
    bool nonempty() const {
        for (const auto& e : empty_points)
            if (!e.empty())
                return false;
        return true;
    }
};

inline RefinementTrace iterate_refine(const SetMap& F, const std::vector<double>& lambdas) {
    if (lambdas.empty())
        throw input_error("iterate_refine needs at least one lambda");
    RefinementTrace t;
    t.lambdas = lambdas;
    const SetMap* prev = &F;
    for (double l : lambdas) {
        t.stages.push_back(balanced_refine(*prev, l));
        t.empty_points.push_back(t.stages.back().empty_points());
        prev = &t.stages.back();
    }
    return t;
}

struct CoreReport {
    bool nonempty_ok = false;
    double worst_ratio = 0.0;
    std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
    bool passed = false; // nonempty and worst_ratio <= gamma + 1e-6
};

/// Largest d_H(G(x),G(y)) / rho(x,y). Pairs with rho = 0 count as ratio 0
/// when d_H <= 1e-8 and as +inf otherwise.
inline CoreReport core_check(const SetMap& G, double gamma) {
    CoreReport r;
    r.nonempty_ok = G.all_nonempty();
    if (!r.nonempty_ok)
        return r;
    if (!G.all_bounded())
        throw input_error("core_check needs bounded values");
    for (std::size_t x = 0; x < G.size(); ++x)
        for (std::size_t y = x + 1; y < G.size(); ++y) {
            const double d = hausdorff_linf(G[x], G[y]);
            const double rho = G.m(x, y);
            const double ratio = rho > 0 ? d / rho : (d <= 1e-8 ? 0.0 : inf);
            if (!r.worst_pair || ratio > r.worst_ratio) {
                r.worst_ratio = ratio;
                r.worst_pair = std::make_pair(x, y);
            }
        }
    r.passed = r.worst_ratio <= gamma + 1e-6;
    return r;
}

struct StabilizationReport {
    bool stable = false;
    bool stage_nonempty = false;
    double max_change = 0.0; // largest Hausdorff move caused by the extra step
};

/// Refines F along `lambdas`, then once more with gamma, and measures how
/// far the extra step moves each set.
inline StabilizationReport stabilization_check(const SetMap& F, const std::vector<double>& lambdas,
                                               double gamma, double tol = 1e-7) {
    StabilizationReport rep;
    const auto trace = iterate_refine(F, lambdas);
    rep.stage_nonempty = trace.nonempty();
    if (!rep.stage_nonempty)
        return rep;
    const SetMap next = balanced_refine(trace.last(), gamma);
    if (!next.all_nonempty()) {
        rep.max_change = inf;
        return rep;
    }
    for (std::size_t x = 0; x < F.size(); ++x)
        rep.max_change = std::max(rep.max_change, hausdorff_linf(trace.last()[x], next[x]));
    rep.stable = rep.max_change <= tol;
    return rep;
}

} // namespace lipsel
