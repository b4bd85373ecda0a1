#pragma once

// Decision and construction of nearly optimal selections of set-valued
// mappings into bounded convex subsets of the plane (uniform norm).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lipsel/geometry.hpp"
#include "lipsel/oracle.hpp"
#include "lipsel/refinement.hpp"
#include "lipsel/set_map.hpp"

namespace lipsel {

/// Outcome of a criterion. A rejection names the offending points, the
/// inequality that failed, and both of its sides.
struct Verdict {
    bool accepted = true;
    std::vector<std::size_t> witness;
    std::string tag;
    double lhs = 0.0;
    double rhs = 0.0;

    static Verdict accept() { return {}; }
    static Verdict reject(std::vector<std::size_t> w, std::string tag, double lhs, double rhs) {
        return {false, std::move(w), std::move(tag), lhs, rhs};
    }
};

namespace detail {

inline void require_bounded_kind(const SetMap& F, const char* what) {
    if (!F.all_nonempty())
        throw input_error(std::string(what) + " needs nonempty values");
    if (!F.all_bounded())
        throw input_error(std::string(what) +
                          " needs bounded values; use the half-plane criteria instead");
}

inline void require_lambda(double lambda) {
    if (!(lambda >= 0) || !std::isfinite(lambda))
        throw input_error("lambda must be finite and nonnegative");
}

// Comparisons are made at the resolution of the polygon kernel, which snaps
// points within empty_slack onto clipping lines.
inline double rel_tol(double a, double b) {
    return empty_slack * (1.0 + std::abs(a) + std::abs(b));
}

/// A(x,y) = F(x) cap (F(y) + lambda rho(x,y) Q0) for all ordered pairs.
inline std::vector<std::vector<ConvexSet>> pair_sets(const SetMap& F, double lambda) {
    const std::size_t n = F.size();
    std::vector<std::vector<ConvexSet>> A(n, std::vector<ConvexSet>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            A[x][y] = x == y ? F[x] : intersect(F[x], minkowski_square(F[y], lambda * F.m(x, y)));
    return A;
}

/// Triple sets (F(y') + l rho(y',y) Q0) cap (F(y'') + l rho(y'',y) Q0),
/// stored for y' <= y''.
class TripleSets {
  public:
    TripleSets(const SetMap& F, double lambda) : n_(F.size()) {
        std::vector<ConvexSet> fat(n_ * n_);
        for (std::size_t y = 0; y < n_; ++y)
            for (std::size_t z = 0; z < n_; ++z)
                fat[y * n_ + z] = minkowski_square(F[z], lambda * F.m(z, y));
        sets_.resize(n_ * n_ * n_);
        for (std::size_t y = 0; y < n_; ++y)
            for (std::size_t a = 0; a < n_; ++a)
                for (std::size_t b = a; b < n_; ++b)
                    sets_[index(y, a, b)] = intersect(fat[y * n_ + a], fat[y * n_ + b]);
    }
    const ConvexSet& operator()(std::size_t y, std::size_t a, std::size_t b) const {
        return sets_[index(y, std::min(a, b), std::max(a, b))];
    }

  private:
    std::size_t index(std::size_t y, std::size_t a, std::size_t b) const {
        return (y * n_ + a) * n_ + b;
    }
    std::size_t n_;
    std::vector<ConvexSet> sets_;
};

} // namespace detail

/// Rectangle R[x,x'] = rect_hull(F(x) cap (F(x') + lambda rho(x,x') Q0)),
/// nullopt when that intersection is empty.
inline std::optional<Box> r_rectangle(const SetMap& F, std::size_t x, std::size_t xp,
                                      double lambda) {
    const ConvexSet a =
        x == xp ? F[x] : intersect(F[x], minkowski_square(F[xp], lambda * F.m(x, xp)));
    if (a.is_empty())
        return std::nullopt;
    return rect_hull(a);
}

/// W[x,x',x''] = rect_hull((F(x') + l rho(x',x) Q0) cap (F(x'') + l rho(x'',x) Q0)).
inline std::optional<Box> w_rectangle(const SetMap& F, std::size_t x, std::size_t xp,
                                      std::size_t xpp, double lambda) {
    const ConvexSet a = intersect(minkowski_square(F[xp], lambda * F.m(xp, x)),
                                  minkowski_square(F[xpp], lambda * F.m(xpp, x)));
    if (a.is_empty())
        return std::nullopt;
    return rect_hull(a);
}

/// Distance between boxes in the uniform norm.
inline double box_distance(const Box& a, const Box& b) {
    return std::max(interval_distance(a.i1, b.i1), interval_distance(a.i2, b.i2));
}

/// Decision procedure: (i) F(x) cap (F(y) + lambda rho Q0) is nonempty for all
/// pairs, and (ii) the rectangles R[x,x'] and R[y,y'] are within
/// lambda rho(x,y) of each other, checked coordinatewise. Rejection proves
/// that no selection has seminorm below lambda; acceptance guarantees one
/// with seminorm at most 8 lambda.
inline Verdict algorithm_a(const SetMap& F, double lambda) {
    detail::require_bounded_kind(F, "algorithm_a");
    detail::require_lambda(lambda);
    const std::size_t n = F.size();
    const auto A = detail::pair_sets(F, lambda);
    std::vector<std::vector<Box>> R(n, std::vector<Box>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (A[x][y].is_empty())
                return Verdict::reject({x, y}, "condition_i", dist_linf(F[x], F[y]),
                                       lambda * F.m(x, y));
            R[x][y] = rect_hull(A[x][y]);
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t xp = 0; xp < n; ++xp)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t yp = 0; yp < n; ++yp) {
                    const double bound = lambda * F.m(x, y);
                    for (std::size_t j = 0; j < 2; ++j) {
                        const double a = R[x][xp].axis(j).lo, b = R[y][yp].axis(j).hi;
                        if (a - b > bound + detail::rel_tol(a, b))
                            return Verdict::reject({x, xp, y, yp},
                                                   j == 0 ? "condition_ii_axis1"
                                                          : "condition_ii_axis2",
                                                   a - b, bound);
                    }
                }
    return Verdict::accept();
}

enum class RectangleRule { g_plus, g_minus };

/// Construction: refine with 3 lambda, pick a lambda-Lipschitz selection g of
/// the rectangular hulls of the refinement by the explicit g+ (or g-)
/// formula, and project g onto the refined sets. Requires acceptance by
/// algorithm_a; the result has seminorm at most 8 lambda.
inline Selection algorithm_b(const SetMap& F, double lambda,
                             RectangleRule rule = RectangleRule::g_plus) {
    const Verdict v = algorithm_a(F, lambda);
    if (!v.accepted)
        throw refusal("algorithm_b: lambda is not accepted by algorithm_a (" + v.tag + ")");
    const std::size_t n = F.size();
    const double lt = 3 * lambda;
    const SetMap F1 = balanced_refine(F, lt);
    for (std::size_t x = 0; x < n; ++x)
        if (F1[x].is_empty())
            throw refusal("algorithm_b: refined set at " + F.m.id(x) + " is empty");

    // B_j(y) = min over y',y'' of sup_j A(y,y',y''), A_j(y) = max of inf_j.
    const detail::TripleSets T(F, lt);
    std::vector<Box> hull(n);
    for (std::size_t y = 0; y < n; ++y) {
        Box b{{-inf, inf}, {-inf, inf}};
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = a; c < n; ++c) {
                const ConvexSet& s = T(y, a, c);
                if (s.is_empty())
                    throw refusal("algorithm_b: empty triple set at " + F.m.id(y));
                const Box r = rect_hull(s);
                b.i1 = {std::max(b.i1.lo, r.i1.lo), std::min(b.i1.hi, r.i1.hi)};
                b.i2 = {std::max(b.i2.lo, r.i2.lo), std::min(b.i2.hi, r.i2.hi)};
            }
        hull[y] = b;
    }

    std::vector<Point2> f(n);
    for (std::size_t x = 0; x < n; ++x) {
        double g[2];
        for (std::size_t j = 0; j < 2; ++j) {
            if (rule == RectangleRule::g_plus) {
                g[j] = inf;
                for (std::size_t y = 0; y < n; ++y)
                    g[j] = std::min(g[j], hull[y].axis(j).hi + lambda * F.m(x, y));
            } else {
                g[j] = -inf;
                for (std::size_t y = 0; y < n; ++y)
                    g[j] = std::max(g[j], hull[y].axis(j).lo - lambda * F.m(x, y));
            }
        }
        // g(x) lies in rect_hull(F1(x)) up to rounding; clamp before projecting.
        const Box h = rect_hull(F1[x]);
        const Point2 gx{std::clamp(g[0], h.i1.lo, h.i1.hi), std::clamp(g[1], h.i2.lo, h.i2.hi)};
        f[x] = metric_projection_linf(gx, F1[x]);
    }
    return Selection::measured(F.m, std::move(f));
}

/// Centers of the rectangular hulls of the second refinement with
/// lambdas (lambda, 3 lambda). Seminorm at most 15 lambda when every
/// restriction to four points has a lambda-selection.
inline Selection select_hull_center(const SetMap& F, double lambda) {
    detail::require_bounded_kind(F, "select_hull_center");
    detail::require_lambda(lambda);
    const auto trace = iterate_refine(F, {lambda, 3 * lambda});
    std::vector<Point2> f(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) {
        if (trace.last()[x].is_empty())
            throw refusal("select_hull_center: second refinement is empty at " + F.m.id(x));
        f[x] = center(rect_hull(trace.last()[x]));
    }
    return Selection::measured(F.m, std::move(f));
}

/// The same selection through the closed formula over 6-tuples
/// (u,u',u'',v,v',v''): f_j(x) = (alpha_j(x) + beta_j(x)) / 2 where
/// beta_j = inf sup_j (T_x(u,u',u'') cap T_x(v,v',v'')), alpha_j = sup inf_j,
/// T_x(u,u',u'') = ((F(u') + l rho(u',u) Q0) cap (F(u'') + l rho(u'',u) Q0))
///                 + 3 l rho(u,x) Q0.
/// O(N^7) set operations; intended for cross-checking on small instances.
inline Selection hull_center_formula(const SetMap& F, double lambda) {
    detail::require_bounded_kind(F, "hull_center_formula");
    detail::require_lambda(lambda);
    const std::size_t n = F.size();
    const detail::TripleSets C(F, lambda);
    struct Triple {
        std::size_t u, a, b;
    };
    std::vector<Triple> triples;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                if (C(u, a, b).is_empty())
                    throw refusal("hull_center_formula: empty triple set");
                triples.push_back({u, a, b});
            }
    std::vector<Point2> f(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<ConvexSet> Tx;
        for (const auto& t : triples)
            Tx.push_back(minkowski_square(C(t.u, t.a, t.b), 3 * lambda * F.m(t.u, x)));
        double alpha[2] = {-inf, -inf}, beta[2] = {inf, inf};
        for (std::size_t p = 0; p < Tx.size(); ++p)
            for (std::size_t q = p; q < Tx.size(); ++q) {
                const ConvexSet s = intersect(Tx[p], Tx[q]);
                if (s.is_empty())
                    throw refusal("hull_center_formula: empty pair of fattened triples at " +
                                  F.m.id(x));
                const Box r = rect_hull(s);
                for (std::size_t j = 0; j < 2; ++j) {
                    alpha[j] = std::max(alpha[j], r.axis(j).lo);
                    beta[j] = std::min(beta[j], r.axis(j).hi);
                }
            }
        f[x] = {0.5 * (alpha[0] + beta[0]), 0.5 * (alpha[1] + beta[1])};
    }
    return Selection::measured(F.m, std::move(f));
}

/// Midpoints of the second-refinement segments of a segment-valued map.
inline Selection select_segment_midpoint(const SetMap& F, double lambda) {
    if (F.kind != SetKind::segment)
        throw input_error("select_segment_midpoint needs a segment-valued map");
    detail::require_bounded_kind(F, "select_segment_midpoint");
    detail::require_lambda(lambda);
    const auto trace = iterate_refine(F, {lambda, 3 * lambda});
    std::vector<Point2> f(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) {
        const ConvexSet& s = trace.last()[x];
        if (s.is_empty())
            throw refusal("select_segment_midpoint: second refinement is empty at " + F.m.id(x));
        const ConvexSet ps = s.planar();
        const auto& v = ps.vertices();
        f[x] = v.size() == 1 ? v[0] : midpoint(Segment{v.front(), v.back()});
    }
    return Selection::measured(F.m, std::move(f));
}

/// Steiner points of the second refinement (lambda, 3 lambda).
inline Selection select_steiner(const SetMap& F, double lambda) {
    detail::require_bounded_kind(F, "select_steiner");
    detail::require_lambda(lambda);
    const auto trace = iterate_refine(F, {lambda, 3 * lambda});
    std::vector<Point2> f(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) {
        if (trace.last()[x].is_empty())
            throw refusal("select_steiner: second refinement is empty at " + F.m.id(x));
        f[x] = steiner_point(trace.last()[x]);
    }
    return Selection::measured(F.m, std::move(f));
}

enum class PointwiseFamily {
    rectangles, // intersection over y,y' of R[y,y'] + lambda rho(x,y) Q0
    sets        // intersection over y,y' of (F(y) cap (F(y') + lambda rho Q0)) + lambda rho(x,y) Q0
};

/// Per-point nonemptiness of the chosen intersection family.
inline std::vector<bool> check_pointwise_criterion(const SetMap& F, double lambda,
                                                   PointwiseFamily family) {
    detail::require_bounded_kind(F, "check_pointwise_criterion");
    detail::require_lambda(lambda);
    const std::size_t n = F.size();
    const auto A = detail::pair_sets(F, lambda);
    bool any_empty = false;
    for (const auto& row : A)
        for (const auto& s : row)
            any_empty = any_empty || s.is_empty();
    std::vector<bool> ok(n, !any_empty);
    if (any_empty)
        return ok;
    for (std::size_t x = 0; x < n; ++x) {
        if (family == PointwiseFamily::rectangles) {
            double lo[2] = {-inf, -inf}, hi[2] = {inf, inf};
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t yp = 0; yp < n; ++yp) {
                    const Box r = rect_hull(A[y][yp]);
                    const double e = lambda * F.m(x, y);
                    for (std::size_t j = 0; j < 2; ++j) {
                        lo[j] = std::max(lo[j], r.axis(j).lo - e);
                        hi[j] = std::min(hi[j], r.axis(j).hi + e);
                    }
                }
            ok[x] = lo[0] <= hi[0] + detail::rel_tol(lo[0], hi[0]) &&
                    lo[1] <= hi[1] + detail::rel_tol(lo[1], hi[1]);
        } else {
            // One feasibility program over all pieces; clipping piece by piece
            // would compound the snapping error.
            std::vector<HalfPlane> hs;
            double scale = 1.0;
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t yp = 0; yp < n; ++yp) {
                    const ConvexSet piece = minkowski_square(A[y][yp], lambda * F.m(x, y));
                    for (const auto& h : piece.halfplanes()) {
                        hs.push_back(h);
                        scale = std::max(scale, std::abs(h.alpha));
                    }
                }
            const auto lv = detail::least_violation(hs);
            ok[x] = lv && lv->first <= empty_slack * scale;
        }
    }
    return ok;
}

/// Largest oracle optimum over restrictions to min(N,4) points. Restrictions
/// to fewer points never have a larger optimum, so only the largest subsets
/// are enumerated.
inline double finiteness_bound(const SetMap& F) {
    const std::size_t n = F.size();
    const std::size_t k = std::min<std::size_t>(n, 4);
    double best = 0.0;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        const auto r = optimal_on_subset(F, idx);
        if (r.status != OracleStatus::optimal)
            return inf;
        best = std::max(best, r.lambda_star);
        // next combination
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return best;
}

struct NearOptimal {
    double lambda_hat = 0.0;
    Selection selection;
    double upper = 0.0; // first accepted bracket end
    bool anomaly = false;
    std::vector<std::pair<double, bool>> probes; // (lambda, accepted)
};

/// Smallest lambda accepted by algorithm_a, to relative tolerance `tol`, with
/// the algorithm_b selection at that lambda. Acceptance is assumed monotone;
/// the probes are checked and a grid scan replaces bisection if they
/// contradict it.
inline NearOptimal near_optimal(const SetMap& F, double tol = 1e-6) {
    detail::require_bounded_kind(F, "near_optimal");
    if (!(tol > 0))
        throw input_error("tolerance must be positive");
    NearOptimal out;
    auto probe = [&](double l) {
        const bool a = algorithm_a(F, l).accepted;
        out.probes.emplace_back(l, a);
        return a;
    };
    if (probe(0.0)) {
        out.lambda_hat = 0.0;
        out.selection = algorithm_b(F, 0.0);
        return out;
    }
    const auto minrho = F.m.min_positive_distance();
    if (!minrho)
        throw refusal("near_optimal: all distances are zero and the values share no point");
    double hi = max_set_distance(F) / *minrho + 1.0;
    int doublings = 0;
    while (!probe(hi)) {
        if (++doublings > 60)
            throw refusal("near_optimal: no accepted lambda found");
        hi *= 2;
    }
    out.upper = hi;
    double lo = 0.0;
    while (hi - lo > tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (probe(mid) ? hi : lo) = mid;
    }
    // Bisection probes agree with monotonicity by construction; spot-check
    // values on both sides of the bracket.
    for (int k = 1; k <= 8; ++k) {
        probe(hi + (out.upper - hi) * k / 8.0);
        probe(lo * k / 9.0);
    }
    double max_rejected = 0.0, min_accepted = inf;
    for (auto [l, a] : out.probes) {
        if (a)
            min_accepted = std::min(min_accepted, l);
        else
            max_rejected = std::max(max_rejected, l);
    }
    if (max_rejected > min_accepted) {
        out.anomaly = true;
        const int steps = 400;
        for (int i = 1; i <= steps; ++i) {
            const double l = out.upper * i / steps;
            if (probe(l)) {
                hi = l;
                break;
            }
        }
    }
    out.lambda_hat = hi;
    out.selection = algorithm_b(F, hi);
    return out;
}

} // namespace lipsel
