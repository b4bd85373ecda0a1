#pragma once

// Criteria for mappings whose values are half-planes
//   F(x) = {a : <a, n(x)> + alpha(x) <= 0},  |n(x)|_2 = 1,
// and the edge-half-plane version for polygon-valued mappings.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "lipsel/geometry.hpp"
#include "lipsel/lp.hpp"
#include "lipsel/selector.hpp"
#include "lipsel/set_map.hpp"

namespace lipsel {

/// Normals closer than this (determinant, or |n(x)+n(y)| for antipodes)
/// count as parallel.
inline constexpr double parallel_threshold = 1e-9;

struct HalfPlaneMap {
    PseudoMetric m;
    std::vector<HalfPlane> h;

    HalfPlaneMap() = default;
    HalfPlaneMap(PseudoMetric metric, std::vector<HalfPlane> planes)
        : m(std::move(metric)), h(std::move(planes)) {
        if (h.size() != m.size())
            throw input_error("half-plane map size does not match the metric");
        for (auto& p : h)
            p = HalfPlane::make(p.n, p.alpha);
    }

    static HalfPlaneMap from_set_map(const SetMap& F) {
        std::vector<HalfPlane> hs;
        for (std::size_t i = 0; i < F.size(); ++i) {
            if (F[i].kind() != SetKind::halfplane)
                throw input_error("point " + F.m.id(i) + " is not half-plane valued");
            hs.push_back(F[i].halfplanes().front());
        }
        return HalfPlaneMap(F.m, std::move(hs));
    }

    SetMap as_set_map() const {
        std::vector<ConvexSet> sets;
        for (const auto& p : h)
            sets.push_back(ConvexSet::halfplane(p));
        return SetMap(m, std::move(sets), SetKind::halfplane);
    }

    std::size_t size() const { return h.size(); }
    Point2 n(std::size_t x) const { return h[x].n; }
    double alpha(std::size_t x) const { return h[x].alpha; }
};

/// n1(x) n2(y) - n2(x) n1(y); its absolute value is the sine of the angle
/// between the boundary lines.
inline double delta_n(Point2 nx, Point2 ny) { return nx.x1 * ny.x2 - nx.x2 * ny.x1; }
inline double delta_n(const HalfPlaneMap& F, std::size_t x, std::size_t y) {
    return delta_n(F.n(x), F.n(y));
}

/// Common point of two non-parallel boundary lines.
inline Point2 intersection_point(const HalfPlane& hx, const HalfPlane& hy) {
    const double d = delta_n(hx.n, hy.n);
    if (std::abs(d) <= 1e-12)
        throw input_error("intersection_point: boundary lines are parallel");
    return {-(hx.alpha * hy.n.x2 - hy.alpha * hx.n.x2) / d,
            -(hx.n.x1 * hy.alpha - hy.n.x1 * hx.alpha) / d};
}
inline Point2 intersection_point(const HalfPlaneMap& F, std::size_t x, std::size_t y) {
    return intersection_point(F.h[x], F.h[y]);
}

namespace detail {

inline bool antipodal(Point2 a, Point2 b) { return norm_l2(a + b) <= parallel_threshold; }

/// One linear-in-lambda inequality  left <= lambda * coef.
struct LinearCondition {
    std::vector<std::size_t> points;
    std::string tag;
    double left;
    double coef;
};

/// Every instance of the two conditions as left <= lambda * coef.
///
/// The weight of rho(x,x') is |n_i(x)| for the first point of the pair, the
/// one whose cross distance rho(x,y) appears. Scanning all orderings then
/// takes the minimum over consistent choices. Taking min{|n_i(x)|,|n_i(x')|}
/// while keeping rho(x,y) fixed is not a necessary condition: swapping x and
/// x' also swaps the cross distance.
inline std::vector<LinearCondition> star_conditions(const HalfPlaneMap& F) {
    std::vector<LinearCondition> out;
    const std::size_t N = F.size();
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = x + 1; y < N; ++y)
            if (antipodal(F.n(x), F.n(y)))
                out.push_back({{x, y}, "star1", F.alpha(x) + F.alpha(y), F.m(x, y)});

    const double g = 1e-12; // sign-gate slack
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t xp = 0; xp < N; ++xp) {
            const double dx = delta_n(F, x, xp);
            if (std::abs(dx) <= parallel_threshold)
                continue;
            const Point2 nx = F.n(x), nxp = F.n(xp);
            const Point2 wx = intersection_point(F, x, xp);
            for (std::size_t y = 0; y < N; ++y)
                for (std::size_t yp = 0; yp < N; ++yp) {
                    const double dy = delta_n(F, y, yp);
                    if (std::abs(dy) <= parallel_threshold)
                        continue;
                    const Point2 ny = F.n(y), nyp = F.n(yp);
                    const Point2 wy = intersection_point(F, y, yp);
                    if (nx.x2 * nxp.x2 <= g && nx.x1 + nxp.x1 <= g && ny.x2 * nyp.x2 <= g &&
                        ny.x1 + nyp.x1 >= -g) {
                        const double coef = F.m(x, xp) / std::abs(dx) * std::abs(nx.x2) +
                                            F.m(y, yp) / std::abs(dy) * std::abs(ny.x2) +
                                            F.m(x, y);
                        out.push_back({{x, xp, y, yp}, "star2_axis1", wx.x1 - wy.x1, coef});
                    }
                    if (nx.x1 * nxp.x1 <= g && nx.x2 + nxp.x2 <= g && ny.x1 * nyp.x1 <= g &&
                        ny.x2 + nyp.x2 >= -g) {
                        const double coef = F.m(x, xp) / std::abs(dx) * std::abs(nx.x1) +
                                            F.m(y, yp) / std::abs(dy) * std::abs(ny.x1) +
                                            F.m(x, y);
                        out.push_back({{x, xp, y, yp}, "star2_axis2", wx.x2 - wy.x2, coef});
                    }
                }
        }
    return out;
}

inline Verdict check_conditions(const std::vector<LinearCondition>& cs, double lambda,
                                const std::string& prefix) {
    if (!(lambda >= 0) || !std::isfinite(lambda))
        throw input_error("lambda must be finite and nonnegative");
    for (const auto& c : cs) {
        if (c.tag.rfind(prefix, 0) != 0)
            continue;
        const double rhs = lambda * c.coef;
        if (c.left > rhs + 1e-9 * (1.0 + std::abs(c.left) + rhs))
            return Verdict::reject(c.points, c.tag, c.left, rhs);
    }
    return Verdict::accept();
}

/// Distance in the uniform norm between two half-plane systems; 0 when
/// either is empty.
inline double system_distance(const std::vector<HalfPlane>& A, const std::vector<HalfPlane>& B) {
    lp::LinearProgram prog;
    prog.variables = 5; // a1, a2, b1, b2, r
    prog.objective = {0, 0, 0, 0, 1};
    for (const auto& h : A)
        prog.add({h.n.x1, h.n.x2, 0, 0, 0}, -h.alpha);
    for (const auto& h : B)
        prog.add({0, 0, h.n.x1, h.n.x2, 0}, -h.alpha);
    prog.add({1, 0, -1, 0, -1}, 0);
    prog.add({-1, 0, 1, 0, -1}, 0);
    prog.add({0, 1, 0, -1, -1}, 0);
    prog.add({0, -1, 0, 1, -1}, 0);
    const auto sol = lp::solve(prog);
    return sol.status == lp::Status::optimal ? std::max(0.0, sol.value) : 0.0;
}

/// rho / sin(angle) with 0/0 = 0 and a/0 = +inf.
inline double angle_term(double rho, double sine) {
    if (rho == 0.0)
        return 0.0;
    return std::abs(sine) <= parallel_threshold ? inf : rho / std::abs(sine);
}

/// One quadruple of the coordinate-free criterion: dist <= lambda * brace.
struct CfTerm {
    std::vector<std::size_t> points;
    double dist;
    double brace;
};

struct PairPiece {
    std::size_t x, xp;
    std::vector<HalfPlane> planes;
    double term;
};

inline std::vector<CfTerm> cf_terms(const PseudoMetric& m, const std::vector<PairPiece>& pieces) {
    std::vector<CfTerm> out;
    for (std::size_t p = 0; p < pieces.size(); ++p)
        for (std::size_t q = p; q < pieces.size(); ++q) {
            const auto& P = pieces[p];
            const auto& Q = pieces[q];
            const double brace = P.term + Q.term + diam(m, {P.x, P.xp, Q.x, Q.xp});
            if (brace == inf)
                continue;
            out.push_back({{P.x, P.xp, Q.x, Q.xp}, system_distance(P.planes, Q.planes), brace});
        }
    return out;
}

inline Verdict check_cf_terms(const std::vector<CfTerm>& terms, double lambda) {
    if (!(lambda >= 0) || !std::isfinite(lambda))
        throw input_error("lambda must be finite and nonnegative");
    for (const auto& t : terms) {
        const double rhs = lambda * t.brace;
        if (t.dist > rhs + 1e-9 * (1.0 + t.dist + rhs))
            return Verdict::reject(t.points, "mc2", t.dist, rhs);
    }
    return Verdict::accept();
}

inline double inf_of_cf_terms(const std::vector<CfTerm>& terms) {
    double best = 0.0;
    for (const auto& t : terms) {
        if (t.dist <= 1e-12)
            continue;
        best = std::max(best, t.brace > 0 ? t.dist / t.brace : inf);
    }
    return best;
}

inline std::vector<PairPiece> halfplane_pieces(const HalfPlaneMap& F) {
    std::vector<PairPiece> out;
    for (std::size_t x = 0; x < F.size(); ++x)
        for (std::size_t xp = x; xp < F.size(); ++xp)
            out.push_back({x, xp, {F.h[x], F.h[xp]},
                           angle_term(F.m(x, xp), delta_n(F, x, xp))});
    return out;
}

} // namespace detail

/// alpha(x) + alpha(y) <= lambda rho(x,y) whenever n(y) = -n(x).
inline Verdict check_star1(const HalfPlaneMap& F, double lambda) {
    return detail::check_conditions(detail::star_conditions(F), lambda, "star1");
}

/// The two gated intersection-point inequalities over all quadruples with
/// non-parallel normals in each pair.
inline Verdict check_star2(const HalfPlaneMap& F, double lambda) {
    return detail::check_conditions(detail::star_conditions(F), lambda, "star2");
}

struct CoverageStatus {
    bool finite = true;
    bool hull_contains_origin = false;
};

/// The origin is interior to the convex hull of the normals iff the largest
/// angular gap between consecutive normals is below pi.
inline CoverageStatus coverage_status(const HalfPlaneMap& F) {
    CoverageStatus c;
    std::vector<double> ang;
    for (std::size_t x = 0; x < F.size(); ++x)
        ang.push_back(std::atan2(F.n(x).x2, F.n(x).x1));
    if (ang.size() < 3)
        return c;
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + 2 * std::numbers::pi - ang.back();
    for (std::size_t i = 1; i < ang.size(); ++i)
        gap = std::max(gap, ang[i] - ang[i - 1]);
    c.hull_contains_origin = gap < std::numbers::pi - 1e-9;
    return c;
}

struct InfLambda {
    double value = 0.0;
    bool coverage_ok = false; // false: the sufficiency half is not guaranteed
    std::vector<std::size_t> binding;
    std::string binding_tag;
};

/// Exact infimum of lambda accepted by both conditions: each instance is
/// left <= lambda * coef, so the infimum is the largest left / coef.
inline InfLambda inf_lambda_star(const HalfPlaneMap& F) {
    InfLambda r;
    r.coverage_ok = coverage_status(F).hull_contains_origin;
    for (const auto& c : detail::star_conditions(F)) {
        if (c.left <= 1e-12)
            continue;
        const double need = c.coef > 0 ? c.left / c.coef : inf;
        if (need > r.value) {
            r.value = need;
            r.binding = c.points;
            r.binding_tag = c.tag;
        }
    }
    return r;
}

/// Coordinate-free criterion: for all x,x',y,y'
///   dist(F(x) cap F(x'), F(y) cap F(y'))
///     <= lambda (rho(x,x')/sin + rho(y,y')/sin + diam{x,x',y,y'}).
inline Verdict check_mc2(const HalfPlaneMap& F, double lambda) {
    return detail::check_cf_terms(detail::cf_terms(F.m, detail::halfplane_pieces(F)), lambda);
}

/// Supremum over quadruples with finite brace of dist / brace (+inf when a
/// zero brace meets a positive distance).
inline double inf_lambda_cf(const HalfPlaneMap& F) {
    return detail::inf_of_cf_terms(detail::cf_terms(F.m, detail::halfplane_pieces(F)));
}

namespace detail {

/// Every choice of one supporting edge half-plane at x and one at x'.
inline std::vector<PairPiece> polygon_pieces(const SetMap& F) {
    std::vector<PairPiece> out;
    std::vector<ConvexSet> planar;
    for (std::size_t x = 0; x < F.size(); ++x)
        planar.push_back(F[x].planar());
    for (std::size_t x = 0; x < F.size(); ++x)
        for (std::size_t xp = x; xp < F.size(); ++xp)
            for (const auto& g : planar[x].halfplanes())
                for (const auto& gp : planar[xp].halfplanes())
                    out.push_back({x, xp, {g, gp}, angle_term(F.m(x, xp), delta_n(g.n, gp.n))});
    return out;
}

} // namespace detail

/// The coordinate-free criterion over all choices of edge half-planes of
/// bounded polygon values.
inline Verdict polygon_mc2(const SetMap& F, double lambda) {
    detail::require_bounded_kind(F, "polygon_mc2");
    return detail::check_cf_terms(detail::cf_terms(F.m, detail::polygon_pieces(F)), lambda);
}

inline double polygon_inf_lambda_cf(const SetMap& F) {
    detail::require_bounded_kind(F, "polygon_inf_lambda_cf");
    return detail::inf_of_cf_terms(detail::cf_terms(F.m, detail::polygon_pieces(F)));
}

} // namespace lipsel
