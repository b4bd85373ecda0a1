#pragma once

// Planar convex-set kernel for the uniform norm.
//
// Bounded sets are stored by their counterclockwise vertex list (one vertex
// for a point, two for a segment) together with a half-plane description
// derived from it. Unbounded sets are stored only by half-planes and rely on
// lp_core for support values. One-dimensional intervals form their own kind.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipsel/lp.hpp"
#include "lipsel/metric_space.hpp"

namespace lipsel {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Vertices closer than this are merged.
inline constexpr double dedup_tolerance = 1e-9;
/// Intersections that miss by at most this much are kept (collapsed onto the
/// boundary) instead of being reported empty.
inline constexpr double empty_slack = 1e-8;

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }
    friend Point2 operator-(Point2 a) { return {-a.x1, -a.x2}; }
    friend bool operator==(Point2 a, Point2 b) = default;
    double operator[](std::size_t i) const { return i == 0 ? x1 : x2; }
};

inline double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double cross(Point2 a, Point2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double norm_inf(Point2 a) { return std::max(std::abs(a.x1), std::abs(a.x2)); }
inline double norm_l1(Point2 a) { return std::abs(a.x1) + std::abs(a.x2); }
inline double norm_l2(Point2 a) { return std::hypot(a.x1, a.x2); }
inline double dist_inf(Point2 a, Point2 b) { return norm_inf(a - b); }

/// Closed interval of the extended real line.
struct Interval1 {
    double lo = 0.0;
    double hi = 0.0;

    static Interval1 make(double lo, double hi) {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw input_error("interval needs lo <= hi");
        if ((lo == inf && hi == inf) || (lo == -inf && hi == -inf))
            throw input_error("interval cannot be a single infinite endpoint");
        return {lo, hi};
    }
    static Interval1 whole() { return {-inf, inf}; }

    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
    double center() const { return 0.5 * (lo + hi); }
    double length() const { return hi - lo; }
    friend bool operator==(const Interval1&, const Interval1&) = default;
};

/// Distance between closed intervals: max{[u1-v2]_+, [u2-v1]_+}.
inline double interval_distance(const Interval1& a, const Interval1& b) {
    return std::max({0.0, a.lo - b.hi, b.lo - a.hi});
}

/// Hausdorff distance of bounded intervals: max{|a1-a2|, |b1-b2|}.
inline double interval_hausdorff(const Interval1& a, const Interval1& b) {
    return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

struct Box {
    Interval1 i1;
    Interval1 i2;

    bool bounded() const { return i1.bounded() && i2.bounded(); }
    bool contains(Point2 p, double tol = 0.0) const {
        return i1.contains(p.x1, tol) && i2.contains(p.x2, tol);
    }
    const Interval1& axis(std::size_t i) const { return i == 0 ? i1 : i2; }
    friend bool operator==(const Box&, const Box&) = default;
};

/// Arithmetic center of a bounded box.
inline Point2 center(const Box& b) {
    if (!b.bounded())
        throw input_error("center of an unbounded box");
    return {b.i1.center(), b.i2.center()};
}

/// {a : <a,n> + alpha <= 0} with unit outward normal n.
struct HalfPlane {
    Point2 n;
    double alpha = 0.0;

    /// Normalizes an arbitrary nonzero normal.
    static HalfPlane make(Point2 normal, double alpha) {
        const double len = norm_l2(normal);
        if (!(len > 0) || !std::isfinite(len) || !std::isfinite(alpha))
            throw input_error("half-plane needs a finite nonzero normal");
        // Already-unit normals are kept bit for bit so that saved instances
        // reload unchanged.
        if (std::abs(len - 1.0) <= 4 * std::numeric_limits<double>::epsilon())
            return {normal, alpha};
        return {(1.0 / len) * normal, alpha / len};
    }
    /// {p : <a,p> <= b}
    static HalfPlane leq(Point2 a, double b) { return make(a, -b); }

    double value(Point2 p) const { return dot(n, p) + alpha; }
    bool contains(Point2 p, double tol = 0.0) const { return value(p) <= tol; }
};

struct Segment {
    Point2 a;
    Point2 b;
};

inline Point2 midpoint(const Segment& s) { return 0.5 * (s.a + s.b); }

/// Counterclockwise vertex list; one vertex is a point, two a segment.
struct ConvexPolygon {
    std::vector<Point2> vertices;
};

enum class SetKind { empty, polygon, halfplane, segment, box, interval, region };

inline const char* to_string(SetKind k) {
    switch (k) {
    case SetKind::empty: return "empty";
    case SetKind::polygon: return "polygon";
    case SetKind::halfplane: return "halfplane";
    case SetKind::segment: return "segment";
    case SetKind::box: return "box";
    case SetKind::interval: return "interval";
    case SetKind::region: return "region";
    }
    return "?";
}

namespace detail {

inline void dedupe(std::vector<Point2>& pts) {
    std::vector<Point2> out;
    for (auto p : pts) {
        bool dup = false;
        for (auto q : out)
            if (dist_inf(p, q) <= dedup_tolerance) {
                dup = true;
                break;
            }
        if (!dup)
            out.push_back(p);
    }
    pts.swap(out);
}

/// Monotone-chain hull, counterclockwise, collinear points dropped.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    dedupe(pts);
    if (pts.size() <= 1)
        return pts;
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2);
    });
    // Abscissas a few ulps apart would start the upper chain at the wrong
    // end of a vertical edge; give them one common value.
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x1 - pts[i - 1].x1 <= 1e-13 * (1.0 + std::abs(pts[i].x1)))
            pts[i].x1 = pts[i - 1].x1;
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2);
    });
    double scale = 0.0, magnitude = 1.0;
    for (auto p : pts) {
        scale = std::max(scale, norm_inf(p - pts.front()));
        magnitude = std::max(magnitude, norm_inf(p));
    }
    // Relative to the hull's own size, so that small thin sets keep their
    // width; the second term covers rounding in the coordinates.
    const double eps = scale * (1e-12 * scale + 1e-15 * magnitude);
    std::vector<Point2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps)
            --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() == 2 && dist_inf(h[0], h[1]) <= dedup_tolerance)
        h.resize(1);
    return h;
}

/// Half-plane description of a bounded vertex list.
inline std::vector<HalfPlane> halfplanes_of(const std::vector<Point2>& v) {
    std::vector<HalfPlane> hs;
    if (v.size() == 1) {
        hs.push_back(HalfPlane::leq({1, 0}, v[0].x1));
        hs.push_back(HalfPlane::leq({-1, 0}, -v[0].x1));
        hs.push_back(HalfPlane::leq({0, 1}, v[0].x2));
        hs.push_back(HalfPlane::leq({0, -1}, -v[0].x2));
    } else if (v.size() == 2) {
        const Point2 d = v[1] - v[0];
        const Point2 nrm{d.x2, -d.x1};
        hs.push_back(HalfPlane::leq(nrm, dot(nrm, v[0])));
        hs.push_back(HalfPlane::leq(-nrm, -dot(nrm, v[0])));
        hs.push_back(HalfPlane::leq(d, dot(d, v[1])));
        hs.push_back(HalfPlane::leq(-d, -dot(d, v[0])));
    } else {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point2 a = v[i], b = v[(i + 1) % v.size()];
            const Point2 d = b - a;
            const Point2 nrm{d.x2, -d.x1}; // outward for counterclockwise order
            hs.push_back(HalfPlane::leq(nrm, dot(nrm, a)));
        }
    }
    return hs;
}


/// Clips a bounded vertex list by one half-plane. Vertices outside by at most
/// empty_slack are snapped onto the boundary line.
inline std::vector<Point2> clip(const std::vector<Point2>& poly, const HalfPlane& h) {
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    if (n == 0)
        return out;
    auto inside = [&](double d) { return d <= empty_slack; };
    auto snap = [&](Point2 p, double d) { return d > 0 ? p - d * h.n : p; };
    if (n == 1) {
        const double d = h.value(poly[0]);
        if (inside(d))
            out.push_back(snap(poly[0], d));
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 cur = poly[i], nxt = poly[(i + 1) % n];
        const double dc = h.value(cur), dn = h.value(nxt);
        if (inside(dc))
            out.push_back(snap(cur, dc));
        if (inside(dc) != inside(dn)) {
            // crossing of the boundary line d = 0
            const double denom = dc - dn;
            double t = denom != 0.0 ? dc / denom : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const Point2 p = cur + t * (nxt - cur);
            out.push_back(snap(p, h.value(p)));
        }
    }
    return convex_hull(std::move(out));
}

/// Minimal uniform violation of a half-plane system:  min t  s.t.
/// <n_i,p> + alpha_i <= t,  t >= -1.  Returns (t*, p*) or nullopt when the
/// system is empty (no constraints gives (-1, origin)).
inline std::optional<std::pair<double, Point2>> least_violation(const std::vector<HalfPlane>& hs) {
    if (hs.empty())
        return std::make_pair(-1.0, Point2{});
    lp::LinearProgram p;
    p.variables = 3;
    p.objective = {0, 0, 1};
    for (const auto& h : hs)
        p.add({h.n.x1, h.n.x2, -1.0}, -h.alpha);
    p.add({0, 0, -1.0}, 1.0);
    auto s = lp::solve(p);
    if (s.status != lp::Status::optimal)
        return std::nullopt;
    return std::make_pair(s.value, Point2{s.point[0], s.point[1]});
}

/// sup <u,p> over the half-plane system (assumed nonempty); +inf if unbounded.
inline double lp_support(const std::vector<HalfPlane>& hs, Point2 u) {
    lp::LinearProgram p;
    p.variables = 2;
    p.objective = {-u.x1, -u.x2};
    for (const auto& h : hs)
        p.add({h.n.x1, h.n.x2}, -h.alpha);
    auto s = lp::solve(p);
    if (s.status == lp::Status::unbounded)
        return inf;
    if (s.status == lp::Status::infeasible)
        return -inf;
    return -s.value;
}

inline bool axis_aligned(Point2 n) {
    return std::abs(n.x1) <= 1e-12 || std::abs(n.x2) <= 1e-12;
}

inline bool is_axis_rectangle(const std::vector<Point2>& v) {
    if (v.size() != 4)
        return false;
    for (std::size_t i = 0; i < 4; ++i) {
        const Point2 d = v[(i + 1) % 4] - v[i];
        if (std::abs(d.x1) > dedup_tolerance && std::abs(d.x2) > dedup_tolerance)
            return false;
    }
    return true;
}

} // namespace detail

/// Closed convex subset of the plane (or of the line, for the interval kind).
/// Emptiness is its own kind; every other value is nonempty.
class ConvexSet {
  public:
    ConvexSet() = default;

    static ConvexSet empty() { return ConvexSet(); }

    /// Convex hull of the given points.
    static ConvexSet polygon(std::vector<Point2> pts) {
        for (auto p : pts)
            if (!std::isfinite(p.x1) || !std::isfinite(p.x2))
                throw input_error("polygon vertex is not finite");
        if (pts.empty())
            throw input_error("polygon needs at least one vertex");
        return from_vertices(detail::convex_hull(std::move(pts)), SetKind::polygon);
    }
    static ConvexSet point(Point2 p) { return from_vertices({p}, SetKind::segment); }
    static ConvexSet segment(Point2 a, Point2 b) {
        if (!std::isfinite(a.x1) || !std::isfinite(a.x2) || !std::isfinite(b.x1) ||
            !std::isfinite(b.x2))
            throw input_error("segment endpoint is not finite");
        return from_vertices(detail::convex_hull({a, b}), SetKind::segment);
    }
    static ConvexSet box(Interval1 i1, Interval1 i2) {
        i1 = Interval1::make(i1.lo, i1.hi);
        i2 = Interval1::make(i2.lo, i2.hi);
        if (i1.bounded() && i2.bounded())
            return from_vertices(detail::convex_hull({{i1.lo, i2.lo},
                                                      {i1.hi, i2.lo},
                                                      {i1.hi, i2.hi},
                                                      {i1.lo, i2.hi}}),
                                 SetKind::box);
        ConvexSet s;
        s.kind_ = SetKind::box;
        if (std::isfinite(i1.hi))
            s.hs_.push_back(HalfPlane::leq({1, 0}, i1.hi));
        if (std::isfinite(i1.lo))
            s.hs_.push_back(HalfPlane::leq({-1, 0}, -i1.lo));
        if (std::isfinite(i2.hi))
            s.hs_.push_back(HalfPlane::leq({0, 1}, i2.hi));
        if (std::isfinite(i2.lo))
            s.hs_.push_back(HalfPlane::leq({0, -1}, -i2.lo));
        return s;
    }
    static ConvexSet box(const Box& b) { return box(b.i1, b.i2); }
    static ConvexSet halfplane(const HalfPlane& h) {
        ConvexSet s;
        s.kind_ = SetKind::halfplane;
        s.hs_ = {HalfPlane::make(h.n, h.alpha)};
        return s;
    }
    static ConvexSet interval(Interval1 i) {
        ConvexSet s;
        s.kind_ = SetKind::interval;
        s.interval_ = Interval1::make(i.lo, i.hi);
        return s;
    }
    static ConvexSet plane() {
        ConvexSet s;
        s.kind_ = SetKind::region;
        return s;
    }
    /// Intersection of half-planes; Empty when infeasible beyond empty_slack.
    static ConvexSet region(std::vector<HalfPlane> hs) {
        auto lv = detail::least_violation(hs);
        if (!lv || lv->first > empty_slack)
            return empty();
        if (lv->first > 0)
            return point(lv->second);
        // Bounded?
        std::array<double, 4> sup{};
        const std::array<Point2, 4> dirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
        bool bounded = true;
        for (std::size_t i = 0; i < 4; ++i) {
            sup[i] = detail::lp_support(hs, dirs[i]);
            bounded = bounded && std::isfinite(sup[i]);
        }
        if (bounded) {
            std::vector<Point2> poly = detail::convex_hull(
                {{-sup[1], -sup[3]}, {sup[0], -sup[3]}, {sup[0], sup[2]}, {-sup[1], sup[2]}});
            for (const auto& h : hs)
                poly = detail::clip(poly, h);
            if (poly.empty())
                return point(lv->second);
            return classified(std::move(poly));
        }
        ConvexSet s;
        s.hs_ = std::move(hs);
        bool all_axis = true;
        for (const auto& h : s.hs_)
            all_axis = all_axis && detail::axis_aligned(h.n);
        s.kind_ = s.hs_.size() == 1 ? SetKind::halfplane
                  : all_axis        ? SetKind::box
                                    : SetKind::region;
        return s;
    }

    SetKind kind() const { return kind_; }
    bool is_empty() const { return kind_ == SetKind::empty; }
    bool is_interval() const { return kind_ == SetKind::interval; }
    bool is_bounded() const {
        if (kind_ == SetKind::interval)
            return interval_.bounded();
        return kind_ == SetKind::empty || !vertices_.empty();
    }

    /// Counterclockwise vertices of a bounded planar set.
    const std::vector<Point2>& vertices() const { return vertices_; }
    /// Half-plane description of a planar set (empty list for the whole plane).
    const std::vector<HalfPlane>& halfplanes() const { return hs_; }
    /// Value of an interval-kind set.
    const Interval1& interval() const { return interval_; }

    /// Planar view: interval-kind sets are embedded as I x {0}.
    ConvexSet planar() const {
        if (kind_ != SetKind::interval)
            return *this;
        return box(interval_, Interval1{0.0, 0.0});
    }

    bool contains(Point2 p, double tol = 1e-9) const {
        if (is_empty())
            return false;
        if (kind_ == SetKind::interval)
            return interval_.contains(p.x1, tol) && std::abs(p.x2) <= tol;
        for (const auto& h : hs_)
            if (!h.contains(p, tol))
                return false;
        return true;
    }

    /// sup over the set of <u,p>; +inf when unbounded in that direction.
    double support(Point2 u) const {
        if (is_empty())
            return -inf;
        if (kind_ == SetKind::interval)
            return planar().support(u);
        if (!vertices_.empty()) {
            double best = -inf;
            for (auto v : vertices_)
                best = std::max(best, dot(u, v));
            return best;
        }
        return detail::lp_support(hs_, u);
    }

    /// Any point of a nonempty set.
    Point2 some_point() const {
        if (kind_ == SetKind::interval) {
            const double v = std::isfinite(interval_.lo)   ? interval_.lo
                             : std::isfinite(interval_.hi) ? interval_.hi
                                                           : 0.0;
            return {v, 0.0};
        }
        if (!vertices_.empty())
            return vertices_.front();
        auto lv = detail::least_violation(hs_);
        return lv ? lv->second : Point2{};
    }

    /// Builds a bounded set from an already-canonical vertex list, choosing
    /// the kind from its shape.
    static ConvexSet classified(std::vector<Point2> verts) {
        if (verts.empty())
            return empty();
        const SetKind k = verts.size() <= 2               ? SetKind::segment
                          : detail::is_axis_rectangle(verts) ? SetKind::box
                                                             : SetKind::polygon;
        return from_vertices(std::move(verts), k);
    }

  private:
    static ConvexSet from_vertices(std::vector<Point2> verts, SetKind kind) {
        ConvexSet s;
        s.kind_ = kind;
        s.vertices_ = std::move(verts);
        s.hs_ = detail::halfplanes_of(s.vertices_);
        return s;
    }

    SetKind kind_ = SetKind::empty;
    std::vector<Point2> vertices_;
    std::vector<HalfPlane> hs_;
    Interval1 interval_{};
};

/// S + r Q0 with Q0 = [-1,1]^2 (for intervals, [lo-r, hi+r]).
inline ConvexSet minkowski_square(const ConvexSet& s, double r) {
    if (!(r >= 0) || !std::isfinite(r))
        throw input_error("minkowski_square needs a finite r >= 0");
    if (s.is_empty() || r == 0.0)
        return s;
    if (s.is_interval())
        return ConvexSet::interval({s.interval().lo - r, s.interval().hi + r});
    if (s.is_bounded()) {
        std::vector<Point2> pts;
        for (auto v : s.vertices())
            for (Point2 c : {Point2{r, r}, Point2{-r, r}, Point2{-r, -r}, Point2{r, -r}})
                pts.push_back(v + c);
        auto out = ConvexSet::classified(detail::convex_hull(std::move(pts)));
        return out;
    }
    if (s.kind() == SetKind::halfplane) {
        const auto& h = s.halfplanes().front();
        return ConvexSet::halfplane({h.n, h.alpha - r * norm_l1(h.n)});
    }
    // General unbounded set: every edge normal of the sum is an edge normal of
    // the set or of the square, so shifting supports over that list is exact.
    std::vector<Point2> dirs;
    for (const auto& h : s.halfplanes())
        dirs.push_back(h.n);
    for (Point2 e : {Point2{1, 0}, Point2{-1, 0}, Point2{0, 1}, Point2{0, -1}})
        dirs.push_back(e);
    std::vector<HalfPlane> hs;
    for (auto u : dirs) {
        const double h = s.support(u);
        if (std::isfinite(h))
            hs.push_back(HalfPlane::leq(u, h + r * norm_l1(u)));
    }
    return ConvexSet::region(std::move(hs));
}

/// Intersection of two sets.
inline ConvexSet intersect(const ConvexSet& a, const ConvexSet& b) {
    if (a.is_empty() || b.is_empty())
        return ConvexSet::empty();
    if (a.is_interval() && b.is_interval()) {
        const double lo = std::max(a.interval().lo, b.interval().lo);
        const double hi = std::min(a.interval().hi, b.interval().hi);
        if (lo > hi + empty_slack)
            return ConvexSet::empty();
        if (lo > hi)
            return ConvexSet::interval({0.5 * (lo + hi), 0.5 * (lo + hi)});
        return ConvexSet::interval({lo, hi});
    }
    const ConvexSet pa = a.planar(), pb = b.planar();
    const ConvexSet* bounded = pa.is_bounded() ? &pa : pb.is_bounded() ? &pb : nullptr;
    if (bounded) {
        const ConvexSet& other = bounded == &pa ? pb : pa;
        std::vector<Point2> poly = bounded->vertices();
        for (const auto& h : other.halfplanes()) {
            poly = detail::clip(poly, h);
            if (poly.empty())
                return ConvexSet::empty();
        }
        return ConvexSet::classified(std::move(poly));
    }
    std::vector<HalfPlane> hs = pa.halfplanes();
    hs.insert(hs.end(), pb.halfplanes().begin(), pb.halfplanes().end());
    return ConvexSet::region(std::move(hs));
}

/// Intersection of a nonempty list of sets.
inline ConvexSet intersect(const std::vector<ConvexSet>& sets) {
    if (sets.empty())
        throw input_error("intersect needs at least one set");
    // Bounded members first keeps every intermediate result in vertex form.
    std::vector<const ConvexSet*> order;
    for (const auto& s : sets)
        if (s.is_bounded())
            order.push_back(&s);
    for (const auto& s : sets)
        if (!s.is_bounded())
            order.push_back(&s);
    ConvexSet acc = *order.front();
    for (std::size_t i = 1; i < order.size() && !acc.is_empty(); ++i)
        acc = intersect(acc, *order[i]);
    return acc;
}

/// Interval [inf x_i, sup x_i] over S (axis 0 or 1); endpoints may be infinite.
inline Interval1 project_axis(const ConvexSet& s, std::size_t axis) {
    if (s.is_empty())
        throw input_error("projection of an empty set");
    if (axis > 1)
        throw input_error("axis index must be 0 or 1");
    if (s.is_interval())
        return axis == 0 ? s.interval() : Interval1{0.0, 0.0};
    const Point2 e = axis == 0 ? Point2{1, 0} : Point2{0, 1};
    return {-s.support(-e), s.support(e)};
}

/// Smallest axis-parallel box containing S.
inline Box rect_hull(const ConvexSet& s) { return {project_axis(s, 0), project_axis(s, 1)}; }

/// Uniform-norm distance from a point to a nonempty set.
inline double dist_point(Point2 p, const ConvexSet& s) {
    if (s.is_empty())
        return 0.0;
    if (s.is_interval())
        return dist_point(p, s.planar());
    if (s.is_bounded()) {
        // S + rQ0 is cut out by the edge normals of S and of Q0, so
        // dist = max over those normals u of (<u,p> - h_S(u)) / |u|_1.
        double best = 0.0;
        auto probe = [&](Point2 u) {
            best = std::max(best, (dot(u, p) - s.support(u)) / norm_l1(u));
        };
        for (const auto& h : s.halfplanes())
            probe(h.n);
        for (Point2 e : {Point2{1, 0}, Point2{-1, 0}, Point2{0, 1}, Point2{0, -1}})
            probe(e);
        return best;
    }
    lp::LinearProgram prog;
    prog.variables = 3; // a1, a2, r
    prog.objective = {0, 0, 1};
    for (const auto& h : s.halfplanes())
        prog.add({h.n.x1, h.n.x2, 0}, -h.alpha);
    prog.add({1, 0, -1}, p.x1);
    prog.add({-1, 0, -1}, -p.x1);
    prog.add({0, 1, -1}, p.x2);
    prog.add({0, -1, -1}, -p.x2);
    auto sol = lp::solve(prog);
    return sol.status == lp::Status::optimal ? std::max(0.0, sol.value) : 0.0;
}

/// inf ||a - b||_inf over a in A, b in B; 0 if either set is empty.
inline double dist_linf(const ConvexSet& a, const ConvexSet& b) {
    if (a.is_empty() || b.is_empty())
        return 0.0;
    if (a.is_interval() && b.is_interval())
        return interval_distance(a.interval(), b.interval());
    const ConvexSet pa = a.planar(), pb = b.planar();
    if (pa.is_bounded() && pb.is_bounded()) {
        std::vector<Point2> diff;
        for (auto u : pa.vertices())
            for (auto v : pb.vertices())
                diff.push_back(u - v);
        return dist_point({0, 0}, ConvexSet::classified(detail::convex_hull(std::move(diff))));
    }
    lp::LinearProgram prog;
    prog.variables = 5; // a1, a2, b1, b2, r
    prog.objective = {0, 0, 0, 0, 1};
    for (const auto& h : pa.halfplanes())
        prog.add({h.n.x1, h.n.x2, 0, 0, 0}, -h.alpha);
    for (const auto& h : pb.halfplanes())
        prog.add({0, 0, h.n.x1, h.n.x2, 0}, -h.alpha);
    prog.add({1, 0, -1, 0, -1}, 0);
    prog.add({-1, 0, 1, 0, -1}, 0);
    prog.add({0, 1, 0, -1, -1}, 0);
    prog.add({0, -1, 0, 1, -1}, 0);
    auto sol = lp::solve(prog);
    return sol.status == lp::Status::optimal ? std::max(0.0, sol.value) : 0.0;
}

/// Hausdorff distance in the uniform norm between bounded nonempty sets.
inline double hausdorff_linf(const ConvexSet& a, const ConvexSet& b) {
    if (a.is_empty() || b.is_empty())
        throw input_error("Hausdorff distance of an empty set");
    if (!a.is_bounded() || !b.is_bounded())
        throw input_error("Hausdorff distance needs bounded sets");
    if (a.is_interval() && b.is_interval())
        return interval_hausdorff(a.interval(), b.interval());
    const ConvexSet pa = a.planar(), pb = b.planar();
    double best = 0.0;
    for (auto v : pa.vertices())
        best = std::max(best, dist_point(v, pb));
    for (auto v : pb.vertices())
        best = std::max(best, dist_point(v, pa));
    return best;
}

/// Point of S hit first when walking from `a` along the diagonals
/// a + t(1,1) and a + t(1,-1): the smaller |t| wins, diagonal (1,1) on ties.
/// Returns `a` itself when a is in S and nullopt when neither diagonal meets S.
inline std::optional<Point2> diagonal_nearest_point(Point2 a, const ConvexSet& s) {
    if (s.is_empty())
        return std::nullopt;
    const ConvexSet ps = s.planar();
    if (ps.contains(a, 1e-12))
        return a;
    std::optional<Point2> best;
    double best_t = inf;
    for (Point2 h : {Point2{1, 1}, Point2{1, -1}}) {
        double lo = -inf, hi = inf;
        bool ok = true;
        for (const auto& hp : ps.halfplanes()) {
            // <n, a + t h> + alpha <= 0
            const double slope = dot(hp.n, h);
            const double rhs = -hp.value(a);
            const double tol = 1e-12 * (1.0 + std::abs(hp.alpha) + norm_inf(a));
            if (std::abs(slope) <= 1e-14) {
                if (rhs < -tol)
                    ok = false;
            } else if (slope > 0) {
                hi = std::min(hi, rhs / slope);
            } else {
                lo = std::max(lo, rhs / slope);
            }
        }
        if (!ok)
            continue;
        if (lo > hi) {
            if (lo - hi > empty_slack)
                continue;
            lo = hi = 0.5 * (lo + hi);
        }
        const double t = std::clamp(0.0, lo, hi);
        if (std::abs(t) < best_t - 1e-12) {
            best_t = std::abs(t);
            best = a + t * h;
        }
    }
    return best;
}

/// Uniform-norm metric projection of `a` onto S. Requires a in rect_hull(S)
/// (where the projection is unique and sits on a diagonal through a).
inline Point2 metric_projection_linf(Point2 a, const ConvexSet& s) {
    if (s.is_empty())
        throw input_error("projection onto an empty set");
    const Box hull = rect_hull(s.planar());
    const double tol = 1e-7 * (1.0 + norm_inf(a));
    if (!hull.contains(a, tol))
        throw input_error("metric projection: point lies outside the rectangular hull");
    auto p = diagonal_nearest_point(a, s);
    if (!p)
        throw input_error("metric projection: no diagonal meets the set");
    return *p;
}

/// Steiner point: exterior-angle weighted average of the vertices.
inline Point2 steiner_point(const ConvexSet& s) {
    if (s.is_empty())
        throw input_error("Steiner point of an empty set");
    if (!s.is_bounded())
        throw input_error("Steiner point needs a bounded set");
    const ConvexSet ps = s.planar();
    const auto& v = ps.vertices();
    if (v.size() == 1)
        return v[0];
    if (v.size() == 2)
        return 0.5 * (v[0] + v[1]);
    Point2 acc{};
    double total = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 din = v[i] - v[(i + n - 1) % n];
        const Point2 dout = v[(i + 1) % n] - v[i];
        const double turn = std::atan2(cross(din, dout), dot(din, dout));
        acc = acc + turn * v[i];
        total += turn;
    }
    return (1.0 / total) * acc;
}

struct HellyReport {
    bool triples_intersect = false;
    bool common_point_exists = false;
    std::optional<Point2> witness;
    std::vector<std::size_t> failing_triple;
    /// The two verdicts agree, as Helly's theorem requires in the plane.
    bool consistent() const { return triples_intersect == common_point_exists; }
};

/// Checks every subfamily of at most three members and the whole family.
inline HellyReport helly_check(const std::vector<ConvexSet>& sets) {
    HellyReport rep;
    rep.triples_intersect = true;
    const std::size_t n = sets.size();
    for (std::size_t i = 0; i < n && rep.triples_intersect; ++i)
        for (std::size_t j = i; j < n && rep.triples_intersect; ++j)
            for (std::size_t k = j; k < n && rep.triples_intersect; ++k)
                if (intersect({sets[i], sets[j], sets[k]}).is_empty()) {
                    rep.triples_intersect = false;
                    rep.failing_triple = {i, j, k};
                }
    if (n == 0) {
        rep.common_point_exists = true;
        rep.witness = Point2{};
        return rep;
    }
    const ConvexSet all = intersect(sets);
    rep.common_point_exists = !all.is_empty();
    if (rep.common_point_exists)
        rep.witness = all.some_point();
    return rep;
}

enum class NormKind { general, euclidean };

/// Neighborhood constant: (3L+1)/(L-1) for a general norm,
/// 1 + 2L/sqrt(L^2-1) for the Euclidean one.
inline double theta(double L, NormKind kind = NormKind::general) {
    if (!(L > 1) || !std::isfinite(L))
        throw input_error("theta needs L > 1");
    if (kind == NormKind::general)
        return (3 * L + 1) / (L - 1);
    return 1 + 2 * L / std::sqrt(L * L - 1);
}

struct XiBounds {
    double phi; // (1+b)/(1-b), any normed plane
    double psi; // (1-b^2)^(-1/2), Euclidean plane
};

inline XiBounds xi_bounds(double beta) {
    if (!(beta >= 0 && beta < 1))
        throw input_error("xi_bounds needs 0 <= beta < 1");
    return {(1 + beta) / (1 - beta), 1 / std::sqrt(1 - beta * beta)};
}

} // namespace lipsel
