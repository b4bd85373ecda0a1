#pragma once

// JSON instances, JSON reports and SVG pictures.
//
// Instance schema:
//   {"norm":"linf","points":[ids...],
//    "metric":{"type":"matrix","d":[[...]]}
//           | {"type":"coords","coords":[[x,y],...],"induced":"linf"|"l2"},
//    "sets":{id:{"kind":"polygon","vertices":[[x,y],...]}
//             | {"kind":"halfplane","n":[n1,n2],"alpha":a}
//             | {"kind":"segment","a":[x,y],"b":[x,y]}
//             | {"kind":"box","x":[lo,hi],"y":[lo,hi]}
//             | {"kind":"interval","lo":v,"hi":v}}}
// null stands for an infinite box or interval bound.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lipsel/geometry.hpp"
#include "lipsel/metric_space.hpp"
#include "lipsel/refinement.hpp"
#include "lipsel/selector.hpp"
#include "lipsel/set_map.hpp"

namespace lipsel::io {

using json = nlohmann::json;

struct MetricSpec {
    std::string type = "matrix"; // "matrix" or "coords"
    std::vector<std::vector<double>> d;
    std::vector<Point2> coords;
    std::string induced = "linf";
};

struct Instance {
    MetricSpec metric;
    SetMap F;

    const PseudoMetric& m() const { return F.m; }
};

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw input_error(where + ": " + what);
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object())
        fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        fail(where, std::string("missing field '") + key + "'");
    return *it;
}

inline double number(const json& v, const std::string& where) {
    if (!v.is_number())
        fail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        fail(where, "number is not finite");
    return d;
}

/// A bound that may be null (meaning -inf or +inf per `null_value`).
inline double bound(const json& v, double null_value, const std::string& where) {
    if (v.is_null())
        return null_value;
    return number(v, where);
}

inline Point2 point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2)
        fail(where, "expected a pair [x, y]");
    return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

inline Interval1 interval(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2)
        fail(where, "expected a pair [lo, hi]");
    const double lo = bound(v[0], -inf, where + "[0]");
    const double hi = bound(v[1], inf, where + "[1]");
    if (lo > hi)
        fail(where, "lo exceeds hi");
    return {lo, hi};
}

inline SetKind kind_from_string(const std::string& s, const std::string& where) {
    if (s == "polygon")
        return SetKind::polygon;
    if (s == "halfplane")
        return SetKind::halfplane;
    if (s == "segment")
        return SetKind::segment;
    if (s == "box")
        return SetKind::box;
    if (s == "interval")
        return SetKind::interval;
    fail(where, "unknown set kind '" + s + "'");
}

inline ConvexSet parse_set(const json& v, SetKind kind, const std::string& where) {
    switch (kind) {
    case SetKind::polygon: {
        const json& vs = field(v, "vertices", where);
        if (!vs.is_array() || vs.empty())
            fail(where + ".vertices", "expected a nonempty array of points");
        std::vector<Point2> pts;
        for (std::size_t i = 0; i < vs.size(); ++i)
            pts.push_back(point(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
        return ConvexSet::polygon(std::move(pts));
    }
    case SetKind::halfplane: {
        const Point2 n = point(field(v, "n", where), where + ".n");
        const double a = number(field(v, "alpha", where), where + ".alpha");
        if (n.x1 == 0 && n.x2 == 0)
            fail(where + ".n", "normal must be nonzero");
        return ConvexSet::halfplane(HalfPlane::make(n, a));
    }
    case SetKind::segment:
        return ConvexSet::segment(point(field(v, "a", where), where + ".a"),
                                  point(field(v, "b", where), where + ".b"));
    case SetKind::box: {
        const Interval1 x = interval(field(v, "x", where), where + ".x");
        const Interval1 y = interval(field(v, "y", where), where + ".y");
        for (const auto& i : {x, y})
            if (i.lo == inf || i.hi == -inf)
                fail(where, "box bound has the wrong infinite sign");
        return ConvexSet::box(x, y);
    }
    case SetKind::interval: {
        const double lo = bound(field(v, "lo", where), -inf, where + ".lo");
        const double hi = bound(field(v, "hi", where), inf, where + ".hi");
        if (lo > hi)
            fail(where, "lo exceeds hi");
        return ConvexSet::interval({lo, hi});
    }
    default:
        fail(where, "unsupported set kind");
    }
}

inline json bound_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline json point_json(Point2 p) { return json::array({p.x1, p.x2}); }

} // namespace detail

/// Distance table induced by planar coordinates.
inline std::vector<std::vector<double>> induced_distances(const std::vector<Point2>& c,
                                                          const std::string& norm) {
    std::vector<std::vector<double>> d(c.size(), std::vector<double>(c.size(), 0.0));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            d[i][j] = norm == "l2" ? norm_l2(c[i] - c[j]) : norm_inf(c[i] - c[j]);
    return d;
}

inline Instance parse_instance(const json& doc) {
    using detail::fail;
    using detail::field;
    if (!doc.is_object())
        fail("$", "instance must be a JSON object");
    const json& norm = field(doc, "norm", "$");
    if (!norm.is_string() || norm.get<std::string>() != "linf")
        fail("$.norm", "only \"linf\" is supported");

    const json& pts = field(doc, "points", "$");
    if (!pts.is_array() || pts.empty())
        fail("$.points", "expected a nonempty array of ids");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!pts[i].is_string())
            fail("$.points[" + std::to_string(i) + "]", "id must be a string");
        const auto id = pts[i].get<std::string>();
        if (std::find(ids.begin(), ids.end(), id) != ids.end())
            fail("$.points[" + std::to_string(i) + "]", "duplicate id '" + id + "'");
        ids.push_back(id);
    }
    const std::size_t n = ids.size();

    Instance inst;
    const json& metric = field(doc, "metric", "$");
    const json& type = field(metric, "type", "$.metric");
    if (!type.is_string())
        fail("$.metric.type", "expected a string");
    inst.metric.type = type.get<std::string>();
    if (inst.metric.type == "matrix") {
        const json& d = field(metric, "d", "$.metric");
        if (!d.is_array() || d.size() != n)
            fail("$.metric.d", "expected " + std::to_string(n) + " rows");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string w = "$.metric.d[" + std::to_string(i) + "]";
            if (!d[i].is_array() || d[i].size() != n)
                fail(w, "expected " + std::to_string(n) + " entries");
            std::vector<double> row;
            for (std::size_t j = 0; j < n; ++j)
                row.push_back(detail::number(d[i][j], w + "[" + std::to_string(j) + "]"));
            inst.metric.d.push_back(std::move(row));
        }
    } else if (inst.metric.type == "coords") {
        const json& c = field(metric, "coords", "$.metric");
        if (!c.is_array() || c.size() != n)
            fail("$.metric.coords", "expected " + std::to_string(n) + " points");
        for (std::size_t i = 0; i < n; ++i)
            inst.metric.coords.push_back(
                detail::point(c[i], "$.metric.coords[" + std::to_string(i) + "]"));
        const json& ind = field(metric, "induced", "$.metric");
        if (!ind.is_string() || (ind != "linf" && ind != "l2"))
            fail("$.metric.induced", "expected \"linf\" or \"l2\"");
        inst.metric.induced = ind.get<std::string>();
        inst.metric.d = induced_distances(inst.metric.coords, inst.metric.induced);
    } else {
        fail("$.metric.type", "unknown metric type '" + inst.metric.type + "'");
    }
    PseudoMetric m;
    try {
        auto r = validate_pseudometric(inst.metric.d, ids);
        if (auto* bad = std::get_if<std::vector<AxiomViolation>>(&r))
            fail("$.metric", "not a pseudometric: " + bad->front().describe());
        m = std::get<PseudoMetric>(std::move(r));
    } catch (const input_error& e) {
        const std::string msg = e.what();
        if (msg.rfind("$.metric", 0) == 0)
            throw;
        fail("$.metric", msg);
    }

    const json& sets = field(doc, "sets", "$");
    if (!sets.is_object())
        fail("$.sets", "expected an object keyed by point id");
    for (auto it = sets.begin(); it != sets.end(); ++it)
        if (std::find(ids.begin(), ids.end(), it.key()) == ids.end())
            fail("$.sets." + it.key(), "unknown point id");
    std::vector<ConvexSet> values;
    std::optional<SetKind> kind;
    for (const auto& id : ids) {
        const std::string w = "$.sets." + id;
        auto it = sets.find(id);
        if (it == sets.end())
            fail(w, "missing set for point");
        const json& k = field(*it, "kind", w);
        if (!k.is_string())
            fail(w + ".kind", "expected a string");
        const SetKind sk = detail::kind_from_string(k.get<std::string>(), w + ".kind");
        if (kind && *kind != sk)
            fail(w + ".kind", std::string("mixed set kinds: expected '") + to_string(*kind) + "'");
        kind = sk;
        try {
            values.push_back(detail::parse_set(*it, sk, w));
        } catch (const input_error& e) {
            const std::string msg = e.what();
            if (msg.rfind("$.", 0) == 0)
                throw;
            fail(w, msg);
        }
    }
    inst.F = SetMap(std::move(m), std::move(values), *kind);
    return inst;
}

inline Instance load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
    return parse_instance(doc);
}

inline json set_json(const ConvexSet& s, SetKind kind) {
    using detail::bound_json;
    using detail::point_json;
    json j;
    j["kind"] = to_string(kind);
    switch (kind) {
    case SetKind::polygon: {
        json vs = json::array();
        for (auto v : s.vertices())
            vs.push_back(point_json(v));
        j["vertices"] = vs;
        break;
    }
    case SetKind::halfplane: {
        const auto& h = s.halfplanes().front();
        j["n"] = point_json(h.n);
        j["alpha"] = h.alpha;
        break;
    }
    case SetKind::segment:
        j["a"] = point_json(s.vertices().front());
        j["b"] = point_json(s.vertices().back());
        break;
    case SetKind::box: {
        const Box b = rect_hull(s);
        j["x"] = json::array({bound_json(b.i1.lo), bound_json(b.i1.hi)});
        j["y"] = json::array({bound_json(b.i2.lo), bound_json(b.i2.hi)});
        break;
    }
    case SetKind::interval:
        j["lo"] = bound_json(s.interval().lo);
        j["hi"] = bound_json(s.interval().hi);
        break;
    default:
        throw input_error("cannot serialize set kind " + std::string(to_string(kind)));
    }
    return j;
}

inline json instance_json(const Instance& inst) {
    json doc;
    doc["norm"] = "linf";
    doc["points"] = inst.m().ids();
    json metric;
    metric["type"] = inst.metric.type;
    if (inst.metric.type == "coords") {
        json c = json::array();
        for (auto p : inst.metric.coords)
            c.push_back(detail::point_json(p));
        metric["coords"] = c;
        metric["induced"] = inst.metric.induced;
    } else {
        metric["d"] = inst.metric.d;
    }
    doc["metric"] = metric;
    json sets = json::object();
    for (std::size_t i = 0; i < inst.F.size(); ++i)
        sets[inst.m().id(i)] = set_json(inst.F[i], inst.F.kind);
    doc["sets"] = sets;
    return doc;
}

/// Instance with an explicit distance matrix.
inline Instance make_instance(const SetMap& F) {
    Instance inst;
    inst.metric.type = "matrix";
    inst.metric.d.assign(F.size(), std::vector<double>(F.size(), 0.0));
    for (std::size_t i = 0; i < F.size(); ++i)
        for (std::size_t j = 0; j < F.size(); ++j)
            inst.metric.d[i][j] = F.m(i, j);
    inst.F = F;
    return inst;
}

inline void save(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw input_error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

// ---- reports ---------------------------------------------------------------

inline json number_json(double v) {
    if (std::isfinite(v))
        return v;
    return v > 0 ? "inf" : "-inf";
}

inline json selection_json(const PseudoMetric& m, const Selection& s) {
    json f = json::object();
    for (std::size_t i = 0; i < s.f.size(); ++i)
        f[m.id(i)] = detail::point_json(s.f[i]);
    return {{"selection", f}, {"seminorm", number_json(s.seminorm)}};
}

inline json verdict_json(const PseudoMetric& m, const Verdict& v) {
    json j;
    j["accepted"] = v.accepted;
    if (!v.accepted) {
        json w = json::array();
        for (auto i : v.witness)
            w.push_back(m.id(i));
        j["witness"] = {{"points", w},
                        {"inequality", v.tag},
                        {"lhs", number_json(v.lhs)},
                        {"rhs", number_json(v.rhs)}};
    }
    return j;
}

inline json set_summary_json(const ConvexSet& s) {
    json j;
    j["kind"] = to_string(s.kind());
    if (s.is_empty())
        return j;
    if (s.is_interval()) {
        j["lo"] = number_json(s.interval().lo);
        j["hi"] = number_json(s.interval().hi);
    } else if (s.is_bounded()) {
        json vs = json::array();
        for (auto v : s.vertices())
            vs.push_back(detail::point_json(v));
        j["vertices"] = vs;
    } else {
        json hs = json::array();
        for (const auto& h : s.halfplanes())
            hs.push_back({{"n", detail::point_json(h.n)}, {"alpha", h.alpha}});
        j["halfplanes"] = hs;
    }
    return j;
}

inline json trace_json(const RefinementTrace& t) {
    json stages = json::array();
    for (std::size_t k = 0; k < t.stages.size(); ++k) {
        const auto& st = t.stages[k];
        json sets = json::object();
        for (std::size_t i = 0; i < st.size(); ++i)
            sets[st.m.id(i)] = set_summary_json(st[i]);
        json empty = json::array();
        for (auto i : t.empty_points[k])
            empty.push_back(st.m.id(i));
        stages.push_back({{"lambda", t.lambdas[k]}, {"sets", sets}, {"empty_points", empty}});
    }
    return {{"lambdas", t.lambdas}, {"stages", stages}};
}

// ---- SVG -------------------------------------------------------------------

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace detail

/// Static picture: one path per set (unbounded sets are clipped to the view)
/// and one polyline through the selection in point order.
inline std::string svg(const SetMap& F, const std::optional<Selection>& sel = std::nullopt) {
    // View box from the bounded parts, the boundary lines' anchor points,
    // and the selection.
    double lo1 = inf, lo2 = inf, hi1 = -inf, hi2 = -inf;
    auto grow = [&](Point2 p) {
        lo1 = std::min(lo1, p.x1);
        hi1 = std::max(hi1, p.x1);
        lo2 = std::min(lo2, p.x2);
        hi2 = std::max(hi2, p.x2);
    };
    for (std::size_t i = 0; i < F.size(); ++i) {
        const ConvexSet s = F[i].planar();
        if (s.is_empty())
            continue;
        if (s.is_bounded())
            for (auto v : s.vertices())
                grow(v);
        else
            for (const auto& h : s.halfplanes())
                grow(-h.alpha * h.n); // foot of the perpendicular from the origin
    }
    if (sel)
        for (auto p : sel->f)
            grow(p);
    if (!(lo1 <= hi1)) {
        lo1 = lo2 = -1;
        hi1 = hi2 = 1;
    }
    const double pad = 0.1 * std::max({hi1 - lo1, hi2 - lo2, 1.0});
    lo1 -= pad, lo2 -= pad, hi1 += pad, hi2 += pad;
    const ConvexSet view = ConvexSet::box({lo1, hi1}, {lo2, hi2});
    const double w = hi1 - lo1, h = hi2 - lo2;
    const double stroke = 0.004 * std::max(w, h);

    std::ostringstream out;
    using detail::fmt;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\""
        << fmt(600.0 * h / w) << "\" viewBox=\"" << fmt(lo1) << ' ' << fmt(-hi2) << ' ' << fmt(w)
        << ' ' << fmt(h) << "\">\n"
        << "<g transform=\"scale(1,-1)\" fill-opacity=\"0.15\" stroke-width=\"" << fmt(stroke)
        << "\">\n";
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    for (std::size_t i = 0; i < F.size(); ++i) {
        const ConvexSet s = intersect(F[i].planar(), view);
        const char* color = palette[i % 8];
        out << "<path id=\"set-" << F.m.id(i) << "\" fill=\"" << color << "\" stroke=\"" << color
            << "\" d=\"";
        const auto& vs = s.vertices();
        for (std::size_t k = 0; k < vs.size(); ++k)
            out << (k == 0 ? "M" : " L") << fmt(vs[k].x1) << ',' << fmt(vs[k].x2);
        if (!vs.empty())
            out << " Z";
        out << "\"/>\n";
    }
    if (sel) {
        out << "<polyline id=\"selection\" fill=\"none\" stroke=\"black\" points=\"";
        for (std::size_t k = 0; k < sel->f.size(); ++k)
            out << (k ? " " : "") << fmt(sel->f[k].x1) << ',' << fmt(sel->f[k].x2);
        out << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace lipsel::io
