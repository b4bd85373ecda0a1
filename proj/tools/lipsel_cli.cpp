// Command-line front end. Every command reads one instance file and prints a
// JSON report on stdout. Exit codes: 0 success/accept, 1 reject/infeasible,
// 2 input error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lipsel/io.hpp"
#include "lipsel/lipsel.hpp"

namespace {

using lipsel::io::json;

struct Outcome {
    json report;
    int code = 0;
};

std::vector<double> parse_lambdas(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty() || !(v >= 0) || !std::isfinite(v))
            throw lipsel::input_error("--lambdas: '" + item + "' is not a nonnegative number");
        out.push_back(v);
    }
    if (out.size() < 2 || out.size() > 3)
        throw lipsel::input_error("--lambdas expects two or three values");
    return out;
}

bool is_halfplane(const lipsel::SetMap& F) { return F.kind == lipsel::SetKind::halfplane; }

Outcome cmd_validate(const lipsel::io::Instance& inst) {
    return {{{"command", "validate"},
             {"valid", true},
             {"points", inst.m().size()},
             {"kind", lipsel::to_string(inst.F.kind)},
             {"max_distance", inst.m().max_distance()}},
            0};
}

Outcome cmd_oracle(const lipsel::io::Instance& inst) {
    const auto r = lipsel::optimal_selection(inst.F);
    json rep{{"command", "oracle"}, {"status", lipsel::to_string(r.status)}};
    if (r.status != lipsel::OracleStatus::optimal)
        return {rep, 1};
    rep["lambda_star"] = r.lambda_star;
    rep.update(lipsel::io::selection_json(inst.m(), r.selection));
    return {rep, 0};
}

Outcome cmd_check(const lipsel::io::Instance& inst, double lambda) {
    json rep{{"command", "check"}, {"lambda", lambda}};
    lipsel::Verdict v;
    if (is_halfplane(inst.F)) {
        const auto H = lipsel::HalfPlaneMap::from_set_map(inst.F);
        v = lipsel::check_star1(H, lambda);
        if (v.accepted)
            v = lipsel::check_star2(H, lambda);
        rep["criterion"] = "star";
        rep["coverage"] = lipsel::coverage_status(H).hull_contains_origin;
    } else {
        v = lipsel::algorithm_a(inst.F, lambda);
        rep["criterion"] = "algorithm_a";
    }
    rep.update(lipsel::io::verdict_json(inst.m(), v));
    return {rep, v.accepted ? 0 : 1};
}

Outcome cmd_select(const lipsel::io::Instance& inst, const std::string& method,
                   std::optional<double> lambda) {
    const auto& F = inst.F;
    json rep{{"command", "select"}, {"method", method}};
    lipsel::Selection s;
    if (method == "algob") {
        if (lambda) {
            s = lipsel::algorithm_b(F, *lambda);
        } else {
            auto r = lipsel::near_optimal(F);
            lambda = r.lambda_hat;
            rep["search_anomaly"] = r.anomaly;
            s = std::move(r.selection);
        }
        rep["bound_factor"] = 8;
    } else {
        if (!lambda)
            lambda = lipsel::finiteness_bound(F);
        if (method == "hullcenter")
            s = lipsel::select_hull_center(F, *lambda);
        else if (method == "segmid")
            s = lipsel::select_segment_midpoint(F, *lambda);
        else
            s = lipsel::select_steiner(F, *lambda);
        if (method != "steiner")
            rep["bound_factor"] = 15;
    }
    rep["lambda"] = *lambda;
    rep.update(lipsel::io::selection_json(inst.m(), s));
    rep["membership_slack"] = lipsel::membership_slack(F, s.f);
    return {rep, 0};
}

Outcome cmd_refine(const lipsel::io::Instance& inst, const std::vector<double>& lambdas) {
    const auto t = lipsel::iterate_refine(inst.F, lambdas);
    json rep{{"command", "refine"}};
    rep.update(lipsel::io::trace_json(t));
    if (t.nonempty() && t.last().all_bounded()) {
        const auto core = lipsel::core_check(t.last(), 15 * lambdas.front());
        rep["core_worst_ratio"] = lipsel::io::number_json(core.worst_ratio);
    }
    return {rep, t.nonempty() ? 0 : 1};
}

Outcome cmd_criteria(const lipsel::io::Instance& inst, const std::string& family,
                     std::optional<double> lambda) {
    json rep{{"command", "criteria"}, {"family", family}};
    const auto& F = inst.F;
    if (family == "polygon-cf") {
        if (is_halfplane(F))
            throw lipsel::input_error("polygon-cf needs bounded polygon values");
        rep["inf_lambda"] = lipsel::io::number_json(lipsel::polygon_inf_lambda_cf(F));
        if (!lambda)
            return {rep, 0};
        const auto v = lipsel::polygon_mc2(F, *lambda);
        rep["lambda"] = *lambda;
        rep.update(lipsel::io::verdict_json(inst.m(), v));
        return {rep, v.accepted ? 0 : 1};
    }
    if (!is_halfplane(F))
        throw lipsel::input_error("family '" + family + "' needs half-plane values");
    const auto H = lipsel::HalfPlaneMap::from_set_map(F);
    rep["coverage"] = lipsel::coverage_status(H).hull_contains_origin;
    if (family == "star") {
        const auto il = lipsel::inf_lambda_star(H);
        rep["inf_lambda"] = lipsel::io::number_json(il.value);
    } else {
        rep["inf_lambda"] = lipsel::io::number_json(lipsel::inf_lambda_cf(H));
    }
    if (!lambda)
        return {rep, 0};
    lipsel::Verdict v;
    if (family == "star") {
        v = lipsel::check_star1(H, *lambda);
        if (v.accepted)
            v = lipsel::check_star2(H, *lambda);
    } else {
        v = lipsel::check_mc2(H, *lambda);
    }
    rep["lambda"] = *lambda;
    rep.update(lipsel::io::verdict_json(inst.m(), v));
    return {rep, v.accepted ? 0 : 1};
}

Outcome cmd_plot(const lipsel::io::Instance& inst, const std::string& out) {
    const auto r = lipsel::optimal_selection(inst.F);
    std::optional<lipsel::Selection> sel;
    if (r.status == lipsel::OracleStatus::optimal)
        sel = r.selection;
    const std::string text = lipsel::io::svg(inst.F, sel);
    std::ofstream f(out);
    if (!f)
        throw lipsel::input_error("cannot write '" + out + "'");
    f << text;
    return {{{"command", "plot"}, {"out", out}, {"paths", inst.F.size()}}, 0};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz selections of set-valued mappings into the plane (uniform norm)"};
    app.require_subcommand(1);
    std::string path, report_path;
    app.add_option("--report", report_path, "Also write the JSON report to this file");

    auto add = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("instance", path, "Instance JSON file")->required();
        return c;
    };
    auto* validate = add("validate", "Validate an instance");
    auto* oracle = add("oracle", "Optimal selection by linear programming");
    auto* check = add("check", "Decide a lambda (algorithm A, or the half-plane criteria)");
    auto* select = add("select", "Construct a selection");
    auto* refine = add("refine", "Iterated balanced refinement");
    auto* criteria = add("criteria", "Half-plane and edge-half-plane criteria");
    auto* plot = add("plot", "Write an SVG picture with the optimal selection");

    double check_lambda = 0;
    check->add_option("--lambda", check_lambda)->required();
    std::string method = "algob";
    std::optional<double> select_lambda, criteria_lambda;
    select->add_option("--method", method)
        ->check(CLI::IsMember({"algob", "hullcenter", "segmid", "steiner"}));
    select->add_option("--lambda", select_lambda);
    std::string lambdas;
    refine->add_option("--lambdas", lambdas, "Comma-separated lambdas, e.g. 1,3 or 1,3,15")
        ->required();
    std::string family = "star";
    criteria->add_option("--family", family)->check(CLI::IsMember({"star", "cf", "polygon-cf"}));
    criteria->add_option("--lambda", criteria_lambda);
    std::string svg_out;
    plot->add_option("--out", svg_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Outcome o;
    try {
        const auto inst = lipsel::io::load(path);
        if (*validate)
            o = cmd_validate(inst);
        else if (*oracle)
            o = cmd_oracle(inst);
        else if (*check)
            o = cmd_check(inst, check_lambda);
        else if (*select)
            o = cmd_select(inst, method, select_lambda);
        else if (*refine)
            o = cmd_refine(inst, parse_lambdas(lambdas));
        else if (*criteria)
            o = cmd_criteria(inst, family, criteria_lambda);
        else if (*plot)
            o = cmd_plot(inst, svg_out);
    } catch (const lipsel::input_error& e) {
        o = {{{"error", "input"}, {"message", e.what()}}, 2};
        std::cerr << "error: " << e.what() << '\n';
    } catch (const lipsel::refusal& e) {
        o = {{{"error", "refused"}, {"message", e.what()}}, 1};
        std::cerr << "refused: " << e.what() << '\n';
    }
    const std::string text = o.report.dump(2);
    std::cout << text << '\n';
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        f << text << '\n';
    }
    return o.code;
}
