#include <gtest/gtest.h>

#include <numbers>

#include "lipsel/halfplane.hpp"
#include "lipsel/oracle.hpp"
#include "support/generators.hpp"

using namespace lipsel;

namespace {

const double root2 = std::numbers::sqrt2;

HalfPlane leq(Point2 a, double b) { return HalfPlane::leq(a, b); }

HalfPlaneMap two_planes(HalfPlane a, HalfPlane b, double rho) {
    return HalfPlaneMap(make_pseudometric({{0, rho}, {rho, 0}}), {a, b});
}

// x1 <= 0 and x1 >= 1 at distance 1.
HalfPlaneMap antipodal_pair() { return two_planes(leq({1, 0}, 0), leq({-1, 0}, -1), 1); }

// The sides lo <= x_i <= hi of a box, one half-plane per point, all
// points at distance 1. With lo > hi opposite sides are separated.
HalfPlaneMap box_sides(double lo, double hi) {
    std::vector<std::vector<double>> d(4, std::vector<double>(4, 1.0));
    for (int i = 0; i < 4; ++i)
        d[i][i] = 0;
    return HalfPlaneMap(make_pseudometric(d), {leq({1, 0}, hi), leq({-1, 0}, -lo),
                                               leq({0, 1}, hi), leq({0, -1}, -lo)});
}

Point2 unit(double t) { return {std::cos(t), std::sin(t)}; }

} // namespace

TEST(DeltaN, Examples) {
    EXPECT_EQ(delta_n({1, 0}, {0, 1}), 1.0);
    EXPECT_EQ(delta_n({1, 0}, {1, 0}), 0.0);
    EXPECT_NEAR(delta_n({1, 0}, {root2 / 2, root2 / 2}), root2 / 2, 1e-15);
}

TEST(DeltaN, BoundsCoordinateDifferences) {
    gen::Rng rng(61);
    for (int trial = 0; trial < 20000; ++trial) {
        const Point2 a = unit(gen::uniform(rng, 0, 7)), b = unit(gen::uniform(rng, 0, 7));
        const double d = std::abs(delta_n(a, b));
        EXPECT_LE(std::abs(std::abs(a.x1) - std::abs(b.x1)), d + 1e-12);
        EXPECT_LE(std::abs(std::abs(a.x2) - std::abs(b.x2)), d + 1e-12);
        // |delta| is the sine of the angle between the normals.
        EXPECT_NEAR(d, std::abs(std::sin(std::atan2(b.x2, b.x1) - std::atan2(a.x2, a.x1))), 1e-12);
    }
}

TEST(IntersectionPoint, Examples) {
    const Point2 w = intersection_point(leq({1, 0}, 1), leq({0, 1}, 2));
    EXPECT_NEAR(w.x1, 1, 1e-15);
    EXPECT_NEAR(w.x2, 2, 1e-15);
    const Point2 o = intersection_point(leq({1, 2}, 0), leq({-3, 1}, 0));
    EXPECT_NEAR(norm_inf(o), 0, 1e-15);
    EXPECT_THROW(intersection_point(leq({1, 0}, 0), leq({1, 1e-14}, 1)), input_error);
}

TEST(IntersectionPoint, LiesOnBothLines) {
    gen::Rng rng(62);
    for (int trial = 0; trial < 5000; ++trial) {
        const HalfPlane a = HalfPlane::make(unit(gen::uniform(rng, 0, 7)), gen::uniform(rng, -5, 5));
        const HalfPlane b = HalfPlane::make(unit(gen::uniform(rng, 0, 7)), gen::uniform(rng, -5, 5));
        if (std::abs(delta_n(a.n, b.n)) < 1e-3)
            continue;
        const Point2 w = intersection_point(a, b);
        EXPECT_LE(std::abs(a.value(w)), 1e-9);
        EXPECT_LE(std::abs(b.value(w)), 1e-9);
    }
}

TEST(Star1, Examples) {
    const auto F = antipodal_pair();
    EXPECT_TRUE(check_star1(F, 1).accepted);
    const auto v = check_star1(F, 0.5);
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.witness, (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(check_star1(two_planes(leq({1, 0}, 2), leq({-1, 0}, 0), 1), 0).accepted);
}

TEST(Star2, Examples) {
    const HalfPlaneMap same(make_pseudometric({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}),
                            {leq({0, 1}, 0), leq({0, 1}, 1), leq({0, 1}, 5)});
    EXPECT_TRUE(check_star2(same, 0).accepted);
    EXPECT_TRUE(check_star2(box_sides(0, 1), 0).accepted);
    // x1 >= 1 against x1 <= 0: w-points (1, .) and (0, .), brace 1.
    const auto G = box_sides(1, 0);
    EXPECT_TRUE(check_star2(G, 1).accepted);
    const auto v = check_star2(G, 0.5);
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.witness.size(), 4u);
    EXPECT_NEAR(v.lhs, 1.0, 1e-12);
    EXPECT_GT(v.lhs, v.rhs);
}

TEST(Coverage, Examples) {
    const auto m4 = make_pseudometric(std::vector<std::vector<double>>(4, std::vector<double>(4, 0)));
    const HalfPlaneMap cross(m4, {leq({1, 0}, 0), leq({-1, 0}, 0), leq({0, 1}, 0), leq({0, -1}, 0)});
    EXPECT_TRUE(coverage_status(cross).hull_contains_origin);
    const HalfPlaneMap half(m4, {leq(unit(0.1), 0), leq(unit(1.0), 0), leq(unit(2.0), 0),
                                 leq(unit(3.0), 0)});
    EXPECT_FALSE(coverage_status(half).hull_contains_origin);
    EXPECT_FALSE(coverage_status(antipodal_pair()).hull_contains_origin);
    EXPECT_TRUE(coverage_status(cross).finite);
}

TEST(InfLambdaStar, Examples) {
    const auto m = make_pseudometric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    const HalfPlaneMap constant(m, {leq({1, 0}, 1), leq({1, 0}, 1), leq({1, 0}, 1)});
    EXPECT_EQ(inf_lambda_star(constant).value, 0.0);
    const auto r = inf_lambda_star(antipodal_pair());
    EXPECT_DOUBLE_EQ(r.value, 1.0);
    EXPECT_EQ(r.binding_tag, "star1");
    EXPECT_FALSE(r.coverage_ok);
}

TEST(InfLambdaStar, IsTheInfimumOfAcceptance) {
    gen::Rng rng(63);
    for (int trial = 0; trial < 200; ++trial) {
        const auto F = gen::random_halfplane_map(rng, 3 + trial % 4);
        const double l = inf_lambda_star(F).value;
        ASSERT_TRUE(std::isfinite(l));
        EXPECT_TRUE(check_star1(F, l).accepted && check_star2(F, l).accepted) << trial;
        if (l > 1e-6)
            EXPECT_FALSE(check_star1(F, l * 0.999).accepted && check_star2(F, l * 0.999).accepted)
                << trial;
    }
}

TEST(Mc2, Examples) {
    // x = x', y = y': dist(F(x), F(y)) <= lambda rho(x,y).
    const auto F = antipodal_pair();
    EXPECT_NEAR(inf_lambda_cf(F), 1.0, 1e-9);
    EXPECT_TRUE(check_mc2(F, 1).accepted);
    EXPECT_FALSE(check_mc2(F, 0.9).accepted);
    // Parallel normals within a pair make the brace infinite.
    const auto G = two_planes(leq({1, 0}, 0), leq({1, 0}, 1), 0);
    EXPECT_EQ(inf_lambda_cf(G), 0.0);
}

TEST(HalfPlaneSandwich, RandomInstances) {
    gen::Rng rng(64);
    int covered = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto F = gen::random_halfplane_map(rng, 3 + trial % 3);
        const auto star = inf_lambda_star(F);
        const auto o = optimal_selection(F.as_set_map());
        ASSERT_EQ(o.status, OracleStatus::optimal);
        const double ls = o.lambda_star;
        EXPECT_LE(star.value / root2, ls + 1e-6) << trial;
        EXPECT_LE(inf_lambda_cf(F) / root2, ls + 1e-6) << trial;
        EXPECT_TRUE(check_star1(F, root2 * ls * (1 + 1e-9)).accepted) << trial;
        EXPECT_TRUE(check_star2(F, root2 * ls * (1 + 1e-9)).accepted) << trial;
        EXPECT_TRUE(check_mc2(F, root2 * ls * (1 + 1e-9)).accepted) << trial;
        if (star.coverage_ok) {
            ++covered;
            EXPECT_LE(ls, 8 * star.value + 1e-6) << trial;
        }
    }
    EXPECT_GT(covered, 60);
}

TEST(Projection, HomogeneousPairsMatchSignRule) {
    gen::Rng rng(65);
    for (int trial = 0; trial < 3000; ++trial) {
        const Point2 nx = unit(gen::uniform(rng, 0, 7)), ny = unit(gen::uniform(rng, 0, 7));
        const double d = delta_n(nx, ny);
        if (std::abs(d) < 1e-3)
            continue;
        const auto G = ConvexSet::region({leq(nx, 0), leq(ny, 0)});
        for (std::size_t axis = 0; axis < 2; ++axis) {
            const Interval1 p = project_axis(G, axis);
            // Axis 1 uses the second normal coordinates, axis 2 the first
            // ones with the opposite orientation.
            const double ax = axis == 0 ? nx.x2 / d : -nx.x1 / d;
            const double ay = axis == 0 ? ny.x2 / d : -ny.x1 / d;
            const double same = axis == 0 ? nx.x2 * ny.x2 : nx.x1 * ny.x1;
            if (same > 1e-9) {
                EXPECT_EQ(p.lo, -inf);
                EXPECT_EQ(p.hi, inf);
            } else if (ax <= 0 && ay >= 0) {
                EXPECT_EQ(p.lo, -inf);
                EXPECT_NEAR(p.hi, 0, 1e-9);
            } else if (ax >= 0 && ay <= 0) {
                EXPECT_NEAR(p.lo, 0, 1e-9);
                EXPECT_EQ(p.hi, inf);
            }
        }
    }
}

TEST(Projection, FattenedPairRayEndpoints) {
    gen::Rng rng(66);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const HalfPlane hx = HalfPlane::make(unit(gen::uniform(rng, 0, 7)), gen::uniform(rng, -3, 3));
        const HalfPlane hy = HalfPlane::make(unit(gen::uniform(rng, 0, 7)), gen::uniform(rng, -3, 3));
        const double d = delta_n(hx.n, hy.n);
        if (std::abs(d) < 1e-2)
            continue;
        const double d1 = gen::uniform(rng, 0, 2), d2 = gen::uniform(rng, 0, 2);
        // Euclidean fattening of a half-plane shifts its offset.
        const auto S = ConvexSet::region({{hx.n, hx.alpha - d1}, {hy.n, hy.alpha - d2}});
        const Point2 w = intersection_point(hx, hy);
        const double spread1 = (d1 * std::abs(hy.n.x2) + d2 * std::abs(hx.n.x2)) / std::abs(d);
        const double spread2 = (d1 * std::abs(hy.n.x1) + d2 * std::abs(hx.n.x1)) / std::abs(d);
        const Interval1 p1 = project_axis(S, 0), p2 = project_axis(S, 1);
        const double tol = 1e-7 * (1 + std::abs(w.x1) + std::abs(w.x2));
        if (hx.n.x2 / d <= 0 && hy.n.x2 / d >= 0 && hx.n.x2 * hy.n.x2 <= 0) {
            EXPECT_NEAR(p1.hi, w.x1 + spread1, tol);
            ++checked;
        }
        if (hx.n.x2 / d >= 0 && hy.n.x2 / d <= 0 && hx.n.x2 * hy.n.x2 <= 0)
            EXPECT_NEAR(p1.lo, w.x1 - spread1, tol);
        if (hx.n.x1 / d >= 0 && hy.n.x1 / d <= 0 && hx.n.x1 * hy.n.x1 <= 0)
            EXPECT_NEAR(p2.hi, w.x2 + spread2, tol);
        if (hx.n.x1 / d <= 0 && hy.n.x1 / d >= 0 && hx.n.x1 * hy.n.x1 <= 0)
            EXPECT_NEAR(p2.lo, w.x2 - spread2, tol);
        if (hx.n.x2 * hy.n.x2 > 0)
            EXPECT_EQ(p1.hi - p1.lo, inf);
    }
    EXPECT_GT(checked, 200);
}

TEST(PolygonMc2, Examples) {
    const auto m = make_pseudometric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    const auto tri = ConvexSet::polygon({{0, 0}, {2, 0}, {0, 2}});
    const SetMap constant(m, {tri, tri, tri}, SetKind::polygon);
    EXPECT_TRUE(polygon_mc2(constant, 0).accepted);
    // Singletons at uniform distance 2 and rho = 1.
    const SetMap pts(make_pseudometric({{0, 1}, {1, 0}}),
                     {ConvexSet::point({0, 0}), ConvexSet::point({2, 0})}, SetKind::polygon);
    EXPECT_TRUE(polygon_mc2(pts, 2).accepted);
    EXPECT_FALSE(polygon_mc2(pts, 1.9).accepted);
    EXPECT_THROW(polygon_mc2(antipodal_pair().as_set_map(), 1), input_error);
}

TEST(PolygonMc2, AcceptsRootTwoTimesOptimum) {
    gen::Rng rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        const auto F = gen::random_polygon_map(rng, 2 + trial % 3, 5);
        const double ls = optimal_selection(F).lambda_star;
        EXPECT_TRUE(polygon_mc2(F, root2 * ls * (1 + 1e-9)).accepted) << trial;
        EXPECT_LE(polygon_inf_lambda_cf(F) / root2, ls + 1e-6) << trial;
    }
}
