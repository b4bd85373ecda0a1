#include <gtest/gtest.h>

#include "lipsel/oracle.hpp"
#include "lipsel/refinement.hpp"
#include "lipsel/selector.hpp"
#include "support/generators.hpp"

using namespace lipsel;

namespace {

SetMap two_sets(ConvexSet a, ConvexSet b, double rho, SetKind kind = SetKind::polygon) {
    return SetMap(make_pseudometric({{0, rho}, {rho, 0}}, {"x", "y"}), {a, b}, kind);
}

bool same_set(const ConvexSet& a, const ConvexSet& b, double tol = 1e-9) {
    return hausdorff_linf(a, b) <= tol;
}

// Distances rescaled so that every four-point restriction has optimum at
// most 1, with equality for some restriction.
SetMap normalized(const SetMap& F) {
    const double b = finiteness_bound(F);
    return b > 0 ? gen::rescaled(F, b) : F;
}

} // namespace

TEST(BalancedRefine, CompatibleSingletonsUnchanged) {
    const auto F = two_sets(ConvexSet::point({0, 0}), ConvexSet::point({2, 0}), 1);
    const auto G = balanced_refine(F, 2);
    EXPECT_TRUE(same_set(G[0], F[0]));
    EXPECT_TRUE(same_set(G[1], F[1]));
    EXPECT_EQ(balanced_refine(F, 1.9).empty_points().size(), 2u);
}

TEST(BalancedRefine, LambdaZeroIsTheCommonIntersection) {
    // With lambda = 0 every neighborhood has radius 0, whatever rho is.
    const auto m = make_pseudometric({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    const SetMap F(m,
                   {ConvexSet::box({0, 2}, {0, 2}), ConvexSet::box({1, 3}, {1, 3}),
                    ConvexSet::box({1.5, 6}, {0, 6})},
                   SetKind::box);
    const auto G = balanced_refine(F, 0);
    for (std::size_t x = 0; x < 3; ++x)
        EXPECT_TRUE(same_set(G[x], ConvexSet::box({1.5, 2}, {1, 2})));
}

TEST(BalancedRefine, FarBoxesEmpty) {
    const auto F = two_sets(ConvexSet::box({0, 1}, {0, 1}), ConvexSet::box({3, 4}, {3, 4}), 1,
                            SetKind::box);
    const auto G = balanced_refine(F, 1);
    EXPECT_TRUE(G[0].is_empty());
    EXPECT_THROW(balanced_refine(F, -1), input_error);
}

TEST(BalancedRefine, HalfPlanesAndIntervals) {
    const auto F = two_sets(ConvexSet::halfplane(HalfPlane::leq({1, 0}, 0)),
                            ConvexSet::halfplane(HalfPlane::leq({-1, 0}, -2)), 1,
                            SetKind::halfplane);
    const auto G = balanced_refine(F, 2);
    ASSERT_TRUE(G.all_nonempty());
    EXPECT_TRUE(G[0].contains({0, 5}));
    EXPECT_FALSE(G[0].contains({-0.1, 5}));
    const auto I = two_sets(ConvexSet::interval({0, 1}), ConvexSet::interval({3, 4}), 1,
                            SetKind::interval);
    const auto J = balanced_refine(I, 2);
    EXPECT_EQ(J[0].interval(), (Interval1{1, 1}));
    EXPECT_EQ(J[1].interval(), (Interval1{3, 3}));
}

TEST(IterateRefine, EmptyPropagates) {
    const auto F = two_sets(ConvexSet::box({0, 1}, {0, 1}), ConvexSet::box({3, 4}, {3, 4}), 1,
                            SetKind::box);
    const auto t = iterate_refine(F, {1, 3});
    EXPECT_EQ(t.empty_points[0].size(), 2u);
    EXPECT_EQ(t.empty_points[1].size(), 2u);
    EXPECT_FALSE(t.nonempty());
    EXPECT_THROW(iterate_refine(F, {}), input_error);
}

TEST(IterateRefine, SinglePointUnchanged) {
    const SetMap F(make_pseudometric({{0}}), {ConvexSet::polygon({{0, 0}, {1, 0}, {0, 1}})},
                   SetKind::polygon);
    const auto t = iterate_refine(F, {1, 3, 15});
    for (const auto& s : t.stages)
        EXPECT_TRUE(same_set(s[0], F[0]));
    EXPECT_TRUE(stabilization_check(F, {1, 3}, 15).stable);
}

TEST(CoreCheck, Examples) {
    const auto C = two_sets(ConvexSet::box({0, 1}, {0, 1}), ConvexSet::box({0, 1}, {0, 1}), 1);
    EXPECT_EQ(core_check(C, 1).worst_ratio, 0.0);
    const auto G = two_sets(ConvexSet::box({0, 1}, {0, 1}), ConvexSet::box({2, 3}, {2, 3}), 1);
    const auto r = core_check(G, 2);
    EXPECT_DOUBLE_EQ(r.worst_ratio, 2.0);
    EXPECT_TRUE(r.passed);
    EXPECT_FALSE(core_check(G, 1.5).passed);
    const auto Z = two_sets(ConvexSet::point({0, 0}), ConvexSet::point({1, 0}), 0);
    EXPECT_EQ(core_check(Z, 100).worst_ratio, inf);
    const auto H = two_sets(ConvexSet::halfplane(HalfPlane::leq({1, 0}, 0)),
                            ConvexSet::halfplane(HalfPlane::leq({1, 0}, 0)), 1);
    EXPECT_THROW(core_check(H, 1), input_error);
}

TEST(Stabilization, TinyLambdasEmptyOut) {
    // Oracle optimum 1: two points at uniform distance 2, rho = 2.
    const auto F = two_sets(ConvexSet::box({0, 1}, {0, 1}), ConvexSet::box({3, 4}, {0, 1}), 2,
                            SetKind::box);
    ASSERT_NEAR(optimal_selection(F).lambda_star, 1.0, 1e-9);
    const auto r = stabilization_check(F, {0.01, 0.03}, 15);
    EXPECT_FALSE(r.stable);
    EXPECT_FALSE(r.stage_nonempty);
    EXPECT_TRUE(stabilization_check(F, {1, 3}, 15).stable);
}

TEST(Refinement, StagesAreNested) {
    gen::Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const auto F = gen::random_polygon_map(rng, 2 + trial % 5);
        const double l = gen::uniform(rng, 0.1, 3);
        const auto t = iterate_refine(F, {l, 3 * l});
        const SetMap* prev = &F;
        for (const auto& stage : t.stages) {
            for (std::size_t x = 0; x < F.size(); ++x) {
                if (stage[x].is_empty())
                    continue;
                ASSERT_FALSE((*prev)[x].is_empty());
                for (auto v : stage[x].vertices())
                    ASSERT_LE(dist_point(v, (*prev)[x]), 1e-8) << "trial " << trial;
            }
            prev = &stage;
        }
    }
}

TEST(Refinement, OptimalSelectionSurvivesRefinement) {
    gen::Rng rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        const auto F = gen::random_polygon_map(rng, 2 + trial % 5);
        const auto o = optimal_selection(F);
        ASSERT_EQ(o.status, OracleStatus::optimal);
        const auto G = balanced_refine(F, o.lambda_star);
        for (std::size_t x = 0; x < F.size(); ++x) {
            ASSERT_FALSE(G[x].is_empty()) << "trial " << trial;
            EXPECT_LE(dist_point(o.selection.f[x], G[x]), 1e-7) << "trial " << trial;
        }
    }
}

TEST(Refinement, FourPointBoundGivesFifteenCore) {
    gen::Rng rng(33);
    for (int trial = 0; trial < 150; ++trial) {
        const auto F = normalized(gen::random_polygon_map(rng, 3 + trial % 4));
        const auto t = iterate_refine(F, {1, 3});
        ASSERT_TRUE(t.nonempty()) << "trial " << trial;
        const auto c = core_check(t.last(), 15);
        EXPECT_TRUE(c.passed) << "trial " << trial << " ratio " << c.worst_ratio;
        const auto s = stabilization_check(F, {1, 3}, 15, 1e-6);
        EXPECT_TRUE(s.stable) << "trial " << trial << " change " << s.max_change;
    }
}

TEST(Refinement, HullCenterSelectionIsCenterOfSecondStage) {
    gen::Rng rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const auto F = normalized(gen::random_polygon_map(rng, 2 + trial % 4));
        const auto s = select_hull_center(F, 1);
        const auto t = iterate_refine(F, {1, 3});
        for (std::size_t x = 0; x < F.size(); ++x) {
            const Point2 c = center(rect_hull(t.last()[x]));
            EXPECT_LE(dist_inf(s.f[x], c), 1e-12) << "trial " << trial;
        }
    }
}
