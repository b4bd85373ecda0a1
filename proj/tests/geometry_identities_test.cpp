#include <gtest/gtest.h>

#include "support/identities.hpp"

using namespace lipsel;
using namespace lipsel::gen;

namespace {

// The acceptance binary runs each identity on 10^4 cases; here a smaller
// count keeps the unit suite quick.
constexpr int cases = 2000;

void expect_clean(const IdentityTally& t) {
    EXPECT_EQ(t.failed, 0) << t.first_failure;
    EXPECT_EQ(t.passed, cases) << "only " << t.passed << " applicable, " << t.skipped << " skipped";
}

} // namespace

TEST(Identities, NeighborhoodOfHull) {
    Rng rng(101);
    expect_clean(run_identity(neighborhood_hull, rng, cases));
}

TEST(Identities, HullsDoNotIncreaseHausdorff) {
    Rng rng(102);
    expect_clean(run_identity(hausdorff_of_hulls, rng, cases));
}

TEST(Identities, HullCenterInside) {
    Rng rng(103);
    expect_clean(run_identity(hull_center_inside, rng, cases));
}

TEST(Identities, HullOfIntersection) {
    Rng rng(104);
    expect_clean(run_identity(projection_hull, rng, cases));
}

TEST(Identities, ProjectionTwoLipschitz) {
    Rng rng(105);
    expect_clean(run_identity(projection_lipschitz, rng, cases));
}

TEST(Identities, NestedProjection) {
    Rng rng(106);
    expect_clean(run_identity(nested_projection, rng, cases));
}

TEST(Identities, NeighborhoodInclusion) {
    Rng rng(107);
    expect_clean(run_identity([](Rng& r) { return neighborhood_inclusion(r, 100); }, rng, cases));
}

TEST(Identities, SymmetricCenters) {
    Rng rng(108);
    expect_clean(run_identity(symmetric_centers, rng, cases));
}

TEST(Identities, PairwiseNeighborhoods) {
    Rng rng(109);
    expect_clean(run_identity(pairwise_neighborhoods, rng, cases));
}

TEST(Identities, NestedProjectionLiesOnSegment) {
    // Prj(a;B) is on the segment from Prj(a;A) to a.
    Rng rng(110);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto B = random_polygon(rng);
        const Box hb = rect_hull(B);
        const Point2 c{uniform(rng, hb.i1.lo, hb.i1.hi), uniform(rng, hb.i2.lo, hb.i2.hi)};
        const double w = uniform(rng, 0.05, 2);
        const auto A = intersect(B, ConvexSet::box({c.x1 - w, c.x1 + w}, {c.x2 - w, c.x2 + w}));
        if (A.is_empty())
            continue;
        const Box h = rect_hull(A);
        const Point2 a{uniform(rng, h.i1.lo, h.i1.hi), uniform(rng, h.i2.lo, h.i2.hi)};
        const Point2 pa = metric_projection_linf(a, A), pb = metric_projection_linf(a, B);
        EXPECT_NEAR(dist_inf(pa, pb) + dist_inf(pb, a), dist_inf(pa, a), 1e-8) << "trial " << trial;
        EXPECT_NEAR(std::abs(cross(pb - pa, a - pa)), 0, 1e-7 * (1 + norm_inf(a - pa)));
    }
}
