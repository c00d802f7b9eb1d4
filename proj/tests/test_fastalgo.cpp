#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace tvq;

TEST(Adm3, CertificateMatchesEnumeration) {
    for (const auto &t : corpus::closed_upto(2)) {
        auto s = build_skeleton(t);
        auto cert = adm3_certificate(s);
        EXPECT_EQ(cert.size(), std::size_t{1} << (s.v + betti_z2(s, 1) - 1));
        auto listed = cert.colourings;
        std::sort(listed.begin(), listed.end());
        EXPECT_EQ(listed, enumerate_admissible(s, 3));
        EXPECT_EQ(cert.kernels[0].size(), static_cast<std::size_t>(s.e));
    }
}

TEST(Adm4, SetEqualsNaive) {
    for (const auto &t : corpus::closed_upto(3)) {
        auto s = build_skeleton(t);
        auto structured = adm4_structured(s);
        auto got = structured.colourings;
        std::sort(got.begin(), got.end());
        EXPECT_TRUE(std::adjacent_find(got.begin(), got.end()) == got.end());
        auto naive = enumerate_admissible(s, 4);
        std::sort(naive.begin(), naive.end());
        EXPECT_EQ(got, naive);
        auto b = bounds(s, 4);
        EXPECT_LE(static_cast<std::uint64_t>(structured.stats.leavesVisited), *b.eqLong);
    }
}

TEST(Adm4, OneVertexSphere) {
    for (const auto &t : enumerate_census(2, {true, true, std::nullopt})) {
        auto adm = adm4_structured(build_skeleton(t));
        ASSERT_EQ(adm.colourings.size(), 1u);
        EXPECT_EQ(adm.colourings[0], Colouring{std::vector<int>(adm.colourings[0].doubled.size(), 0)});
    }
}

TEST(Adm4, OneTetWithBettiOne) {
    auto list = enumerate_census(1, {false, false, 1});
    ASSERT_EQ(list.size(), 1u);
    auto s = build_skeleton(list[0]);
    EXPECT_EQ(adm4_structured(s).colourings.size(), 4u);
    auto b = bounds(s, 4);
    EXPECT_EQ(b.actual, 4u);
    EXPECT_EQ(*b.eqLong, 4u);
    EXPECT_EQ(*b.eqShort, 4u);
    EXPECT_EQ(b.naive, 9u);
    EXPECT_EQ(b.nodes.nodesVisited, 12);
    EXPECT_TRUE(b.sharp_long() && b.sharp_short());
}

TEST(TV4, EqualsNaive) {
    for (const auto &t : corpus::closed_upto(2)) {
        auto s = build_skeleton(t);
        for (int q : {1, 3, 5, 7}) {
            FieldContext ctx(4, q);
            EXPECT_EQ(tv4_structured(s, ctx).value, tv(s, ctx).value);
        }
        FieldContext c1(4, 1);
        EXPECT_LE(tv4_structured(s, c1).stats.nodesVisited, tv(s, c1).stats.nodesVisited);
    }
    FieldContext c5(5, 1);
    EXPECT_THROW(tv4_structured(build_skeleton(corpus::closed(1)[0]), c5), std::invalid_argument);
}

TEST(TV4, OneVertexSphereQuarter) {
    FieldContext ctx(4, 1);
    for (const auto &t : enumerate_census(2, {true, true, std::nullopt}))
        EXPECT_EQ(tv4_structured(t, ctx).value, ctx.from_rational(mpq_class(1, 4)));
}

TEST(OddFast, EqualsNaive) {
    for (const auto &t : corpus::one_vertex_upto(2)) {
        auto s = build_skeleton(t);
        for (int r : {3, 5, 7, 9}) {
            FieldContext ctx(r, 1);
            auto fast = tv_odd_fast(s, ctx);
            EXPECT_EQ(fast.value, tv(s, ctx).value) << serialise(t) << " r=" << r;
        }
    }
}

TEST(OddFast, Preconditions) {
    FieldContext c6(6, 1), c5q2(5, 2), c5(5, 1);
    const auto one = corpus::one_vertex_upto(1)[0];
    EXPECT_THROW(tv_odd_fast(one, c6), std::invalid_argument);
    EXPECT_THROW(tv_odd_fast(one, c5q2), std::invalid_argument);
    for (const auto &t : corpus::closed(1)) {
        if (build_skeleton(t).v > 1) {
            EXPECT_THROW(tv_odd_fast(t, c5), std::invalid_argument);
        }
    }
}

TEST(OddFast, ProjectiveSpaceIsZero) {
    for (int r : {3, 5, 7}) {
        FieldContext ctx(r, 1);
        auto fast = tv_odd_fast(corpus::rp3(), ctx);
        EXPECT_TRUE(fast.value.is_zero());
        EXPECT_EQ(fast.tv3, 0);
    }
}

TEST(OddFast, LeavesWithinPropBound) {
    for (const auto &t : corpus::closed_upto(3)) {
        auto s = build_skeleton(t);
        if (!corpus::z2_sphere(s))
            continue;
        for (int r : {5, 7, 9}) {
            FieldContext ctx(r, 1);
            auto fast = tv_odd_fast(s, ctx);
            long long bound = 1;
            for (int k = 0; k <= s.n; ++k)
                bound *= r / 2;
            EXPECT_LE(fast.stats.leavesVisited, bound);
        }
    }
}

TEST(Bounds, OneTetSpheresSmallRSharp) {
    int sharp = 0;
    for (const auto &t : enumerate_census(1, {true, true, std::nullopt})) {
        auto s = build_skeleton(t);
        auto b = bounds(s, 5);
        EXPECT_EQ(*b.smallR, 3u);
        EXPECT_EQ(b.naive, 16u);
        sharp += b.sharp_small_r() ? 1 : 0;
    }
    EXPECT_EQ(sharp, 1);
}

TEST(Bounds, ConsistentOnCensus) {
    for (const auto &t : corpus::closed_upto(2)) {
        auto s = build_skeleton(t);
        for (int r = 3; r <= 7; ++r)
            EXPECT_TRUE(bounds(s, r).consistent());
        auto b = bounds(s, 4);
        if (enumerate_admissible(s, 3).size() > 1) {
            EXPECT_LE(*b.eqLong, *b.eqShort);
        }
    }
}
