#include "oracles.hpp"
#include "qrk/paradan.hpp"

#include <gtest/gtest.h>

using namespace qrk;

TEST(Paradan, OneDimensionalTerms) {
    WeightList a(1, {{1}});
    auto terms = paradan_decompose(a, {Q(1)}, {Q(1, 3)}, Gram::identity(1));
    ASSERT_EQ(terms.size(), 2u);
    for (const auto& t : terms) {
        for (Int k = -6; k <= 6; ++k) {
            if (t.s.dim() == 1) EXPECT_EQ(t.eval({k}), 1);
            else EXPECT_EQ(t.eval({k}), k <= -1 ? -1 : 0);
        }
    }
    auto rep = paradan_verify(a, {Q(1)}, {Q(1, 3)}, Gram::identity(1), Box::cube(1, -10, 10));
    EXPECT_TRUE(rep.ok);
    for (Int k = -10; k <= 10; ++k) EXPECT_EQ(rep.lhs.at({k}), k >= 0 ? 1 : 0);
}

TEST(Paradan, EmptyList) {
    auto terms = paradan_decompose(WeightList(2), {Q(1), Q(1)}, {Q(0), Q(0)}, Gram::identity(2));
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_EQ(terms[0].s.dim(), 0u);
    EXPECT_EQ(terms[0].eval({0, 0}), 1);
    EXPECT_EQ(terms[0].eval({1, 0}), 0);
}

TEST(Paradan, A2) {
    WeightList l(2, {{1, 0}, {0, 1}, {1, 1}});
    Gram g({{Q(2), Q(-1)}, {Q(-1), Q(2)}});
    auto rep = paradan_verify(l, {Q(3), Q(2)}, {Q(1, 3), Q(1, 7)}, g, Box::cube(2, -8, 8));
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.terms, 5u);
    EXPECT_TRUE(rep.half_space_violations.empty());
}

// When -gamma pairs positively with the reoriented list only the S = {0} term survives.
TEST(Paradan, DualConeCase) {
    WeightList l(2, {{1, 0}, {0, 1}, {1, 1}});
    RatVec y{Q(1), Q(1)};
    RatVec gamma{Q(-1, 3), Q(-1, 7)};
    auto terms = paradan_decompose(l, y, gamma, Gram::identity(2));
    for (const auto& t : terms) {
        if (t.s.dim() == 0) continue;
        Box::cube(2, -6, 6).for_each([&](const Weight& w) { EXPECT_EQ(t.eval(w), 0) << to_string(t.s); });
    }
    EXPECT_TRUE(paradan_verify(l, y, gamma, Gram::identity(2), Box::cube(2, -6, 6)).ok);
}

TEST(Paradan, InputErrors) {
    WeightList a(2, {{1, 0}});
    try {
        paradan_decompose(a, {Q(1), Q(0)}, {Q(0), Q(1)}, Gram::identity(2));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    }
    try {
        paradan_decompose(a, {Q(1), Q(0)}, {Q(0), Q(0)}, Gram::identity(2));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GammaNotGeneric);
    }
}

TEST(Paradan, RandomInstances) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 15; ++i) {
        std::size_t rank = 1 + rng() % 3;
        auto inst = oracle::random_list(rng, rank, 1 + rng() % 5, 3);
        std::vector<ShiftedList> data{{Weight(rank, 0), inst.list}};
        Gram g = Gram::identity(rank);
        RatVec gamma = generic_gamma(data, g, RatVec(rank, Q(0)), rng());
        auto rep = paradan_verify(inst.list, inst.y, gamma, g, Box::cube(rank, -6, 6));
        EXPECT_TRUE(rep.ok) << to_string(inst.list);
        EXPECT_TRUE(rep.half_space_violations.empty());
    }
}
