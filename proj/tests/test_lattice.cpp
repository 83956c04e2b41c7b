#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qrk;

namespace {

const Weight A{1, 0}, B{0, 1}, AB{1, 1};

WeightList a2_positive() { return WeightList(2, {A, B, AB}); }

}  // namespace

TEST(WeightList, CanonicalMerge) {
    WeightList l(2, {{0, 1}, {1, 0}, {0, 1}});
    ASSERT_EQ(l.entries().size(), 2u);
    EXPECT_EQ(l.entries()[0].w, (Weight{0, 1}));
    EXPECT_EQ(l.entries()[0].mult, 2);
    EXPECT_EQ(l.size(), 3u);
    EXPECT_EQ(l, WeightList(2, {{1, 0}, {0, 1}, {0, 1}}));
}

TEST(Polarize, Examples) {
    WeightList one(1, {{1}});
    auto p = polarize(one, {Q(1)});
    EXPECT_EQ(p.plus, one);
    EXPECT_TRUE(p.minus.empty());

    auto e = polarize(WeightList(2), {Q(1), Q(2)});
    EXPECT_TRUE(e.plus.empty() && e.minus.empty());

    auto q = polarize(WeightList(2, {{1, 0}, {-1, 1}}), {Q(1), Q(1, 3)});
    EXPECT_EQ(q.plus, WeightList(2, {{1, 0}}));
    EXPECT_EQ(q.minus, WeightList(2, {{-1, 1}}));

    EXPECT_THROW(polarize(WeightList(2, {{1, -1}}), {Q(1), Q(1)}), Error);
}

TEST(Regularity, Examples) {
    WeightList l = a2_positive();
    EXPECT_FALSE(is_regular({Q(1, 2), Q(0)}, l));
    EXPECT_TRUE(is_regular({Q(1, 3), Q(1, 7)}, l));
    EXPECT_FALSE(is_regular({Q(0), Q(1)}, WeightList(2, {A})));
}

TEST(RationalSubspaces, Examples) {
    auto one = rational_subspaces(WeightList(1, {{1}}));
    EXPECT_EQ(one.size(), 2u);
    auto none = rational_subspaces(WeightList(2));
    ASSERT_EQ(none.size(), 1u);
    EXPECT_EQ(none[0].dim(), 0u);
    auto a2 = rational_subspaces(a2_positive());
    ASSERT_EQ(a2.size(), 5u);
    std::size_t lines = 0;
    for (const auto& s : a2) lines += s.dim() == 1;
    EXPECT_EQ(lines, 3u);
}

TEST(RationalSubspaces, MatchSubsetEnumeration) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        std::size_t rank = 1 + rng() % 3;
        auto inst = oracle::random_list(rng, rank, 1 + rng() % 5, 2);
        std::set<std::string> want;
        const auto& ws = inst.ws;
        for (std::size_t mask = 0; mask < (1u << ws.size()); ++mask) {
            std::vector<Weight> sub;
            for (std::size_t j = 0; j < ws.size(); ++j)
                if (mask & (1u << j)) sub.push_back(ws[j]);
            want.insert(Subspace::span_of(rank, sub).key());
        }
        std::set<std::string> got;
        for (const auto& s : rational_subspaces(inst.list)) got.insert(s.key());
        EXPECT_EQ(got, want) << to_string(inst.list);
    }
}

TEST(Projection, Examples) {
    Gram a2({{Q(2), Q(-1)}, {Q(-1), Q(2)}});
    RatVec g{Q(1), Q(0)};
    auto full = orthogonal_project(g, Subspace::span_of(2, {A, B}), a2);
    EXPECT_EQ(full.gamma_s, g);
    EXPECT_EQ(full.y, (RatVec{Q(0), Q(0)}));
    auto zero = orthogonal_project(g, Subspace::zero(2), a2);
    EXPECT_EQ(zero.gamma_s, (RatVec{Q(0), Q(0)}));
    EXPECT_EQ(zero.y, (RatVec{Q(-1), Q(0)}));
    auto line = orthogonal_project(g, Subspace::span_of(2, {AB}), a2);
    EXPECT_EQ(line.gamma_s, (RatVec{Q(1, 2), Q(1, 2)}));
    EXPECT_EQ(line.y, (RatVec{Q(-1, 2), Q(1, 2)}));
    EXPECT_EQ(a2.inner(line.y, to_q(AB)), 0);
}

TEST(Topes, OneDimensional) {
    WeightList l(1, {{1}});
    auto plus = tope_of({Q(3)}, l);
    auto minus = tope_of({Q(-1, 2)}, l);
    EXPECT_FALSE(plus == minus);
    EXPECT_TRUE(tope_of({Q(1, 100)}, l) == plus);
    EXPECT_THROW(tope_of({Q(0)}, l), Error);
}

// A lattice basis of Lambda cap S must produce every lattice point of S in a box.
TEST(SublatticeBasis, Saturated) {
    EXPECT_EQ(sublattice_basis(Subspace::span_of(2, {{2, 0}}), 2), (std::vector<Weight>{{1, 0}}));
    EXPECT_EQ(sublattice_basis(Subspace::span_of(2, {{1, 1}}), 2), (std::vector<Weight>{{1, 1}}));
    auto full = sublattice_basis(Subspace::span_of(2, {{2, 0}, {0, 2}}), 2);
    ASSERT_EQ(full.size(), 2u);
    EXPECT_EQ(linalg::rank_of({to_q(full[0]), to_q(full[1])}), 2u);
    Q det = Q(full[0][0] * full[1][1] - full[0][1] * full[1][0]);
    EXPECT_EQ(abs(det), 1);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        std::vector<Weight> gens;
        std::size_t k = 1 + rng() % 2;
        for (std::size_t j = 0; j < k; ++j) {
            Weight w(3);
            do {
                for (auto& x : w) x = static_cast<Int>(rng() % 9) - 4;
            } while (!oracle::nonzero(w));
            gens.push_back(w);
        }
        Subspace s = Subspace::span_of(3, gens);
        auto basis = sublattice_basis(s, 3);
        ASSERT_EQ(basis.size(), s.dim());
        Box::cube(3, -4, 4).for_each([&](const Weight& l) {
            if (!s.contains(l)) return;
            std::vector<RatVec> cols;
            for (const auto& b : basis) cols.push_back(to_q(b));
            auto c = linalg::coordinates(cols, to_q(l));
            ASSERT_TRUE(c.has_value());
            for (const auto& x : *c) EXPECT_EQ(x.get_den(), 1) << to_string(l);
        });
    }
}

TEST(GenericGamma, Examples) {
    ManifoldModel p1 = builtin_p1();
    RatVec g = generic_gamma(p1, {Q(0)}, 1);
    EXPECT_TRUE(genericity_violation(g, p1.shifted_lists(), p1.gram).empty());
    EXPECT_EQ(generic_gamma(p1, {Q(0)}, 1), g);

    std::vector<ShiftedList> single{{Weight{0}, WeightList(1, {{1}})}};
    EXPECT_EQ(generic_gamma(single, Gram::identity(1), {Q(7, 3)}, 4), (RatVec{Q(7, 3)}));
    EXPECT_FALSE(genericity_violation({Q(0)}, single, Gram::identity(1)).empty());
}

TEST(Alcoves, WallsRaise) {
    ManifoldModel p1 = builtin_p1();
    EXPECT_THROW(alcove_of({Q(1)}, p1), Error);
    EXPECT_NO_THROW(alcove_of({Q(1, 2)}, p1));
    EXPECT_TRUE(alcove_of({Q(1, 2)}, p1) == alcove_of({Q(-1, 2)}, p1));
    EXPECT_FALSE(alcove_of({Q(1, 2)}, p1) == alcove_of({Q(3, 2)}, p1));
    ManifoldModel f = builtin_flag3();
    EXPECT_TRUE(alcove_of({Q(1, 7), Q(1, 11)}, f) == alcove_of({Q(0), Q(0)}, f));
    EXPECT_THROW(alcove_of({Q(4), Q(3)}, f), Error);
}
