#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qrk;

TEST(Invariants, P1Table) {
    ManifoldModel m = builtin_p1();
    Bundle b = Bundle::trivial(m);
    RatVec y = polarizing_vector(m, 1);
    const Int tor[] = {-1, 0, -1, 0, 1, 0, 1, 0};
    const Int su2[] = {0, 0, -1, 0, 1, 0, 0, 0};
    for (Int k = -4; k <= 3; ++k) {
        std::size_t i = static_cast<std::size_t>(k + 4);
        EXPECT_EQ(total_dim(m, b, k, y), k + 1);
        EXPECT_EQ(invariant_dim(m, b, k, RootSystemData::torus(1).negative, y), tor[i]);
        EXPECT_EQ(invariant_dim(m, b, k, RootSystemData::su2().negative, y), su2[i]);
    }
}

TEST(Invariants, TwoRoutesAgree) {
    ManifoldModel f = builtin_flag3();
    Bundle b = Bundle::trivial(f);
    RatVec y = polarizing_vector(f, 1);
    for (Int k = 0; k <= 3; ++k) {
        auto d = invariant_dims(f, b, k, RootSystemData::a2().negative, y);
        EXPECT_EQ(d.via_omega, d.via_exterior) << k;
        EXPECT_EQ(d.via_omega, k == 0 ? 1 : 0) << k;
    }
}

TEST(Kostant, MatchesCharacters) {
    ManifoldModel p1 = builtin_p1();
    Bundle b = Bundle::trivial(p1);
    for (Int l = -6; l <= 6; ++l)
        EXPECT_EQ(kostant_oracle(RootSystemData::su2(), {4}, {l}), chi_multiplicity(p1, b, 4, {l}, {Q(1)}));
    EXPECT_EQ(kostant_oracle(RootSystemData::a2(), {4, 3}, {0, 0}), 3);
    EXPECT_EQ(kostant_oracle(RootSystemData::a2(), {4, 3}, {4, 3}), 1);
    EXPECT_EQ(kostant_oracle(RootSystemData::a2(), {4, 3}, {9, 9}), 0);
}

TEST(Asymptotic, Flag3Alcoves) {
    ManifoldModel f = builtin_flag3();
    Bundle b = Bundle::trivial(f);
    RatVec y = polarizing_vector(f, 1);
    AsymptoticChar a0(f, alcove_of({Q(1, 7), Q(1, 11)}, f), y);
    AsymptoticChar a1(f, alcove_of({Q(-1, 2), Q(3, 2)}, f), y);
    AsymptoticChar a2(f, alcove_of({Q(11, 4), Q(3, 2)}, f), y);
    Box::cube(2, -5, 5).for_each([&](const Weight& l) {
        EXPECT_EQ(a0.eval(b, 1, l), 3);
        EXPECT_EQ(a1.eval(b, 1, l), 4 - l[1]);
        EXPECT_EQ(a2.eval(b, 1, l), 5 - l[0]);
    });
    EXPECT_EQ(delta_asymptotic_eval(f, b, 1, alcove_of({Q(0), Q(0)}, f), {2, -1}, y), 3);
}

TEST(Asymptotic, AgreesWithCharacterOnAlcoves) {
    ManifoldModel f = builtin_flag3();
    RatVec y = polarizing_vector(f, 1);
    for (const auto& w : std::vector<RatVec>{{Q(1, 7), Q(1, 11)}, {Q(-1, 2), Q(3, 2)}, {Q(11, 4), Q(3, 2)}}) {
        auto r = lemma23_check(f, alcove_of(w, f), y);
        EXPECT_TRUE(r.ok) << to_string(w);
    }
    auto central = lemma23_check(f, alcove_of({Q(0), Q(0)}, f), y);
    for (Int v : central.delta) EXPECT_EQ(v, 3);
    ManifoldModel p1 = builtin_p1();
    for (const auto& w : std::vector<RatVec>{{Q(-3, 2)}, {Q(1, 2)}, {Q(3, 2)}})
        EXPECT_TRUE(lemma23_check(p1, alcove_of(w, p1), {Q(1)}).ok) << to_string(w);
    // The alcove around 0 is (-1, 1), where chi_L vanishes.
    EXPECT_EQ(delta_asymptotic_eval(p1, Bundle::trivial(p1), 1, alcove_of({Q(1, 2)}, p1), {0}, {Q(1)}), 0);
}

TEST(Asymptotic, YIndependent) {
    ManifoldModel f = builtin_flag3();
    Bundle b = Bundle::from_model(f);
    std::mt19937_64 rng(5);
    AlcoveId a = alcove_of({Q(-1, 2), Q(3, 2)}, f);
    AsymptoticChar d0(f, a, polarizing_vector(f, 1));
    for (int i = 0; i < 3; ++i) {
        AsymptoticChar d(f, a, polarizing_vector(f, rng()));
        Box::cube(2, -4, 4).for_each([&](const Weight& l) { EXPECT_EQ(d.eval(b, 2, l), d0.eval(b, 2, l)); });
    }
}

TEST(Agreement, LeastK) {
    ManifoldModel p1 = builtin_p1();
    AlcoveId a = alcove_of({Q(1, 2)}, p1);
    auto r = prop27_check(p1, Bundle::trivial(p1), a, {{Q(1, 2)}}, 20, {Q(1)});
    EXPECT_LE(r.k_min, 2);
    EXPECT_TRUE(r.lines_ok);

    ManifoldModel f = builtin_flag3();
    auto rf = prop27_check(f, Bundle::trivial(f), alcove_of({Q(0), Q(0)}, f), {{Q(0), Q(0)}}, 6, polarizing_vector(f, 1));
    EXPECT_LE(rf.k_min, 6);
    EXPECT_TRUE(rf.lines_ok);

    Bundle balanced = Bundle::trivial(p1);
    for (std::size_t p = 0; p < p1.fixed_points.size(); ++p) balanced.odd[p] = balanced.even[p];
    auto rb = prop27_check(p1, balanced, a, {{Q(1, 2)}}, 10, {Q(1)});
    EXPECT_EQ(rb.k_min, 0);
}

TEST(QuasiPolynomiality, P1) {
    ManifoldModel p1 = builtin_p1();
    RatVec y{Q(1)};
    auto f = qr_quasipoly_check(p1, RootSystemData::su2().negative, 1, 8, 9, 16, 6, 3, y);
    for (const auto& s : f.test) EXPECT_EQ(s.v, 0);
    EXPECT_EQ(f.qp.eval(100), 0);
    try {
        qr_quasipoly_check(dual_line_bundle(p1), RootSystemData::su2().negative, 1, 12, 13, 24, 2, 1, y);
        ADD_FAILURE() << "dual line bundle fitted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoFit);
    }
}

TEST(ComponentSums, MatchInvariants) {
    ManifoldModel f = builtin_flag3();
    auto r = theorem47_report(f, RootSystemData::a2().negative, generic_gamma(f, {Q(0), Q(0)}, 1), 1,
                              polarizing_vector(f, 1));
    EXPECT_EQ(r.total, 0);
    EXPECT_EQ(r.invariant, 0);
    ManifoldModel p1 = builtin_p1();
    auto rp = theorem47_report(p1, RootSystemData::su2().negative, generic_gamma(p1, {Q(0)}, 1), 2, {Q(1)});
    EXPECT_EQ(rp.total, 0);
}

// With the moment image moved away from 0, every component contributes 0 at 0.
TEST(ComponentSums, VanishAwayFromImage) {
    for (const auto& [m, shift] : std::vector<std::pair<ManifoldModel, Weight>>{{builtin_p1(), {3}}, {builtin_flag3(), {9, 9}}}) {
        ManifoldModel t = translate_moment(m, shift);
        RatVec y = polarizing_vector(t, 1);
        RatVec gamma = generic_gamma(t, RatVec(t.rank, Q(0)), 1);
        WeightList none(t.rank);
        for (Int k = 1; k <= 10; ++k) {
            auto r = theorem47_report(t, none, gamma, k, y);
            for (Int c : r.contribution) EXPECT_EQ(c, 0) << t.name << " k=" << k;
        }
    }
}
