// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.

#include "oracles.hpp"
#include "qrk/paradan.hpp"
#include "qrk/reduction.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace qrk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Result {
    bool ok = true;
    std::ostringstream note;
    void fail(const std::string& why) {
        if (ok) note << why;
        ok = false;
    }
};

Result c1_p1_table() {
    Result r;
    auto t0 = Clock::now();
    const Int dim[] = {-3, -2, -1, 0, 1, 2, 3, 4};
    const Int tor[] = {-1, 0, -1, 0, 1, 0, 1, 0};
    const Int su2[] = {0, 0, -1, 0, 1, 0, 0, 0};
    ManifoldModel m = builtin_p1();
    Bundle b = Bundle::trivial(m);
    RatVec y = polarizing_vector(m, 1);
    auto t = RootSystemData::torus(1), s = RootSystemData::su2();
    for (Int k = -4; k <= 3; ++k) {
        std::size_t i = static_cast<std::size_t>(k + 4);
        Int d = total_dim(m, b, k, y), it = invariant_dim(m, b, k, t.negative, y), is = invariant_dim(m, b, k, s.negative, y);
        if (d != dim[i] || it != tor[i] || is != su2[i]) {
            std::ostringstream o;
            o << "k=" << k << " got " << d << "," << it << "," << is;
            r.fail(o.str());
        }
    }
    double sec = seconds_since(t0);
    if (sec >= 1.0) r.fail("too slow");
    r.note << " (" << sec << " s)";
    return r;
}

Result c2_p1_character() {
    Result r;
    ManifoldModel m = builtin_p1();
    FormalCharacter ch = chi_table(m, Bundle::trivial(m), 4, Box::cube(1, -8, 8), polarizing_vector(m, 1));
    FormalCharacter want(1);
    for (Int w : {-4, -2, 0, 2, 4}) want.add({w}, 1);
    if (!(ch == want)) r.fail("support differs");
    return r;
}

Result c3_flag3_asymptotic() {
    Result r;
    ManifoldModel m = builtin_flag3();
    Bundle b = Bundle::trivial(m);
    RatVec y = polarizing_vector(m, 1);
    struct Case {
        RatVec witness;
        std::function<Int(Int, Int)> f;
    };
    std::vector<Case> cases = {
        {{Q(1, 7), Q(1, 11)}, [](Int, Int) { return Int(3); }},
        {{Q(-1, 2), Q(3, 2)}, [](Int, Int n2) { return 4 - n2; }},
        {{Q(11, 4), Q(3, 2)}, [](Int n1, Int) { return 5 - n1; }},
    };
    std::size_t total = 0;
    for (const auto& c : cases) {
        AsymptoticChar d(m, alcove_of(c.witness, m), y);
        std::size_t n = 0;
        // 13 consecutive values in each coordinate meet every coset of any period up to 13.
        Box::cube(2, -6, 6).for_each([&](const Weight& l) {
            ++n;
            if (d.eval(b, 1, l) != c.f(l[0], l[1])) r.fail("alcove " + to_string(c.witness) + " at " + to_string(l));
        });
        std::size_t period = 1;
        for (std::size_t p = 0; p < m.fixed_points.size(); ++p)
            period = std::max<std::size_t>(period, static_cast<std::size_t>(d.delta(p).period()));
        if (period > 13) r.fail("period above 13");
        if (n < 20) r.fail("fewer than 20 points");
        total += n;
    }
    r.note << " (" << total << " points)";
    return r;
}

Result c4_paradan_1d() {
    Result r;
    WeightList phi(1, {{1}});
    for (Q g : {Q(1, 3), Q(-1, 3)}) {
        ParadanReport rep = paradan_verify(phi, {Q(1)}, {g}, Gram::identity(1), Box::cube(1, -10, 10));
        if (!rep.ok) r.fail("gamma " + format_rational(g));
    }
    return r;
}

Result c5_random_paradan() {
    Result r;
    auto t0 = Clock::now();
    std::mt19937_64 rng(35);
    int passed = 0;
    for (int i = 0; i < 50; ++i) {
        std::size_t rank = 1 + rng() % 3, size = 1 + rng() % 6;
        auto inst = oracle::random_list(rng, rank, size, 3);
        std::vector<ShiftedList> data{{Weight(rank, 0), inst.list}};
        Gram g = Gram::identity(rank);
        RatVec gamma = generic_gamma(data, g, RatVec(rank, Q(0)), rng());
        if (!genericity_violation(gamma, data, g).empty()) {
            r.fail("gamma not generic");
            continue;
        }
        ParadanReport rep = paradan_verify(inst.list, inst.y, gamma, g, Box::cube(rank, -8, 8));
        if (rep.ok) ++passed;
        else r.fail(to_string(inst.list));
    }
    double sec = seconds_since(t0);
    if (sec >= 60.0) r.fail("too slow");
    r.note << " (" << passed << "/50, " << sec << " s)";
    return r;
}

Result c6_flag3_decomposition() {
    Result r;
    ManifoldModel m = builtin_flag3();
    Bundle b = Bundle::trivial(m);
    RatVec y = polarizing_vector(m, 1);
    RatVec gamma = generic_gamma(m, {Q(0), Q(0)}, 1);
    Box box = support_hull(m, b, 1);
    DecompositionReport rep = decomposition_verify(m, b, 1, gamma, box, y);
    if (!rep.ok) r.fail("decomposition");
    auto comp = [&](std::vector<std::string> ids) {
        for (std::size_t i = 0; i < m.components.size(); ++i)
            if (m.components[i].ids == ids) return i;
        throw std::runtime_error("component missing");
    };
    const Weight mu123 = m.fixed_points[m.index_of("p123")].mu;
    const Weight mu132 = m.fixed_points[m.index_of("p132")].mu;
    std::size_t cm = *m.whole_manifold(), c123 = comp({"p123"}), ca = comp({"p123", "p213"}), cb = comp({"p132", "p231"});
    box.for_each([&](const Weight& l) {
        if (rep.terms[cm].at(l) != 3) r.fail("Term_M at " + to_string(l));
        if (rep.terms[c123].at(l) != oracle::product_count_p123(l, mu123)) r.fail("Term_p123 at " + to_string(l));
        if (rep.terms[ca].at(l) != oracle::product_count_edge(l, {mu123[0] + 1, mu123[1] + 2}, 1))
            r.fail("Term_C[p123,p213] at " + to_string(l));
        if (rep.terms[cb].at(l) != oracle::product_count_edge(l, {mu132[0] + 1, mu132[1] + 1}, -1))
            r.fail("Term_C[p132,p231] at " + to_string(l));
    });
    AlcoveId central = alcove_of({Q(1, 7), Q(1, 11)}, m);
    if (!(alcove_of(gamma, m) == central)) r.fail("gamma not in the central alcove");
    ComponentTerm tm(m, cm, gamma, y);
    for (const auto& l : std::vector<Weight>{{0, 0}, {3, -2}, {-5, 7}, {9, 9}})
        if (tm.eval(b, 1, l) != 3) r.fail("Term_M at " + to_string(l));
    std::size_t central_points = 0;
    for (const auto& l : alcove_points(m, central, box)) {
        ++central_points;
        if (rep.chi.at(l) != 3) r.fail("chi at " + to_string(l));
    }
    if (central_points == 0) r.fail("central alcove has no lattice points");
    r.note << " (" << rep.points << " points, " << central_points << " central)";
    return r;
}

Result c7_invariant_quasipoly() {
    Result r;
    auto attempt = [&](const ManifoldModel& m, const RootSystemData& roots, Int period, int degree) -> std::optional<QrFit> {
        try {
            return qr_quasipoly_check(m, roots.negative, 1, 12, 13, 24, period, degree, polarizing_vector(m, 1));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoFit) throw;
            return std::nullopt;
        }
    };
    if (!attempt(builtin_flag3(), RootSystemData::a2(), 6, 3)) r.fail("flag3/a2 no fit");
    ManifoldModel p1 = builtin_p1();
    auto f = attempt(p1, RootSystemData::su2(), 6, 3);
    if (!f) r.fail("p1/su2 no fit");
    else
        for (const auto& s : f->test)
            if (s.v != 0) r.fail("p1/su2 not 0 at k=" + std::to_string(s.k));
    ManifoldModel dual = dual_line_bundle(p1);
    if (attempt(dual, RootSystemData::su2(), 2, 1)) r.fail("dual line bundle fitted");
    RatVec y = polarizing_vector(dual, 1);
    r.note << " (dual values k=1..6:";
    for (Int k = 1; k <= 6; ++k)
        r.note << " " << invariant_dim(dual, Bundle::trivial(dual), k, RootSystemData::su2().negative, y);
    r.note << ")";
    return r;
}

Result c8_oracles() {
    Result r;
    std::mt19937_64 rng(8);
    for (int i = 0; i < 30; ++i) {
        std::size_t rank = 1 + rng() % 3, size = 1 + rng() % 4;
        auto inst = oracle::random_list(rng, rank, size, 2);
        PartitionFunction pf(inst.list, inst.y);
        Box::cube(rank, -4, 4).for_each([&](const Weight& l) {
            if (pf(l) != oracle::brute_kpf(inst.ws, inst.y, l)) r.fail(to_string(inst.list) + " at " + to_string(l));
        });
    }
    ManifoldModel m = builtin_flag3();
    Bundle b = Bundle::trivial(m);
    RatVec y = polarizing_vector(m, 1);
    Box hull = support_hull(m, b, 1);
    Box wide(Weight{hull.lo()[0] - 3, hull.lo()[1] - 3}, Weight{hull.hi()[0] + 3, hull.hi()[1] + 3});
    FormalCharacter ch = chi_table(m, b, 1, wide, y);
    RootSystemData a2 = RootSystemData::a2();
    wide.for_each([&](const Weight& l) {
        if (ch.at(l) != kostant_oracle(a2, {4, 3}, l)) r.fail("Kostant at " + to_string(l));
    });
    return r;
}

Result c9_properties() {
    Result r;
    std::mt19937_64 rng(9);
    for (const ManifoldModel& m : {builtin_p1(), builtin_flag3()}) {
        Bundle b = Bundle::trivial(m);
        Box hull = support_hull(m, b, 2);
        RatVec y0 = polarizing_vector(m, 1);
        FormalCharacter base = chi_table(m, b, 2, hull, y0);
        for (int i = 0; i < 5; ++i) {
            RatVec y = polarizing_vector(m, rng());
            if (!(chi_table(m, b, 2, hull, y) == base)) r.fail("chi depends on Y for " + m.name);
        }
        // Asymptotic characters do not depend on Y.
        std::vector<RatVec> witnesses =
            m.rank == 1 ? std::vector<RatVec>{{Q(-3, 2)}, {Q(1, 2)}, {Q(3, 2)}}
                        : std::vector<RatVec>{{Q(1, 7), Q(1, 11)}, {Q(-1, 2), Q(3, 2)}, {Q(11, 4), Q(3, 2)}};
        for (const auto& w : witnesses) {
            AlcoveId a = alcove_of(w, m);
            AsymptoticChar d0(m, a, y0), d1(m, a, polarizing_vector(m, rng()));
            Box::cube(m.rank, -5, 5).for_each([&](const Weight& l) {
                if (d0.eval(b, 1, l) != d1.eval(b, 1, l)) r.fail("Delta depends on Y at " + to_string(l));
            });
            if (!lemma23_check(m, a, y0).ok) r.fail("alcove agreement " + to_string(w));
        }
        RatVec gamma = generic_gamma(m, RatVec(m.rank, Q(0)), 1);
        DecompositionReport rep = decomposition_verify(m, b, 1, gamma, support_hull(m, b, 1), y0);
        if (!rep.half_space_violations.empty()) r.fail("half-space " + m.name);
    }
    // Theta times prod(1 - e_phi) is 1 away from the boundary.
    for (int i = 0; i < 20; ++i) {
        std::size_t rank = 1 + rng() % 3, size = 1 + rng() % 4;
        auto inst = oracle::random_list(rng, rank, size, 2);
        Int margin = 0;
        for (const auto& w : inst.ws)
            for (Int x : w) margin += x < 0 ? -x : x;
        Box box = Box::cube(rank, -6 - margin, 6 + margin);
        FormalCharacter prod = fc_multiply(theta_on_box(inst.list, inst.y, box), one_minus_product(inst.list));
        Box::cube(rank, -6, 6).for_each([&](const Weight& l) {
            if (prod.at(l) != (oracle::nonzero(l) ? 0 : 1)) r.fail("inverse identity " + to_string(inst.list));
        });
    }
    return r;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Result (*run)();
    };
    const Entry entries[] = {
        {"P1 dimension and invariant table", c1_p1_table},
        {"P1 character at k=4", c2_p1_character},
        {"flag3 asymptotic characters", c3_flag3_asymptotic},
        {"one-dimensional Paradan identity", c4_paradan_1d},
        {"random Paradan decompositions", c5_random_paradan},
        {"flag3 decomposition", c6_flag3_decomposition},
        {"quasi-polynomiality of invariants", c7_invariant_quasipoly},
        {"partition function and Kostant oracles", c8_oracles},
        {"property suite", c9_properties},
    };
    int failed = 0, i = 0;
    for (const auto& e : entries) {
        ++i;
        Result r;
        try {
            r = e.run();
        } catch (const std::exception& ex) {
            r.fail(std::string("exception: ") + ex.what());
        }
        std::cout << (r.ok ? "PASS" : "FAIL") << " criterion " << i << ": " << e.name;
        std::string note = r.note.str();
        if (!note.empty()) std::cout << " " << note;
        std::cout << std::endl;
        if (!r.ok) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
