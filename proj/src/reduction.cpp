#include "qrk/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qrk {

RootSystemData RootSystemData::su2() {
    RootSystemData r;
    r.name = "su2";
    r.rank = 1;
    r.positive = WeightList(1, {{2}});
    r.negative = WeightList(1, {{-2}});
    r.gram = Gram::identity(1);
    return r;
}

RootSystemData RootSystemData::a2() {
    RootSystemData r;
    r.name = "a2";
    r.rank = 2;
    r.positive = WeightList(2, {{1, 0}, {0, 1}, {1, 1}});
    r.negative = WeightList(2, {{-1, 0}, {0, -1}, {-1, -1}});
    r.gram = Gram({{Q(2), Q(-1)}, {Q(-1), Q(2)}});
    return r;
}

RootSystemData RootSystemData::torus(std::size_t rank) {
    RootSystemData r;
    r.name = "torus";
    r.rank = rank;
    r.positive = WeightList(rank);
    r.negative = WeightList(rank);
    r.gram = Gram::identity(rank);
    return r;
}

RootSystemData RootSystemData::named(const std::string& name, std::size_t rank) {
    if (name == "su2") return su2();
    if (name == "a2") return a2();
    if (name == "torus" || name == "none") return torus(rank);
    throw Error(ErrorKind::InvalidInput, "unknown root system '" + name + "' (expected su2, a2 or torus)");
}

FormalCharacter omega_character(const WeightList& negative_roots) { return one_minus_product(negative_roots); }

InvariantDims invariant_dims(const ManifoldModel& m, const Bundle& b, Int k, const WeightList& negative_roots,
                             const RatVec& y) {
    if (negative_roots.rank() != m.rank) throw Error(ErrorKind::InvalidInput, "root system rank does not match the model");
    InvariantDims d;
    ChiEvaluator chi(m, b, y);
    FormalCharacter omega = omega_character(negative_roots);
    for (const auto& [nu, c] : omega.terms())
        d.via_omega = checked::add(d.via_omega, checked::mul(c, chi(k, neg(nu))));
    ChiEvaluator graded(m, tensor_exterior(b, negative_roots), y);
    d.via_exterior = graded(k, Weight(m.rank, 0));
    return d;
}

Int invariant_dim(const ManifoldModel& m, const Bundle& b, Int k, const WeightList& negative_roots, const RatVec& y) {
    auto d = invariant_dims(m, b, k, negative_roots, y);
    if (d.via_omega != d.via_exterior)
        throw Error(ErrorKind::TotalMismatch, "omega product gives " + std::to_string(d.via_omega) +
                                                  ", exterior algebra bundle gives " + std::to_string(d.via_exterior));
    return d.via_omega;
}

Int total_dim(const ManifoldModel& m, const Bundle& b, Int k, const RatVec& y) {
    Box box = support_hull(m, b, k);
    ChiEvaluator chi(m, b, y);
    Int s = 0;
    box.for_each([&](const Weight& l) { s = checked::add(s, chi(k, l)); });
    return s;
}

// Asymptotic characters

AsymptoticChar::AsymptoticChar(const ManifoldModel& m, const AlcoveId& alcove, const RatVec& y, const DeltaOptions& opt)
    : m_(&m) {
    AlcoveId check = alcove_of(alcove.witness, m);
    if (!(check == alcove)) throw Error(ErrorKind::InvalidInput, "alcove signs do not match the witness");
    for (const auto& fp : m.fixed_points) {
        RatVec local = sub(alcove.witness, to_q(fp.mu));
        deltas_.push_back(delta_construct(fp.tangent, y, tope_of(local, fp.tangent), opt));
    }
}

Int AsymptoticChar::eval(const Bundle& b, Int k, const Weight& lambda) const {
    Int total = 0;
    for (std::size_t p = 0; p < deltas_.size(); ++p) {
        Weight base = sub(lambda, scale(m_->fixed_points[p].mu, k));
        for (const auto& eta : b.even[p]) total = checked::add(total, deltas_[p].eval(sub(base, eta)));
        for (const auto& eta : b.odd[p]) total = checked::sub(total, deltas_[p].eval(sub(base, eta)));
    }
    return total;
}

bool AsymptoticChar::on_support(const Bundle& b, Int k, const Weight& lambda) const {
    for (std::size_t p = 0; p < deltas_.size(); ++p) {
        Weight base = sub(lambda, scale(m_->fixed_points[p].mu, k));
        for (const auto* f : {&b.even[p], &b.odd[p]})
            for (const auto& eta : *f)
                if (deltas_[p].carrier_coords(sub(base, eta))) return true;
    }
    return false;
}

Int delta_asymptotic_eval(const ManifoldModel& m, const Bundle& b, Int k, const AlcoveId& alcove, const Weight& lambda,
                          const RatVec& y) {
    return AsymptoticChar(m, alcove, y).eval(b, k, lambda);
}

std::vector<Weight> alcove_points(const ManifoldModel& m, const AlcoveId& alcove, const Box& box) {
    std::vector<Weight> out;
    box.for_each([&](const Weight& l) {
        try {
            if (alcove_of(to_q(l), m) == alcove) out.push_back(l);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OnWall) throw;
        }
    });
    return out;
}

Lemma23Report lemma23_check(const ManifoldModel& m, const AlcoveId& alcove, const RatVec& y) {
    Bundle b = Bundle::trivial(m);
    AsymptoticChar delta(m, alcove, y);
    ChiEvaluator chi(m, b, y);
    Lemma23Report rep;
    for (const auto& l : alcove_points(m, alcove, support_hull(m, b, 1))) {
        rep.points.push_back(l);
        rep.chi.push_back(chi(1, l));
        rep.delta.push_back(delta.eval(b, 1, l));
        if (rep.chi.back() != rep.delta.back()) rep.ok = false;
    }
    return rep;
}

// Agreement with chi along k*b, and quasi-polynomiality along lattice lines

namespace {

bool line_is_quasipolynomial(const std::function<Int(Int)>& f, Int period, int degree) {
    std::size_t per_half = static_cast<std::size_t>(period) * static_cast<std::size_t>(degree + 2);
    std::vector<Sample1D> fit, check;
    for (Int t = 0; t < static_cast<Int>(per_half); ++t) fit.push_back({t, f(t)});
    for (Int t = static_cast<Int>(per_half); t < static_cast<Int>(2 * per_half); ++t) check.push_back({t, f(t)});
    return fit_quasipolynomial(fit, check, period, degree).has_value();
}

}  // namespace

Prop27Result prop27_check(const ManifoldModel& m, const Bundle& b, const AlcoveId& alcove,
                          const std::vector<RatVec>& points, Int k_max, const RatVec& y) {
    for (const auto& pt : points) {
        try {
            if (!(alcove_of(pt, m) == alcove)) throw Error(ErrorKind::InvalidInput, to_string(pt) + " is not in the alcove");
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::OnWall) throw Error(ErrorKind::InvalidInput, to_string(pt) + " is not in the alcove");
            throw;
        }
    }
    AsymptoticChar delta(m, alcove, y);
    ChiEvaluator chi(m, b, y);
    Prop27Result res;
    for (Int k = 1; k <= k_max; ++k) {
        Int state = -1;
        for (const auto& pt : points) {
            RatVec kp = scale(pt, Q(static_cast<long>(k)));
            bool integral = std::all_of(kp.begin(), kp.end(), [](const Q& x) { return x.get_den() == 1; });
            if (!integral) continue;
            Weight l = integer_direction(kp);
            for (std::size_t i = 0; i < l.size(); ++i) l[i] = to_int(kp[i]);
            bool eq = delta.eval(b, k, l) == chi(k, l);
            state = (state == 0 || !eq) ? 0 : 1;
        }
        res.agree_from.push_back(state);
    }
    Int K = k_max;
    bool seen = false;
    for (Int k = k_max; k >= 1; --k) {
        Int s = res.agree_from[static_cast<std::size_t>(k - 1)];
        if (s == 0) break;
        if (s == 1) seen = true;
        K = k - 1;
    }
    if (!seen) throw Error(ErrorKind::NoK, "no K <= " + std::to_string(k_max) + " with agreement on k*b");
    res.k_min = K;

    // Restrictions of (lambda, k) -> Delta to lattice lines are quasi-polynomial.
    Int period = 1;
    int degree = 0;
    for (std::size_t p = 0; p < m.fixed_points.size(); ++p) {
        period = std::lcm(period, delta.delta(p).period());
        degree = std::max(degree, static_cast<int>(delta.delta(p).degree_bound()));
    }
    std::vector<std::pair<Weight, Int>> dirs{{Weight(m.rank, 0), 1}};
    for (std::size_t i = 0; i < m.rank; ++i) {
        Weight e(m.rank, 0);
        e[i] = 1;
        dirs.push_back({e, 0});
        dirs.push_back({e, 1});
    }
    std::vector<std::pair<Weight, Int>> starts{{Weight(m.rank, 0), 0}};
    if (m.rank > 0) {
        Weight e(m.rank, 0);
        e[0] = 1;
        starts.push_back({e, 2});
    }
    for (const auto& [s, sk] : starts)
        for (const auto& [d, dk] : dirs) {
            LineFit lf{s, sk, d, dk, false};
            lf.fitted = line_is_quasipolynomial(
                [&, s = s, sk = sk, d = d, dk = dk](Int t) { return delta.eval(b, sk + t * dk, add(s, scale(d, t))); },
                period, degree);
            if (!lf.fitted) res.lines_ok = false;
            res.lines.push_back(lf);
        }
    return res;
}

QrFit qr_quasipoly_check(const ManifoldModel& m, const WeightList& negative_roots, Int fit_lo, Int fit_hi, Int test_lo,
                         Int test_hi, Int max_period, int max_degree, const RatVec& y) {
    if (fit_lo < 1) throw Error(ErrorKind::InvalidInput, "fits use k >= 1 only");
    if (fit_hi < fit_lo || test_hi < test_lo) throw Error(ErrorKind::InvalidInput, "empty range");
    if (test_lo <= fit_hi) throw Error(ErrorKind::InvalidInput, "test range must follow the fit range");
    Bundle b = Bundle::trivial(m);
    QrFit out;
    for (Int k = fit_lo; k <= fit_hi; ++k) out.fit.push_back({k, invariant_dim(m, b, k, negative_roots, y)});
    for (Int k = test_lo; k <= test_hi; ++k) out.test.push_back({k, invariant_dim(m, b, k, negative_roots, y)});
    auto q = fit_quasipolynomial(out.fit, out.test, max_period, max_degree);
    if (!q)
        throw Error(ErrorKind::NoFit, "no quasi-polynomial with period <= " + std::to_string(max_period) +
                                          " and degree <= " + std::to_string(max_degree) + " predicts the test range");
    out.qp = *q;
    return out;
}

Theorem47Report theorem47_report(const ManifoldModel& m, const WeightList& negative_roots, const RatVec& gamma, Int k,
                                 const RatVec& y) {
    std::string why = genericity_violation(gamma, m.shifted_lists(), m.gram);
    if (!why.empty()) throw Error(ErrorKind::GammaNotGeneric, why);
    Bundle base = Bundle::trivial(m);
    Bundle b = tensor_exterior(base, negative_roots);
    Theorem47Report rep;
    Weight zero(m.rank, 0);
    for (std::size_t c = 0; c < m.components.size(); ++c) {
        Int v = ComponentTerm(m, c, gamma, y).eval(b, k, zero);
        rep.contribution.push_back(v);
        rep.total = checked::add(rep.total, v);
        if (m.components[c].alcove_in_image == false && v != 0) rep.annotation_violations.push_back(c);
    }
    rep.invariant = invariant_dim(m, base, k, negative_roots, y);
    if (rep.total != rep.invariant)
        throw Error(ErrorKind::TotalMismatch, "component contributions sum to " + std::to_string(rep.total) +
                                                  " but the invariant dimension is " + std::to_string(rep.invariant));
    return rep;
}

// Weyl group oracle

namespace {

using QMat = std::vector<RatVec>;  // columns are images of basis vectors

RatVec apply_mat(const QMat& m, const RatVec& x) {
    RatVec out(x.size(), Q(0));
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i) out[i] += m[j][i] * x[j];
    return out;
}

QMat compose(const QMat& a, const QMat& b) {
    QMat out;
    for (const auto& col : b) out.push_back(apply_mat(a, col));
    return out;
}

}  // namespace

Int kostant_oracle(const RootSystemData& r, const Weight& highest, const Weight& nu) {
    if (r.rank > 3) throw Error(ErrorKind::RankTooLarge, "oracle supports rank <= 3");
    if (highest.size() != r.rank || nu.size() != r.rank) throw Error(ErrorKind::InvalidInput, "weight has wrong length");
    std::vector<Weight> pos = r.positive.expanded();
    if (pos.empty()) return highest == nu ? 1 : 0;
    // Simple roots: positive roots that are not sums of two positive roots.
    std::vector<Weight> simple;
    for (const auto& a : pos) {
        bool decomposable = false;
        for (const auto& b : pos)
            for (const auto& c : pos)
                if (add(b, c) == a) decomposable = true;
        if (!decomposable) simple.push_back(a);
    }
    std::vector<QMat> gens;
    for (const auto& a : simple) {
        RatVec aq = to_q(a);
        Q aa = r.gram.inner(aq, aq);
        QMat s;
        for (std::size_t j = 0; j < r.rank; ++j) {
            RatVec e(r.rank, Q(0));
            e[j] = 1;
            s.push_back(sub(e, scale(aq, 2 * r.gram.inner(e, aq) / aa)));
        }
        gens.push_back(s);
    }
    QMat id;
    for (std::size_t j = 0; j < r.rank; ++j) {
        RatVec e(r.rank, Q(0));
        e[j] = 1;
        id.push_back(e);
    }
    std::map<QMat, int> group;
    group.emplace(id, 1);
    std::vector<QMat> frontier{id};
    while (!frontier.empty()) {
        std::vector<QMat> next;
        for (const auto& w : frontier)
            for (const auto& s : gens) {
                QMat ws = compose(w, s);
                if (group.emplace(ws, -group[w]).second) next.push_back(ws);
            }
        frontier = std::move(next);
        if (group.size() > 100000) throw Error(ErrorKind::RankTooLarge, "Weyl group too large");
    }
    RatVec rho(r.rank, Q(0));
    for (const auto& a : pos) rho = add(rho, scale(to_q(a), Q(1, 2)));
    RatVec y(r.rank, Q(1));
    if (!is_polarizing(r.positive, y) || !polarize(r.positive, y).minus.empty()) {
        y = r.gram.to_dual(rho);
    }
    PartitionFunction p(r.positive, y);
    RatVec hr = add(to_q(highest), rho);
    RatVec nr = add(to_q(nu), rho);
    Int total = 0;
    for (const auto& [w, sign] : group) {
        RatVec x = sub(apply_mat(w, hr), nr);
        Weight xi(r.rank);
        bool integral = true;
        for (std::size_t i = 0; i < r.rank; ++i) {
            if (x[i].get_den() != 1) integral = false;
            else xi[i] = to_int(x[i]);
        }
        if (!integral) continue;
        total = checked::add(total, checked::mul(sign, p(xi)));
    }
    return total;
}

ManifoldModel dual_line_bundle(const ManifoldModel& m) {
    ManifoldModel d = m;
    d.name = m.name + "-dual";
    for (auto& fp : d.fixed_points) fp.mu = neg(fp.mu);
    return d;
}

ManifoldModel translate_moment(const ManifoldModel& m, const Weight& shift) {
    ManifoldModel d = m;
    d.name = m.name + "-shifted";
    for (auto& fp : d.fixed_points) fp.mu = add(fp.mu, shift);
    return d;
}

}  // namespace qrk
