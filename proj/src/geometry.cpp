#include "qrk/geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace qrk {

using ojson = nlohmann::ordered_json;

std::size_t ManifoldModel::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < fixed_points.size(); ++i)
        if (fixed_points[i].id == id) return i;
    throw Error(ErrorKind::InvalidInput, "unknown fixed point '" + id + "'");
}

std::optional<std::size_t> ManifoldModel::whole_manifold() const {
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (components[c].ids.size() != fixed_points.size()) continue;
        bool all = true;
        for (const auto& fp : fixed_points)
            if (!(span_of(fp.tangent) == components[c].s)) all = false;
        if (all) return c;
    }
    return std::nullopt;
}

std::vector<ShiftedList> ManifoldModel::shifted_lists() const {
    std::vector<ShiftedList> out;
    for (const auto& fp : fixed_points) out.push_back({fp.mu, fp.tangent});
    return out;
}

namespace {

Component make_component(std::size_t rank, std::vector<std::string> ids, const std::vector<Weight>& span) {
    return Component{std::move(ids), Subspace::span_of(rank, span), std::nullopt};
}

}  // namespace

ManifoldModel builtin_p1() {
    ManifoldModel m;
    m.name = "p1";
    m.rank = 1;
    m.gram = Gram::identity(1);
    m.fixed_points.push_back({"p+", {1}, WeightList(1, {{-2}}), {{0}}, {}});
    m.fixed_points.push_back({"p-", {-1}, WeightList(1, {{2}}), {{0}}, {}});
    m.components.push_back(make_component(1, {"p+", "p-"}, {{1}}));
    m.components.push_back(make_component(1, {"p+"}, {}));
    m.components.push_back(make_component(1, {"p-"}, {}));
    return m;
}

ManifoldModel builtin_flag3() {
    // theta_1, theta_2, theta_3 in (alpha, beta) coordinates, up to a common translation.
    const Weight theta[3] = {{1, 1}, {0, 1}, {0, 0}};
    const int words[6][3] = {{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {3, 2, 1}, {2, 3, 1}, {3, 1, 2}};
    ManifoldModel m;
    m.name = "flag3";
    m.rank = 2;
    m.gram = Gram({{Q(2), Q(-1)}, {Q(-1), Q(2)}});
    auto th = [&](int i) { return theta[i - 1]; };
    for (const auto& w : words) {
        FixedPointDatum fp;
        fp.id = "p" + std::to_string(w[0]) + std::to_string(w[1]) + std::to_string(w[2]);
        fp.mu = sub(sub(scale(th(w[0]), 4), th(w[1])), scale(th(w[2]), 3));
        fp.tangent = WeightList(2, {sub(th(w[1]), th(w[0])), sub(th(w[2]), th(w[1])), sub(th(w[2]), th(w[0]))});
        fp.fiber_even = {{0, 0}};
        m.fixed_points.push_back(fp);
    }
    std::vector<std::string> all;
    for (const auto& fp : m.fixed_points) all.push_back(fp.id);
    m.components.push_back(make_component(2, all, {{1, 0}, {0, 1}}));
    for (const auto& fp : m.fixed_points) m.components.push_back(make_component(2, {fp.id}, {}));
    // Pairs of words differing by a transposition of two positions.
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b) {
            int diff = 0;
            for (int i = 0; i < 3; ++i) diff += words[a][i] != words[b][i];
            if (diff != 2) continue;
            const auto& pa = m.fixed_points[a];
            const auto& pb = m.fixed_points[b];
            m.components.push_back(make_component(2, {pa.id, pb.id}, {sub(pa.mu, pb.mu)}));
        }
    return m;
}

// JSON

namespace {

ojson weight_json(const Weight& w) {
    ojson a = ojson::array();
    for (Int x : w) a.push_back(x);
    return a;
}

Weight weight_from(const ojson& j, std::size_t rank, const std::string& what) {
    if (!j.is_array() || j.size() != rank) throw Error(ErrorKind::InvalidInput, what + ": expected " + std::to_string(rank) + " integers");
    Weight w;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw Error(ErrorKind::InvalidInput, what + ": expected integers");
        w.push_back(x.get<Int>());
    }
    return w;
}

Q rational_from(const ojson& j) {
    if (j.is_number_integer()) return Q(static_cast<long>(j.get<Int>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw Error(ErrorKind::InvalidInput, "expected a rational as \"p/q\"");
}

}  // namespace

std::string model_to_json(const ManifoldModel& m) {
    ojson j;
    j["name"] = m.name;
    j["rank"] = m.rank;
    ojson g = ojson::array();
    for (const auto& row : m.gram.entries()) {
        ojson r = ojson::array();
        for (const auto& x : row) r.push_back(format_rational(x));
        g.push_back(r);
    }
    j["gram"] = g;
    ojson fps = ojson::array();
    for (const auto& fp : m.fixed_points) {
        ojson f;
        f["id"] = fp.id;
        f["mu"] = weight_json(fp.mu);
        ojson t = ojson::array();
        for (const auto& e : fp.tangent.entries()) t.push_back(ojson{{"w", weight_json(e.w)}, {"mult", e.mult}});
        f["tangent"] = t;
        ojson ev = ojson::array(), od = ojson::array();
        for (const auto& w : fp.fiber_even) ev.push_back(weight_json(w));
        for (const auto& w : fp.fiber_odd) od.push_back(weight_json(w));
        f["fiber_even"] = ev;
        f["fiber_odd"] = od;
        fps.push_back(f);
    }
    j["fixed_points"] = fps;
    ojson cs = ojson::array();
    for (const auto& c : m.components) {
        ojson o;
        o["ids"] = c.ids;
        ojson sp = ojson::array();
        for (const auto& b : c.s.basis()) sp.push_back(weight_json(b));
        o["span"] = sp;
        if (c.alcove_in_image) o["alcove_in_image"] = *c.alcove_in_image;
        cs.push_back(o);
    }
    j["components"] = cs;
    return j.dump(2);
}

ManifoldModel model_from_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("model JSON: ") + e.what());
    }
    try {
        ManifoldModel m;
        m.name = j.value("name", std::string());
        m.rank = j.at("rank").get<std::size_t>();
        std::vector<RatVec> g;
        for (const auto& row : j.at("gram")) {
            RatVec r;
            for (const auto& x : row) r.push_back(rational_from(x));
            if (r.size() != m.rank) throw Error(ErrorKind::InvalidInput, "gram row has wrong length");
            g.push_back(r);
        }
        if (g.size() != m.rank) throw Error(ErrorKind::InvalidInput, "gram has wrong size");
        m.gram = Gram(g);
        for (const auto& f : j.at("fixed_points")) {
            FixedPointDatum fp;
            fp.id = f.at("id").get<std::string>();
            fp.mu = weight_from(f.at("mu"), m.rank, "mu of " + fp.id);
            fp.tangent = WeightList(m.rank);
            for (const auto& t : f.at("tangent")) {
                Int mult = t.value("mult", Int(1));
                if (mult < 1) throw Error(ErrorKind::InvalidInput, "tangent multiplicity must be positive");
                Weight w = weight_from(t.at("w"), m.rank, "tangent weight of " + fp.id);
                if (is_zero(w)) throw Error(ErrorKind::InvalidInput, "zero tangent weight at " + fp.id);
                fp.tangent.add(w, mult);
            }
            if (f.contains("fiber_even"))
                for (const auto& w : f.at("fiber_even")) fp.fiber_even.push_back(weight_from(w, m.rank, "fiber of " + fp.id));
            if (f.contains("fiber_odd"))
                for (const auto& w : f.at("fiber_odd")) fp.fiber_odd.push_back(weight_from(w, m.rank, "fiber of " + fp.id));
            m.fixed_points.push_back(std::move(fp));
        }
        for (const auto& c : j.at("components")) {
            Component comp;
            comp.ids = c.at("ids").get<std::vector<std::string>>();
            std::vector<Weight> sp;
            for (const auto& w : c.at("span")) sp.push_back(weight_from(w, m.rank, "component span"));
            comp.s = Subspace::span_of(m.rank, sp);
            if (c.contains("alcove_in_image")) comp.alcove_in_image = c.at("alcove_in_image").get<bool>();
            m.components.push_back(std::move(comp));
        }
        return m;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("model JSON: ") + e.what());
    }
}

ManifoldModel load_model(const std::string& source) {
    if (source == "builtin:p1") return builtin_p1();
    if (source == "builtin:flag3") return builtin_flag3();
    if (source.rfind("builtin:", 0) == 0) throw Error(ErrorKind::InvalidInput, "unknown builtin model " + source);
    std::ifstream in(source);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read model file " + source);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

// Validation

namespace {

// Restriction of phi to the orthogonal complement of S, as a vector of t*.
RatVec restrict_to_complement(const Weight& phi, const Subspace& s, const Gram& g) {
    auto pr = orthogonal_project(to_q(phi), s, g);
    return scale(pr.y, Q(-1));
}

}  // namespace

ValidationReport model_validate(const ManifoldModel& m) {
    ValidationReport rep;
    auto bad = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    if (m.gram.rank() != m.rank) {
        bad("gram is not rank x rank");
        return rep;
    }
    if (!m.gram.symmetric()) bad("gram is not symmetric");
    if (!m.gram.positive_definite()) bad("gram is not positive definite");
    if (m.fixed_points.empty()) bad("no fixed points");
    std::set<std::string> ids;
    std::size_t dim = m.fixed_points.empty() ? 0 : m.fixed_points[0].tangent.size();
    for (const auto& fp : m.fixed_points) {
        if (!ids.insert(fp.id).second) bad("duplicate fixed point id " + fp.id);
        if (fp.mu.size() != m.rank) bad("mu of " + fp.id + " has wrong length");
        if (fp.tangent.rank() != m.rank) bad("tangent list of " + fp.id + " has wrong rank");
        for (const auto& e : fp.tangent.entries())
            if (is_zero(e.w)) bad("zero tangent weight at " + fp.id);
        if (fp.tangent.size() != dim) bad("fixed point " + fp.id + " has a different number of tangent weights");
        for (const auto* f : {&fp.fiber_even, &fp.fiber_odd})
            for (const auto& w : *f)
                if (w.size() != m.rank) bad("fiber weight of " + fp.id + " has wrong length");
    }
    if (!rep.ok()) return rep;

    // (p, S) pairs must correspond one to one with (p, C) pairs.
    std::vector<std::vector<Subspace>> seen(m.fixed_points.size());
    for (std::size_t c = 0; c < m.components.size(); ++c) {
        const auto& comp = m.components[c];
        std::string cname = "component " + std::to_string(c) + " [";
        for (std::size_t i = 0; i < comp.ids.size(); ++i) cname += (i ? "," : "") + comp.ids[i];
        cname += "]";
        if (comp.ids.empty()) {
            bad(cname + " has no fixed points");
            continue;
        }
        if (comp.s.rank() != m.rank) {
            bad(cname + " span has wrong rank");
            continue;
        }
        std::vector<std::size_t> idx;
        bool known = true;
        for (const auto& id : comp.ids) {
            if (!ids.count(id)) {
                bad(cname + " refers to unknown fixed point " + id);
                known = false;
            } else {
                idx.push_back(m.index_of(id));
            }
        }
        if (!known) continue;
        const auto& p0 = m.fixed_points[idx[0]];
        std::multiset<RatVec> normal0;
        for (const auto& w : complement(p0.tangent, comp.s).expanded()) normal0.insert(restrict_to_complement(w, comp.s, m.gram));
        for (std::size_t i : idx) {
            const auto& p = m.fixed_points[i];
            if (!comp.s.contains(sub(p.mu, p0.mu)))
                bad(cname + ": mu(" + p.id + ") - mu(" + p0.id + ") is not in S");
            if (!(span_of(intersect(p.tangent, comp.s)) == comp.s))
                bad(cname + ": tangent weights of " + p.id + " in S do not span S");
            std::multiset<RatVec> normal;
            for (const auto& w : complement(p.tangent, comp.s).expanded()) normal.insert(restrict_to_complement(w, comp.s, m.gram));
            if (normal != normal0) bad(cname + ": normal weights at " + p.id + " differ from those at " + p0.id);
            for (const auto& s : seen[i])
                if (s == comp.s) bad(cname + ": fixed point " + p.id + " lies in two components with the same S");
            seen[i].push_back(comp.s);
        }
    }
    for (std::size_t i = 0; i < m.fixed_points.size(); ++i) {
        const auto& p = m.fixed_points[i];
        for (const auto& s : rational_subspaces(p.tangent)) {
            if (std::find(seen[i].begin(), seen[i].end(), s) == seen[i].end())
                bad("fixed point " + p.id + ": no component with S=" + to_string(s));
        }
        for (const auto& s : seen[i]) {
            auto rs = rational_subspaces(p.tangent);
            if (std::find(rs.begin(), rs.end(), s) == rs.end())
                bad("fixed point " + p.id + ": S=" + to_string(s) + " is not spanned by tangent weights");
        }
    }
    return rep;
}

// Alcoves and genericity for models

AlcoveId alcove_of(const RatVec& gamma, const ManifoldModel& model) {
    if (gamma.size() != model.rank) throw Error(ErrorKind::InvalidInput, "gamma has wrong length");
    AlcoveId a;
    a.witness = gamma;
    for (const auto& fp : model.fixed_points) {
        RatVec d = sub(gamma, to_q(fp.mu));
        Arrangement arr = arrangement_of(fp.tangent);
        if (!arr.span.contains(d))
            throw Error(ErrorKind::OnWall, fp.id + ": gamma - mu is not in the span of the tangent weights");
        for (std::size_t i = 0; i < arr.normals.size(); ++i)
            if (dot(arr.normals[i], d) == 0)
                throw Error(ErrorKind::OnWall, fp.id + ": gamma lies on mu + " + to_string(arr.hyperplanes[i]));
        a.signs.push_back(tope_of(d, arr).signs);
    }
    return a;
}

RatVec generic_gamma(const ManifoldModel& model, const RatVec& near, unsigned long long seed, const GenericOptions& opt) {
    return generic_gamma(model.shifted_lists(), model.gram, near, seed, opt);
}

RatVec polarizing_vector(const ManifoldModel& m, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        RatVec y(m.rank);
        for (auto& x : y) {
            x = Q(static_cast<long>(rng() % 2001) - 1000, 997);
            x.canonicalize();
        }
        bool ok = true;
        for (const auto& fp : m.fixed_points)
            if (!is_polarizing(fp.tangent, y)) ok = false;
        if (ok) return y;
    }
    throw Error(ErrorKind::ExhaustedRetries, "no polarizing vector found");
}

// Bundles

Bundle Bundle::trivial(const ManifoldModel& m) {
    Bundle b;
    b.even.assign(m.fixed_points.size(), {Weight(m.rank, 0)});
    b.odd.assign(m.fixed_points.size(), {});
    return b;
}

Bundle Bundle::from_model(const ManifoldModel& m) {
    Bundle b;
    for (const auto& fp : m.fixed_points) {
        b.even.push_back(fp.fiber_even);
        b.odd.push_back(fp.fiber_odd);
    }
    return b;
}

bool Bundle::graded() const {
    for (const auto& o : odd)
        if (!o.empty()) return true;
    return false;
}

Bundle tensor_exterior(const Bundle& b, const WeightList& negative_roots) {
    std::vector<Weight> roots = negative_roots.expanded();
    std::size_t rank = negative_roots.rank();
    std::vector<Weight> ev, od;
    for (std::size_t mask = 0; mask < (std::size_t(1) << roots.size()); ++mask) {
        Weight s(rank, 0);
        int bits = 0;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (mask >> i & 1) {
                s = add(s, roots[i]);
                ++bits;
            }
        (bits % 2 ? od : ev).push_back(s);
    }
    Bundle out;
    for (std::size_t p = 0; p < b.even.size(); ++p) {
        std::vector<Weight> e, o;
        for (const auto& x : b.even[p]) {
            for (const auto& w : ev) e.push_back(add(x, w));
            for (const auto& w : od) o.push_back(add(x, w));
        }
        for (const auto& x : b.odd[p]) {
            for (const auto& w : ev) o.push_back(add(x, w));
            for (const auto& w : od) e.push_back(add(x, w));
        }
        out.even.push_back(e);
        out.odd.push_back(o);
    }
    return out;
}

// Characters

ChiEvaluator::ChiEvaluator(const ManifoldModel& m, const Bundle& b, const RatVec& y) : m_(&m), b_(b) {
    if (b.even.size() != m.fixed_points.size() || b.odd.size() != m.fixed_points.size())
        throw Error(ErrorKind::InvalidInput, "bundle does not match the fixed points");
    for (const auto& fp : m.fixed_points) pf_.push_back(std::make_unique<PartitionFunction>(fp.tangent, y));
}

Int ChiEvaluator::operator()(Int k, const Weight& lambda) const {
    Int total = 0;
    for (std::size_t p = 0; p < pf_.size(); ++p) {
        Weight base = sub(lambda, scale(m_->fixed_points[p].mu, k));
        for (const auto& eta : b_.even[p]) total = checked::add(total, (*pf_[p])(sub(base, eta)));
        for (const auto& eta : b_.odd[p]) total = checked::sub(total, (*pf_[p])(sub(base, eta)));
    }
    return total;
}

Int chi_multiplicity(const ManifoldModel& m, const Bundle& b, Int k, const Weight& lambda, const RatVec& y) {
    return ChiEvaluator(m, b, y)(k, lambda);
}

Box support_hull(const ManifoldModel& m, const Bundle& b, Int k) {
    Weight lo(m.rank, 0), hi(m.rank, 0);
    bool first = true;
    Weight slack(m.rank, 0);
    for (std::size_t p = 0; p < m.fixed_points.size(); ++p) {
        const auto& fp = m.fixed_points[p];
        Weight t(m.rank, 0);
        for (const auto& w : fp.tangent.expanded())
            for (std::size_t i = 0; i < m.rank; ++i) t[i] += w[i] < 0 ? -w[i] : w[i];
        for (std::size_t i = 0; i < m.rank; ++i) slack[i] = std::max(slack[i], t[i]);
        for (const auto* f : {&b.even[p], &b.odd[p]})
            for (const auto& eta : *f) {
                Weight c = add(scale(fp.mu, k), eta);
                for (std::size_t i = 0; i < m.rank; ++i) {
                    lo[i] = first ? c[i] : std::min(lo[i], c[i]);
                    hi[i] = first ? c[i] : std::max(hi[i], c[i]);
                }
                first = false;
            }
    }
    for (std::size_t i = 0; i < m.rank; ++i) {
        lo[i] -= slack[i];
        hi[i] += slack[i];
    }
    return Box(lo, hi);
}

FormalCharacter chi_table(const ManifoldModel& m, const Bundle& b, Int k, const Box& box, const RatVec& y) {
    ChiEvaluator chi(m, b, y);
    FormalCharacter out(m.rank);
    box.for_each([&](const Weight& l) { out.add(l, chi(k, l)); });
    Box hull = support_hull(m, b, k);
    Box inner = box.shrink(1);
    if (inner.contains(hull.lo()) && inner.contains(hull.hi())) {
        for (const auto& [w, c] : out.terms())
            if (box.on_shell(w))
                throw Error(ErrorKind::SupportLeak, "nonzero multiplicity " + std::to_string(c) + " at " + to_string(w) +
                                                        " on the boundary of the box");
    }
    return out;
}

// Component terms

ComponentTerm::ComponentTerm(const ManifoldModel& m, std::size_t component, const RatVec& gamma, const RatVec& y,
                             const DeltaOptions& opt)
    : m_(&m), c_(component) {
    if (component >= m.components.size()) throw Error(ErrorKind::InvalidInput, "component index out of range");
    if (gamma.size() != m.rank) throw Error(ErrorKind::InvalidInput, "gamma has wrong length");
    const auto& comp = m.components[component];
    const auto& p0 = m.fixed_points[m.index_of(comp.ids.at(0))];
    auto pr = orthogonal_project(sub(gamma, to_q(p0.mu)), comp.s, m.gram);
    gamma_c_ = add(to_q(p0.mu), pr.gamma_s);
    y_c_ = sub(gamma_c_, gamma);
    grade_ = m.gram.to_dual(y_c_);
    for (const auto& id : comp.ids) {
        std::size_t p = m.index_of(id);
        const auto& fp = m.fixed_points[p];
        WeightList inside = intersect(fp.tangent, comp.s);
        WeightList outside = complement(fp.tangent, comp.s);
        RatVec local = sub(gamma_c_, to_q(fp.mu));
        Arrangement arr = arrangement_of(inside);
        if (!is_regular(local, arr))
            throw Error(ErrorKind::GammaNotGeneric, "component " + std::to_string(component) + ", " + id +
                                                        ": gamma_C - mu is not regular");
        if (!is_polarizing(outside, grade_))
            throw Error(ErrorKind::GammaNotGeneric, "component " + std::to_string(component) + ", " + id +
                                                        ": Y_C does not polarize the normal weights");
        auto delta = delta_construct(inside, y, tope_of(local, arr), opt);
        auto conv = std::make_shared<GradedConvolution>(make_series(outside, grade_), delta.as_supported(), grade_);
        pieces_.push_back({p, fp.mu, conv});
    }
}

Int ComponentTerm::eval(const Bundle& b, Int k, const Weight& lambda) const {
    Int total = 0;
    for (const auto& pc : pieces_) {
        Weight base = sub(lambda, scale(pc.mu, k));
        for (const auto& eta : b.even[pc.point]) total = checked::add(total, (*pc.conv)(sub(base, eta)));
        for (const auto& eta : b.odd[pc.point]) total = checked::sub(total, (*pc.conv)(sub(base, eta)));
    }
    return total;
}

Q ComponentTerm::half_space_bound(const Bundle& b, Int k) const {
    std::optional<Q> lo;
    for (const auto& pc : pieces_)
        for (const auto* f : {&b.even[pc.point], &b.odd[pc.point]})
            for (const auto& eta : *f) {
                Q v = dot(add(scale(pc.mu, k), eta), grade_);
                if (!lo || v < *lo) lo = v;
            }
    return lo.value_or(Q(0));
}

Int term_coefficient(const ManifoldModel& m, std::size_t component, const Bundle& b, Int k, const RatVec& gamma,
                     const Weight& lambda, const RatVec& y) {
    return ComponentTerm(m, component, gamma, y).eval(b, k, lambda);
}

DecompositionReport decomposition_verify(const ManifoldModel& m, const Bundle& b, Int k, const RatVec& gamma,
                                         const Box& box, const RatVec& y, const DeltaOptions& opt) {
    std::string why = genericity_violation(gamma, m.shifted_lists(), m.gram);
    if (!why.empty()) throw Error(ErrorKind::GammaNotGeneric, why);
    std::vector<ComponentTerm> terms;
    for (std::size_t c = 0; c < m.components.size(); ++c) terms.emplace_back(m, c, gamma, y, opt);
    auto whole = m.whole_manifold();
    std::vector<Q> bound;
    for (const auto& t : terms) bound.push_back(t.half_space_bound(b, k));
    ChiEvaluator chi(m, b, y);
    DecompositionReport rep;
    rep.chi = FormalCharacter(m.rank);
    rep.terms.assign(terms.size(), FormalCharacter(m.rank));
    box.for_each([&](const Weight& l) {
        ++rep.points;
        Int expected = chi(k, l);
        Int sum = 0;
        for (std::size_t c = 0; c < terms.size(); ++c) {
            Int v = terms[c].eval(b, k, l);
            sum = checked::add(sum, v);
            rep.terms[c].add(l, v);
            if (v != 0 && (!whole || c != *whole) && dot(l, terms[c].grade()) < bound[c])
                rep.half_space_violations.emplace_back(c, l);
        }
        rep.chi.add(l, expected);
        if (sum != expected && rep.ok) {
            rep.ok = false;
            rep.mismatch = l;
            rep.expected = expected;
            rep.got = sum;
        }
    });
    if (!rep.half_space_violations.empty()) rep.ok = false;
    return rep;
}

}  // namespace qrk
