#include "qrk/paradan.hpp"

namespace qrk {

std::vector<ParadanTerm> paradan_decompose(const WeightList& phi, const RatVec& y, const RatVec& gamma,
                                           const Gram& g, const DeltaOptions& opt) {
    std::size_t n = phi.rank();
    if (y.size() != n || gamma.size() != n || g.rank() != n)
        throw Error(ErrorKind::InvalidInput, "rank mismatch between list, Y, gamma and Gram");
    polarize(phi, y);
    Subspace span = span_of(phi);
    if (!span.contains(gamma)) throw Error(ErrorKind::InvalidInput, "gamma must lie in span(Phi); project it first");
    std::vector<ParadanTerm> out;
    for (const auto& s : rational_subspaces(phi)) {
        ParadanTerm t;
        t.s = s;
        t.inside = intersect(phi, s);
        t.outside = complement(phi, s);
        auto pr = orthogonal_project(gamma, s, g);
        t.gamma_s = pr.gamma_s;
        t.y_s = pr.y;
        Arrangement arr = arrangement_of(t.inside);
        if (!is_regular(t.gamma_s, arr))
            throw Error(ErrorKind::GammaNotGeneric, "S=" + to_string(s) + ": projection " + to_string(t.gamma_s) +
                                                        " is not regular for the list inside S");
        t.grade = g.to_dual(t.y_s);
        if (!is_polarizing(t.outside, t.grade))
            throw Error(ErrorKind::GammaNotGeneric,
                        "S=" + to_string(s) + ": orthogonal part " + to_string(t.y_s) + " does not polarize the list outside S");
        t.theta = make_series(t.outside, t.grade);
        t.delta = delta_construct(t.inside, y, tope_of(t.gamma_s, arr), opt);
        t.conv = std::make_shared<GradedConvolution>(t.theta, t.delta.as_supported(), t.grade);
        out.push_back(std::move(t));
    }
    return out;
}

ParadanReport paradan_verify(const WeightList& phi, const RatVec& y, const RatVec& gamma, const Gram& g,
                             const Box& box, const DeltaOptions& opt) {
    auto terms = paradan_decompose(phi, y, gamma, g, opt);
    PartitionFunction pf(phi, y);
    Subspace span = span_of(phi);
    ParadanReport rep;
    rep.terms = terms.size();
    rep.lhs = FormalCharacter(phi.rank());
    rep.rhs = FormalCharacter(phi.rank());
    box.for_each([&](const Weight& l) {
        ++rep.points;
        Int lhs = pf(l);
        Int rhs = 0;
        for (const auto& t : terms) {
            Int v = t.eval(l);
            rhs = checked::add(rhs, v);
            if (v != 0 && !(t.s == span) && dot(l, t.grade) < 0) rep.half_space_violations.emplace_back(t.s, l);
        }
        rep.lhs.add(l, lhs);
        rep.rhs.add(l, rhs);
        if (lhs != rhs && rep.ok) {
            rep.ok = false;
            rep.mismatch = l;
            rep.expected = lhs;
            rep.got = rhs;
        }
    });
    if (!rep.half_space_violations.empty()) rep.ok = false;
    return rep;
}

}  // namespace qrk
