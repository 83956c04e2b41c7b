#pragma once

#include "qrk/quasipoly.hpp"

namespace qrk {

// One summand Theta[Phi\S ^ Y_S] * delta[Phi cap S ^ Y, T(gamma_S)].
struct ParadanTerm {
    Subspace s;
    WeightList inside;
    WeightList outside;
    RatVec gamma_s;
    RatVec y_s;    // gamma_s - gamma, in t*
    RatVec grade;  // Y_S as an element of t (dual coordinates); zero for S = span(Phi)
    PolarizedSeries theta;
    QuasiPolynomialChar delta;
    std::shared_ptr<GradedConvolution> conv;

    Int eval(const Weight& lambda) const { return (*conv)(lambda); }
};

// gamma must lie in span(Phi).
std::vector<ParadanTerm> paradan_decompose(const WeightList& phi, const RatVec& y, const RatVec& gamma,
                                           const Gram& g, const DeltaOptions& opt = {});

struct ParadanReport {
    bool ok = true;
    std::size_t points = 0;
    std::size_t terms = 0;
    std::optional<Weight> mismatch;
    Int expected = 0;
    Int got = 0;
    // Points where a term with S != span(Phi) is nonzero although (lambda, Y_S) < 0.
    std::vector<std::pair<Subspace, Weight>> half_space_violations;
    FormalCharacter lhs;
    FormalCharacter rhs;
};

ParadanReport paradan_verify(const WeightList& phi, const RatVec& y, const RatVec& gamma, const Gram& g,
                             const Box& box, const DeltaOptions& opt = {});

}  // namespace qrk
