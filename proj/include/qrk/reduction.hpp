#pragma once

#include "qrk/geometry.hpp"

namespace qrk {

struct RootSystemData {
    std::string name;
    std::size_t rank = 0;
    WeightList positive;
    WeightList negative;
    Gram gram;

    static RootSystemData su2();
    // A2 in the basis of simple roots alpha, beta.
    static RootSystemData a2();
    static RootSystemData torus(std::size_t rank);
    // "su2", "a2", or "torus".
    static RootSystemData named(const std::string& name, std::size_t rank);
};

FormalCharacter omega_character(const WeightList& negative_roots);

struct InvariantDims {
    Int via_omega = 0;     // sum over nu of omega(nu) chi(-nu)
    Int via_exterior = 0;  // chi of the bundle tensored with the exterior algebra of n^-, at 0
};

InvariantDims invariant_dims(const ManifoldModel& m, const Bundle& b, Int k, const WeightList& negative_roots,
                             const RatVec& y);
// Throws TotalMismatch if the two computations disagree.
Int invariant_dim(const ManifoldModel& m, const Bundle& b, Int k, const WeightList& negative_roots, const RatVec& y);
// Sum of all multiplicities of chi_{E tensor L^k}.
Int total_dim(const ManifoldModel& m, const Bundle& b, Int k, const RatVec& y);

// Delta_mu[E tensor L^k, a] = sum_p tau_p[E] e_{k mu(p)} delta[Phi_p ^ Y, T(a - mu(p))].
class AsymptoticChar {
public:
    AsymptoticChar(const ManifoldModel& m, const AlcoveId& alcove, const RatVec& y, const DeltaOptions& opt = {});
    Int eval(const Bundle& b, Int k, const Weight& lambda) const;
    // Whether lambda lies on one of the translates eta + k mu(p) + (Lambda cap span Phi_p).
    bool on_support(const Bundle& b, Int k, const Weight& lambda) const;
    const QuasiPolynomialChar& delta(std::size_t p) const { return deltas_[p]; }

private:
    const ManifoldModel* m_;
    std::vector<QuasiPolynomialChar> deltas_;
};

Int delta_asymptotic_eval(const ManifoldModel& m, const Bundle& b, Int k, const AlcoveId& alcove, const Weight& lambda,
                          const RatVec& y);

// Lattice points of the box lying in the alcove.
std::vector<Weight> alcove_points(const ManifoldModel& m, const AlcoveId& alcove, const Box& box);

struct Lemma23Report {
    bool ok = true;
    std::vector<Weight> points;
    std::vector<Int> chi;
    std::vector<Int> delta;
};

// Compares Delta_mu[L, a] with chi_L at every lattice point of the alcove in the support hull.
Lemma23Report lemma23_check(const ManifoldModel& m, const AlcoveId& alcove, const RatVec& y);

struct LineFit {
    Weight start;
    Int start_k = 0;
    Weight direction;
    Int direction_k = 0;
    bool fitted = false;
};

struct Prop27Result {
    Int k_min = 0;                  // least K with agreement for all k in (K, kMax]
    std::vector<Int> agree_from;    // per k in 1..kMax: 1 agree, 0 disagree, -1 no lattice points
    std::vector<LineFit> lines;     // quasi-polynomiality of (lambda, k) -> Delta along lines
    bool lines_ok = true;
};

Prop27Result prop27_check(const ManifoldModel& m, const Bundle& b, const AlcoveId& alcove,
                          const std::vector<RatVec>& points, Int k_max, const RatVec& y);

struct QrFit {
    std::vector<Sample1D> fit;
    std::vector<Sample1D> test;
    QuasiPolynomial1D qp;
};

// Fits k -> dim Q(M, L^k)^G on the fit range and requires exact prediction on the test range.
// Throws NoFit when no candidate passes both.
QrFit qr_quasipoly_check(const ManifoldModel& m, const WeightList& negative_roots, Int fit_lo, Int fit_hi, Int test_lo,
                         Int test_hi, Int max_period, int max_degree, const RatVec& y);

struct Theorem47Report {
    std::vector<Int> contribution;  // per component, F Term_C[L^k tensor exterior n^-](0)
    Int total = 0;
    Int invariant = 0;
    // Components annotated as not meeting the image that still contribute.
    std::vector<std::size_t> annotation_violations;
};

Theorem47Report theorem47_report(const ManifoldModel& m, const WeightList& negative_roots, const RatVec& gamma, Int k,
                                 const RatVec& y);

// Weight multiplicity of nu in the irreducible representation with the given highest weight,
// by the alternating sum over the Weyl group.
Int kostant_oracle(const RootSystemData& r, const Weight& highest, const Weight& nu);

// The same model with mu replaced by -mu.
ManifoldModel dual_line_bundle(const ManifoldModel& m);
// The same model with mu translated by a fixed weight.
ManifoldModel translate_moment(const ManifoldModel& m, const Weight& shift);

}  // namespace qrk
