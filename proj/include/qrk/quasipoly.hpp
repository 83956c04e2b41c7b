#pragma once

#include "qrk/character.hpp"

#include <map>
#include <memory>
#include <optional>

namespace qrk {

// Polynomial with rational coefficients in several integer variables.
struct Poly {
    std::map<std::vector<int>, Q> coeffs;  // exponent vector -> coefficient, no zeros stored
    Q eval(const std::vector<Int>& u) const;
    int degree() const;
    bool operator==(const Poly& o) const { return coeffs == o.coeffs; }
};

std::string to_string(const Poly& p, const std::vector<std::string>& vars);

struct DeltaOptions {
    enum class Mode { Auto, Explicit, Lazy };
    Mode mode = Mode::Auto;
    // Auto builds coset polynomials only when the number of cosets is at most this.
    std::size_t max_cosets = 256;
    Int initial_depth = 1;
    Int max_depth = 1 << 14;
    // Shift of the interpolation grid, used to check uniqueness with a second grid.
    Int grid_shift = 0;
};

class DeltaWalk;

// A quasi-polynomial character supported on offset + (Lambda cap S). For delta objects
// the evaluation either uses per-coset polynomials of d(Lambda cap S), or, when the period
// makes those too many, the exact difference walk into the tope.
class QuasiPolynomialChar {
public:
    std::size_t rank() const { return rank_; }
    const std::vector<Weight>& carrier() const { return carrier_; }
    const Weight& offset() const { return offset_; }
    Int period() const { return period_; }
    std::size_t degree_bound() const { return degree_bound_; }
    bool is_explicit() const { return explicit_; }
    // Keys are residues of carrier coordinates modulo the period; polynomials are in
    // u = (z - residue) / period.
    const std::map<std::vector<Int>, Poly>& coset_polys() const { return polys_; }
    int max_degree() const;

    Int eval(const Weight& lambda) const;
    // Same value through the difference walk, independent of the coset polynomials.
    Int eval_walk(const Weight& lambda) const;
    std::optional<std::vector<Int>> carrier_coords(const Weight& lambda) const;
    SupportedFunction as_supported() const;

private:
    friend QuasiPolynomialChar delta_construct(const WeightList&, const RatVec&, const TopeId&, const DeltaOptions&);

    std::size_t rank_ = 0;
    std::vector<Weight> carrier_;
    Weight offset_;
    Int period_ = 1;
    std::size_t degree_bound_ = 0;
    bool explicit_ = false;
    std::map<std::vector<Int>, Poly> polys_;
    // Integer left inverse of the carrier on pivot coordinates.
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<Int>> adj_;
    Int det_ = 1;
    std::shared_ptr<DeltaWalk> walk_;
};

// delta[Phi ^ Y, T]: the quasi-polynomial agreeing with F Theta[Phi ^ Y] on the tope T of
// span(Phi). The tope is given by a TopeId with witness from tope_of.
QuasiPolynomialChar delta_construct(const WeightList& phi, const RatVec& y, const TopeId& tope,
                                    const DeltaOptions& opt = {});
Int qp_eval(const QuasiPolynomialChar& qp, const Weight& lambda);

// lcm of |det sigma| over bases sigma of span(phi) taken from phi, in Lambda cap S coordinates.
Int basis_period(const WeightList& phi);

struct QuasiPolynomial1D {
    Int period = 1;
    std::vector<std::vector<Q>> polys;  // per residue r, coefficients of 1, k, k^2, ...
    int degree() const;
    Q eval(Int k) const;
    std::string to_string() const;
};

struct Sample1D {
    Int k;
    Int v;
};

// Minimal (period, degree) quasi-polynomial fitted on `fit` and confirmed on `check`.
// A candidate is only considered when every residue class has at least degree + 2 fit samples.
std::optional<QuasiPolynomial1D> fit_quasipolynomial(const std::vector<Sample1D>& fit,
                                                     const std::vector<Sample1D>& check, Int max_period,
                                                     int max_degree);

// Samples at consecutive integers; first half fits, second half verifies.
QuasiPolynomial1D qp_fit_1d(const std::vector<Sample1D>& samples, Int max_period, int max_degree);

}  // namespace qrk
