#pragma once

#include "qrk/arith.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrk {

using Weight = std::vector<Int>;
using RatVec = std::vector<Q>;

RatVec to_q(const Weight& w);
Q dot(const Weight& a, const RatVec& y);
Q dot(const RatVec& a, const RatVec& b);
Int dot(const Weight& a, const Weight& b);
Weight add(const Weight& a, const Weight& b);
Weight sub(const Weight& a, const Weight& b);
Weight neg(const Weight& a);
Weight scale(const Weight& a, Int c);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Q& c);
bool is_zero(const Weight& w);
bool is_zero(const RatVec& v);
std::string to_string(const Weight& w);
std::string to_string(const RatVec& v);

namespace linalg {

// Reduced row echelon form over Q. Returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVec>& rows);
std::size_t rank_of(std::vector<RatVec> rows);
// Basis of {x : row . x = 0 for every row}, in ncols coordinates.
std::vector<RatVec> nullspace(std::vector<RatVec> rows, std::size_t ncols);
// Coefficients c with sum c_i basis_i = v, if v lies in the span.
std::optional<RatVec> coordinates(const std::vector<RatVec>& basis, const RatVec& v);
// Solve a square nonsingular system.
RatVec solve_square(std::vector<RatVec> a, RatVec b);
// Scale to a primitive integer vector with first nonzero entry positive.
std::vector<Z> primitive(const RatVec& v);

}  // namespace linalg

class Gram {
public:
    Gram() = default;
    explicit Gram(std::vector<RatVec> entries);
    static Gram identity(std::size_t n);

    std::size_t rank() const { return g_.size(); }
    const std::vector<RatVec>& entries() const { return g_; }
    // (a, b) for a, b in t*.
    Q inner(const RatVec& a, const RatVec& b) const;
    // The element of t dual to a in t* under the scalar product, in dual coordinates.
    RatVec to_dual(const RatVec& a) const;
    bool symmetric() const;
    bool positive_definite() const;

    bool operator==(const Gram& o) const { return g_ == o.g_; }

private:
    std::vector<RatVec> g_;
};

struct WeightEntry {
    Weight w;
    Int mult = 1;
    bool operator==(const WeightEntry& o) const { return w == o.w && mult == o.mult; }
};

// Multiset of nonzero weights, kept in canonical (lexicographic, merged) order.
class WeightList {
public:
    WeightList() = default;
    explicit WeightList(std::size_t rank) : rank_(rank) {}
    WeightList(std::size_t rank, const std::vector<Weight>& ws);

    void add(const Weight& w, Int mult = 1);
    std::size_t rank() const { return rank_; }
    const std::vector<WeightEntry>& entries() const { return entries_; }
    std::vector<Weight> expanded() const;
    std::size_t size() const;
    bool empty() const { return entries_.empty(); }

    bool operator==(const WeightList& o) const { return rank_ == o.rank_ && entries_ == o.entries_; }

private:
    std::size_t rank_ = 0;
    std::vector<WeightEntry> entries_;
};

std::string to_string(const WeightList& l);

class Subspace {
public:
    Subspace() = default;
    // Span of the given vectors; the basis is a greedy independent subset.
    static Subspace span_of(std::size_t rank, const std::vector<Weight>& vs);
    static Subspace zero(std::size_t rank) { return span_of(rank, {}); }

    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Weight>& basis() const { return basis_; }
    const std::vector<std::vector<Z>>& canonical() const { return canon_; }
    // Integer functionals cutting out the subspace.
    const std::vector<Weight>& normals() const { return normals_; }
    bool contains(const Weight& w) const;
    bool contains(const RatVec& v) const;
    std::string key() const;

    bool operator==(const Subspace& o) const { return rank_ == o.rank_ && canon_ == o.canon_; }
    bool operator<(const Subspace& o) const;

private:
    std::size_t rank_ = 0;
    std::vector<Weight> basis_;
    std::vector<std::vector<Z>> canon_;
    std::vector<Weight> normals_;
};

std::string to_string(const Subspace& s);

// Elements of l inside / outside s, with multiplicity.
WeightList intersect(const WeightList& l, const Subspace& s);
WeightList complement(const WeightList& l, const Subspace& s);
Subspace span_of(const WeightList& l);

struct Polarized {
    WeightList plus;
    WeightList minus;
};

// Y lies in t, given in dual coordinates, so <phi, Y> is the plain dot product.
Polarized polarize(const WeightList& phi, const RatVec& y);
bool is_polarizing(const WeightList& phi, const RatVec& y);

std::vector<Subspace> rational_subspaces(const WeightList& phi);

// Hyperplanes of span(phi) spanned by elements of phi, in canonical order, each with
// an integer functional that vanishes on it but not on span(phi).
struct Arrangement {
    Subspace span;
    std::vector<Subspace> hyperplanes;
    std::vector<Weight> normals;
};

Arrangement arrangement_of(const WeightList& phi);

bool is_regular(const RatVec& gamma, const WeightList& phi);
bool is_regular(const RatVec& gamma, const Arrangement& a);

struct TopeId {
    std::vector<signed char> signs;
    RatVec witness;
    bool operator==(const TopeId& o) const { return signs == o.signs; }
};

TopeId tope_of(const RatVec& gamma, const WeightList& phi);
TopeId tope_of(const RatVec& gamma, const Arrangement& a);
bool in_tope(const RatVec& x, const Arrangement& a, const TopeId& t);

struct Projection {
    RatVec gamma_s;
    RatVec y;  // gamma_s - gamma, an element of t* orthogonal to S
};

Projection orthogonal_project(const RatVec& gamma, const Subspace& s, const Gram& g);

// Basis of the saturated lattice Lambda cap S, in Hermite normal form.
std::vector<Weight> sublattice_basis(const Subspace& s, std::size_t rank);

class ManifoldModel;

struct AlcoveId {
    std::vector<std::vector<signed char>> signs;
    RatVec witness;
    bool operator==(const AlcoveId& o) const { return signs == o.signs; }
};

AlcoveId alcove_of(const RatVec& gamma, const ManifoldModel& model);

struct GenericOptions {
    Q radius = Q(1, 4);
    int retries = 200;
};

// Genericity with respect to a set of shifted lists (mu_p, Phi_p).
struct ShiftedList {
    Weight mu;
    WeightList phi;
};

// Failure reason, or empty if gamma satisfies every decomposition condition.
std::string genericity_violation(const RatVec& gamma, const std::vector<ShiftedList>& data, const Gram& g);
RatVec generic_gamma(const std::vector<ShiftedList>& data, const Gram& g, const RatVec& near,
                     unsigned long long seed, const GenericOptions& opt = {});
RatVec generic_gamma(const ManifoldModel& model, const RatVec& near, unsigned long long seed,
                     const GenericOptions& opt = {});

}  // namespace qrk
