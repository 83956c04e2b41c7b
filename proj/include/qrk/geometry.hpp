#pragma once

#include "qrk/quasipoly.hpp"

#include <string>

namespace qrk {

struct FixedPointDatum {
    std::string id;
    Weight mu;
    WeightList tangent;
    std::vector<Weight> fiber_even;
    std::vector<Weight> fiber_odd;
};

// A fixed-point component: the fixed points it contains and S, the annihilator of its
// stabilizer Lie algebra.
struct Component {
    std::vector<std::string> ids;
    Subspace s;
    // Optional user knowledge: whether the alcove of gamma_C lies in the G-moment image of C.
    std::optional<bool> alcove_in_image;
};

class ManifoldModel {
public:
    std::string name;
    std::size_t rank = 0;
    Gram gram;
    std::vector<FixedPointDatum> fixed_points;
    std::vector<Component> components;

    std::size_t index_of(const std::string& id) const;
    // Index of the component containing every fixed point with S the span of the tangent weights.
    std::optional<std::size_t> whole_manifold() const;
    std::vector<ShiftedList> shifted_lists() const;
};

ManifoldModel builtin_p1();
ManifoldModel builtin_flag3();
// "builtin:p1", "builtin:flag3", or a path to a JSON model file.
ManifoldModel load_model(const std::string& source);

std::string model_to_json(const ManifoldModel& m);
ManifoldModel model_from_json(const std::string& text);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport model_validate(const ManifoldModel& m);

// Per fixed point, the fiber weights of a Z/2-graded bundle; plain bundles have empty odd parts.
struct Bundle {
    std::vector<std::vector<Weight>> even;
    std::vector<std::vector<Weight>> odd;

    // The trivial line bundle, so that Bundle(...) tensor L^k is L^k.
    static Bundle trivial(const ManifoldModel& m);
    // The fibers recorded in the model.
    static Bundle from_model(const ManifoldModel& m);
    bool graded() const;
};

// Tensor product with the exterior algebra of n^-, whose weights are the negative roots.
Bundle tensor_exterior(const Bundle& b, const WeightList& negative_roots);

// F chi_{E tensor L^k} by the fixed point formula, sharing partition-function memos.
class ChiEvaluator {
public:
    ChiEvaluator(const ManifoldModel& m, const Bundle& b, const RatVec& y);
    Int operator()(Int k, const Weight& lambda) const;

private:
    const ManifoldModel* m_;
    Bundle b_;
    std::vector<std::unique_ptr<PartitionFunction>> pf_;
};

Int chi_multiplicity(const ManifoldModel& m, const Bundle& b, Int k, const Weight& lambda, const RatVec& y);
// Throws SupportLeak if the box contains the support hull and the outer shell is not zero.
FormalCharacter chi_table(const ManifoldModel& m, const Bundle& b, Int k, const Box& box, const RatVec& y);
// Coordinate box that contains the support of chi_{E tensor L^k}.
Box support_hull(const ManifoldModel& m, const Bundle& b, Int k);

// Term_C for one component, for a generic gamma.
class ComponentTerm {
public:
    ComponentTerm(const ManifoldModel& m, std::size_t component, const RatVec& gamma, const RatVec& y,
                  const DeltaOptions& opt = {});

    std::size_t component() const { return c_; }
    const RatVec& gamma_c() const { return gamma_c_; }
    // gamma_C - gamma in t*.
    const RatVec& y_c() const { return y_c_; }
    // Y_C as an element of t, in dual coordinates.
    const RatVec& grade() const { return grade_; }
    Int eval(const Bundle& b, Int k, const Weight& lambda) const;
    // Points with (lambda, Y_C) below this value lie outside the support of Term_C[E tensor L^k].
    Q half_space_bound(const Bundle& b, Int k) const;

private:
    struct Piece {
        std::size_t point;
        Weight mu;
        std::shared_ptr<GradedConvolution> conv;
    };
    const ManifoldModel* m_;
    std::size_t c_;
    RatVec gamma_c_, y_c_, grade_;
    std::vector<Piece> pieces_;
};

Int term_coefficient(const ManifoldModel& m, std::size_t component, const Bundle& b, Int k, const RatVec& gamma,
                     const Weight& lambda, const RatVec& y);

struct DecompositionReport {
    bool ok = true;
    std::size_t points = 0;
    std::optional<Weight> mismatch;
    Int expected = 0;
    Int got = 0;
    std::vector<std::pair<std::size_t, Weight>> half_space_violations;
    FormalCharacter chi;
    std::vector<FormalCharacter> terms;  // per component
};

DecompositionReport decomposition_verify(const ManifoldModel& m, const Bundle& b, Int k, const RatVec& gamma,
                                         const Box& box, const RatVec& y, const DeltaOptions& opt = {});

// A vector polarizing every tangent list of the model, deterministic in the seed.
RatVec polarizing_vector(const ManifoldModel& m, unsigned long long seed);

}  // namespace qrk
