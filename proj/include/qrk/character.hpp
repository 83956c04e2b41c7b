#pragma once

#include "qrk/lattice.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace qrk {

struct WeightHash {
    std::size_t operator()(const Weight& w) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (Int x : w) h ^= std::hash<Int>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

// Finitely supported Lambda -> Z; zero values are never stored.
class FormalCharacter {
public:
    FormalCharacter() = default;
    explicit FormalCharacter(std::size_t rank) : rank_(rank) {}
    static FormalCharacter unit(std::size_t rank);
    static FormalCharacter monomial(const Weight& w, Int c = 1);

    std::size_t rank() const { return rank_; }
    void add(const Weight& w, Int c);
    Int at(const Weight& w) const;
    const std::map<Weight, Int>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    FormalCharacter operator+(const FormalCharacter& o) const;
    FormalCharacter operator-(const FormalCharacter& o) const;
    bool operator==(const FormalCharacter& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

private:
    std::size_t rank_ = 0;
    std::map<Weight, Int> terms_;
};

FormalCharacter fc_multiply(const FormalCharacter& a, const FormalCharacter& b);
// prod over the list of (1 - e_phi)
FormalCharacter one_minus_product(const WeightList& phi);

class Box {
public:
    Box() = default;
    Box(Weight lo, Weight hi);
    static Box cube(std::size_t rank, Int lo, Int hi);

    std::size_t rank() const { return lo_.size(); }
    const Weight& lo() const { return lo_; }
    const Weight& hi() const { return hi_; }
    bool contains(const Weight& w) const;
    std::size_t count() const;
    Box shrink(Int margin) const;
    // Points of the box that are not in shrink(1).
    bool on_shell(const Weight& w) const;
    void for_each(const std::function<void(const Weight&)>& f) const;
    std::vector<Weight> points() const;

private:
    Weight lo_, hi_;
};

// F Theta[Phi ^ Y](lambda) by the deletion recursion, memoized per instance.
class PartitionFunction {
public:
    PartitionFunction(const WeightList& phi, const RatVec& y);

    Int operator()(const Weight& lambda) const;
    int sign() const { return sign_; }
    // -sum of Phi_-
    const Weight& shift() const { return shift_; }
    const std::vector<Weight>& reoriented() const { return psi_; }
    // Integer grading: a positive multiple of Y.
    const Weight& grading() const { return grade_; }
    std::size_t rank() const { return rank_; }
    // Number of nonnegative integer combinations of the reoriented list equal to x.
    Int count(const Weight& x) const;

private:
    Int count_locked(std::size_t i, const Weight& x) const;

    std::size_t rank_;
    std::vector<Weight> psi_;
    std::vector<Int> psi_grade_;
    Weight grade_;
    Weight shift_;
    int sign_ = 1;
    mutable std::mutex mu_;
    mutable std::vector<std::unordered_map<Weight, Int, WeightHash>> memo_;
};

// Integer positive multiple of a rational vector.
Weight integer_direction(const RatVec& y);

Int kpf_eval(const WeightList& phi, const RatVec& y, const Weight& lambda);
FormalCharacter theta_on_box(const WeightList& phi, const RatVec& y, const Box& box);

struct PolarizedSeries {
    WeightList phi;
    RatVec y;
    int sign = 1;
    Weight shift;
};

PolarizedSeries make_series(const WeightList& phi, const RatVec& y);

// A function on Lambda supported on offset + (lattice spanned by carrier).
struct SupportedFunction {
    std::function<Int(const Weight&)> eval;
    std::vector<Weight> carrier;
    Weight offset;
};

// F(Theta * f)(lambda) for a polarized series and a function supported on a slice
// that is constant under the grading. The sum over the cone is finite.
class GradedConvolution {
public:
    GradedConvolution(PolarizedSeries series, SupportedFunction f, const RatVec& grade);
    Int operator()(const Weight& lambda) const;

private:
    Int fold_locked(std::size_t i, const Weight& x) const;
    Int grade_of(const Weight& x) const;

    PolarizedSeries series_;
    SupportedFunction f_;
    std::vector<Weight> psi_;
    Weight grade_;
    Int level_ = 0;
    mutable std::mutex mu_;
    mutable std::vector<std::unordered_map<Weight, Int, WeightHash>> memo_;
};

Int graded_convolution_eval(const PolarizedSeries& series, const SupportedFunction& f, const RatVec& grade,
                            const Weight& lambda);

}  // namespace qrk
