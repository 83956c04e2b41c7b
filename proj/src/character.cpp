#include "qrk/character.hpp"

#include <algorithm>
#include <numeric>

namespace qrk {

FormalCharacter FormalCharacter::unit(std::size_t rank) { return monomial(Weight(rank, 0)); }

FormalCharacter FormalCharacter::monomial(const Weight& w, Int c) {
    FormalCharacter f(w.size());
    f.add(w, c);
    return f;
}

void FormalCharacter::add(const Weight& w, Int c) {
    if (w.size() != rank_) throw Error(ErrorKind::InvalidInput, "character rank mismatch");
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second = checked::add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

Int FormalCharacter::at(const Weight& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
}

FormalCharacter FormalCharacter::operator+(const FormalCharacter& o) const {
    FormalCharacter r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, c);
    return r;
}

FormalCharacter FormalCharacter::operator-(const FormalCharacter& o) const {
    FormalCharacter r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, checked::sub(0, c));
    return r;
}

FormalCharacter fc_multiply(const FormalCharacter& a, const FormalCharacter& b) {
    if (a.rank() != b.rank()) throw Error(ErrorKind::InvalidInput, "character rank mismatch");
    FormalCharacter r(a.rank());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) r.add(add(wa, wb), checked::mul(ca, cb));
    return r;
}

FormalCharacter one_minus_product(const WeightList& phi) {
    FormalCharacter r = FormalCharacter::unit(phi.rank());
    for (const auto& w : phi.expanded()) {
        FormalCharacter f = FormalCharacter::unit(phi.rank());
        f.add(w, -1);
        r = fc_multiply(r, f);
    }
    return r;
}

Box::Box(Weight lo, Weight hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) throw Error(ErrorKind::InvalidInput, "box bounds differ in length");
}

Box Box::cube(std::size_t rank, Int lo, Int hi) { return Box(Weight(rank, lo), Weight(rank, hi)); }

bool Box::contains(const Weight& w) const {
    if (w.size() != lo_.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] < lo_[i] || w[i] > hi_[i]) return false;
    return true;
}

std::size_t Box::count() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        if (hi_[i] < lo_[i]) return 0;
        n *= static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
    }
    return n;
}

Box Box::shrink(Int margin) const {
    Weight lo = lo_, hi = hi_;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = checked::add(lo[i], margin);
        hi[i] = checked::sub(hi[i], margin);
    }
    return Box(lo, hi);
}

bool Box::on_shell(const Weight& w) const {
    if (!contains(w)) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == lo_[i] || w[i] == hi_[i]) return true;
    return false;
}

void Box::for_each(const std::function<void(const Weight&)>& f) const {
    if (count() == 0) return;
    Weight cur = lo_;
    for (;;) {
        f(cur);
        std::size_t i = cur.size();
        while (i > 0) {
            --i;
            if (cur[i] < hi_[i]) {
                ++cur[i];
                break;
            }
            cur[i] = lo_[i];
            if (i == 0) return;
        }
        if (cur.empty()) return;
    }
}

std::vector<Weight> Box::points() const {
    std::vector<Weight> out;
    for_each([&](const Weight& w) { out.push_back(w); });
    return out;
}

Weight integer_direction(const RatVec& y) {
    Z den = 1;
    for (const auto& x : y) den = lcm_z(den, x.get_den());
    Weight w(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) w[i] = to_int(Z(y[i].get_num() * (den / y[i].get_den())));
    return w;
}

namespace {

void reorient(const WeightList& phi, const RatVec& y, std::vector<Weight>& psi, Weight& shift, int& sign) {
    shift = Weight(phi.rank(), 0);
    sign = 1;
    for (const auto& w : phi.expanded()) {
        int s = sgn(dot(w, y));
        if (s == 0) throw Error(ErrorKind::NotPolarizing, "<" + to_string(w) + ", Y> = 0");
        if (s > 0) {
            psi.push_back(w);
        } else {
            psi.push_back(neg(w));
            shift = sub(shift, w);
            sign = -sign;
        }
    }
}

}  // namespace

PartitionFunction::PartitionFunction(const WeightList& phi, const RatVec& y) : rank_(phi.rank()) {
    if (y.size() != rank_) throw Error(ErrorKind::InvalidInput, "Y has wrong length");
    grade_ = integer_direction(y);
    reorient(phi, y, psi_, shift_, sign_);
    std::stable_sort(psi_.begin(), psi_.end(), [&](const Weight& a, const Weight& b) {
        Int ga = dot(a, grade_), gb = dot(b, grade_);
        return ga != gb ? ga > gb : a < b;
    });
    for (const auto& p : psi_) psi_grade_.push_back(dot(p, grade_));
    memo_.resize(psi_.size());
}

Int PartitionFunction::operator()(const Weight& lambda) const {
    if (lambda.size() != rank_) throw Error(ErrorKind::InvalidInput, "lambda has wrong length");
    return checked::mul(sign_, count(sub(lambda, shift_)));
}

Int PartitionFunction::count(const Weight& x) const {
    std::lock_guard<std::mutex> lock(mu_);
    return count_locked(0, x);
}

Int PartitionFunction::count_locked(std::size_t i, const Weight& x) const {
    Int g = dot(x, grade_);
    if (g < 0) return 0;
    std::size_t n = psi_.size();
    if (i == n || g == 0) return is_zero(x) ? 1 : 0;
    if (i + 1 == n) {
        if (g % psi_grade_[i] != 0) return 0;
        return scale(psi_[i], g / psi_grade_[i]) == x ? 1 : 0;
    }
    auto& memo = memo_[i];
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    // N(i, x) = N(i+1, x) + N(i, x - psi_i), unrolled along the chain x - t psi_i.
    std::vector<Weight> chain;
    Int tail = 0;
    Weight cur = x;
    for (;;) {
        if (dot(cur, grade_) < 0) break;
        if (auto it = memo.find(cur); it != memo.end()) {
            tail = it->second;
            break;
        }
        chain.push_back(cur);
        cur = sub(cur, psi_[i]);
    }
    Int val = tail;
    for (std::size_t j = chain.size(); j-- > 0;) {
        val = checked::add(val, count_locked(i + 1, chain[j]));
        memo.emplace(chain[j], val);
    }
    return val;
}

Int kpf_eval(const WeightList& phi, const RatVec& y, const Weight& lambda) {
    return PartitionFunction(phi, y)(lambda);
}

FormalCharacter theta_on_box(const WeightList& phi, const RatVec& y, const Box& box) {
    PartitionFunction p(phi, y);
    FormalCharacter out(phi.rank());
    box.for_each([&](const Weight& l) { out.add(l, p(l)); });
    return out;
}

PolarizedSeries make_series(const WeightList& phi, const RatVec& y) {
    PolarizedSeries s{phi, y, 1, {}};
    std::vector<Weight> psi;
    reorient(phi, y, psi, s.shift, s.sign);
    return s;
}

GradedConvolution::GradedConvolution(PolarizedSeries series, SupportedFunction f, const RatVec& grade)
    : series_(std::move(series)), f_(std::move(f)) {
    grade_ = integer_direction(grade);
    Weight shift;
    int sign;
    reorient(series_.phi, series_.y, psi_, shift, sign);
    for (const auto& p : psi_)
        if (dot(p, grade_) <= 0)
            throw Error(ErrorKind::UngradedSupport, "series element " + to_string(p) + " is not positively graded");
    for (const auto& c : f_.carrier)
        if (dot(c, grade_) != 0)
            throw Error(ErrorKind::UngradedSupport, "carrier direction " + to_string(c) + " is not graded constantly");
    level_ = f_.offset.empty() ? 0 : dot(f_.offset, grade_);
    std::stable_sort(psi_.begin(), psi_.end(), [&](const Weight& a, const Weight& b) {
        Int ga = dot(a, grade_), gb = dot(b, grade_);
        return ga != gb ? ga > gb : a < b;
    });
    memo_.resize(psi_.size());
}

Int GradedConvolution::grade_of(const Weight& x) const { return dot(x, grade_); }

Int GradedConvolution::operator()(const Weight& lambda) const {
    Weight x = sub(lambda, series_.shift);
    std::lock_guard<std::mutex> lock(mu_);
    return checked::mul(series_.sign, fold_locked(0, x));
}

Int GradedConvolution::fold_locked(std::size_t i, const Weight& x) const {
    Int g = grade_of(x);
    if (g < level_) return 0;
    if (i == psi_.size()) return g == level_ ? f_.eval(x) : 0;
    auto& memo = memo_[i];
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::vector<Weight> chain;
    Int tail = 0;
    Weight cur = x;
    for (;;) {
        if (grade_of(cur) < level_) break;
        if (auto it = memo.find(cur); it != memo.end()) {
            tail = it->second;
            break;
        }
        chain.push_back(cur);
        cur = sub(cur, psi_[i]);
    }
    Int val = tail;
    for (std::size_t j = chain.size(); j-- > 0;) {
        val = checked::add(val, fold_locked(i + 1, chain[j]));
        memo.emplace(chain[j], val);
    }
    return val;
}

Int graded_convolution_eval(const PolarizedSeries& series, const SupportedFunction& f, const RatVec& grade,
                            const Weight& lambda) {
    return GradedConvolution(series, f, grade)(lambda);
}

}  // namespace qrk
