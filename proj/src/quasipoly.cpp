#include "qrk/quasipoly.hpp"

#include <algorithm>
#include <numeric>

namespace qrk {

Q Poly::eval(const std::vector<Int>& u) const {
    Q s = 0;
    for (const auto& [e, c] : coeffs) {
        Q term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            Z p;
            mpz_pow_ui(p.get_mpz_t(), Z(static_cast<long>(u[i])).get_mpz_t(), static_cast<unsigned long>(e[i]));
            term *= p;
        }
        s += term;
    }
    return s;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : coeffs) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

std::string to_string(const Poly& p, const std::vector<std::string>& vars) {
    if (p.coeffs.empty()) return "0";
    std::string s;
    // Highest degree first.
    std::vector<std::pair<std::vector<int>, Q>> terms(p.coeffs.begin(), p.coeffs.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = std::accumulate(a.first.begin(), a.first.end(), 0);
        int db = std::accumulate(b.first.begin(), b.first.end(), 0);
        return da > db;
    });
    for (const auto& [e, c] : terms) {
        Q a = abs(c);
        bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        if (constant || a != 1) s += a.get_str();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!(constant || a != 1) && s.back() != ' ' && s.back() != '-') s += "*";
            else if (constant || a != 1) s += "*";
            s += vars[i];
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
    }
    return s;
}

namespace {

// Coordinates on r pivot coordinates of a rank-r family, as adj / det.
struct PivotInverse {
    std::vector<std::size_t> pivots;
    std::vector<std::vector<Int>> adj;
    Int det = 1;
};

PivotInverse pivot_inverse(const std::vector<Weight>& basis, std::size_t n) {
    PivotInverse pi;
    std::size_t r = basis.size();
    if (r == 0) return pi;
    // Pivot coordinates: pivot columns of the matrix whose rows are the basis vectors.
    std::vector<RatVec> rows;
    for (const auto& b : basis) rows.push_back(to_q(b));
    pi.pivots = linalg::rref(rows);
    if (pi.pivots.size() != r) throw Error(ErrorKind::InvalidInput, "family is not independent");
    (void)n;
    // m[i][j] = basis_j[pivot_i]; coords c solve m c = x_P.
    std::vector<RatVec> m(r, RatVec(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m[i][j] = Q(static_cast<long>(basis[j][pi.pivots[i]]));
    // Determinant and inverse by elimination on [m | I].
    std::vector<RatVec> aug(r, RatVec(2 * r, Q(0)));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug[i][j] = m[i][j];
        aug[i][r + i] = 1;
    }
    Q det = 1;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t p = c;
        while (aug[p][c] == 0) ++p;
        if (p != c) {
            std::swap(aug[p], aug[c]);
            det = -det;
        }
        det *= aug[c][c];
        Q inv = 1 / aug[c][c];
        for (auto& x : aug[c]) x *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            Q f = aug[i][c];
            for (std::size_t j = 0; j < 2 * r; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    // Keep det positive so that adj * x has the signs of the true coordinates.
    if (det < 0) det = -det;
    pi.det = to_int(det);
    pi.adj.assign(r, std::vector<Int>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) pi.adj[i][j] = to_int(aug[i][r + j] * det);
    return pi;
}

std::vector<Int> pivot_apply(const PivotInverse& pi, const Weight& x) {
    std::size_t r = pi.pivots.size();
    std::vector<Int> c(r);
    for (std::size_t i = 0; i < r; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < r; ++j) s = checked::add(s, checked::mul(pi.adj[i][j], x[pi.pivots[j]]));
        c[i] = s;
    }
    return c;
}

Int gcd_vec(const Weight& w) {
    Int g = 0;
    for (Int x : w) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

Weight reduce_direction(Weight w) {
    Int g = gcd_vec(w);
    if (g > 1)
        for (auto& x : w) x /= g;
    return w;
}

// A short lattice vector inside the tope, preferring the one whose smallest angle to a
// wall is largest. Falls back to the witness scaled to an integer vector.
Weight interior_direction(const Arrangement& arr, const TopeId& tope, const std::vector<Weight>& carrier) {
    std::size_t r = carrier.size();
    std::size_t n = arr.span.rank();
    Weight best;
    Q best_score = -1;
    const Int radius = r <= 2 ? 6 : 3;
    std::vector<Int> z(r, -radius);
    for (;;) {
        Weight x(n, 0);
        for (std::size_t i = 0; i < r; ++i) x = add(x, scale(carrier[i], z[i]));
        if (!is_zero(x)) {
            Q xx = 0;
            for (Int c : x) xx += Q(static_cast<long>(c)) * static_cast<long>(c);
            Q score = -1;
            bool inside = true;
            for (std::size_t j = 0; j < arr.normals.size() && inside; ++j) {
                Int d = dot(arr.normals[j], x);
                if ((d > 0 ? 1 : (d < 0 ? -1 : 0)) != tope.signs[j]) {
                    inside = false;
                    break;
                }
                Q nn = 0;
                for (Int c : arr.normals[j]) nn += Q(static_cast<long>(c)) * static_cast<long>(c);
                Q cos2 = Q(static_cast<long>(d)) * static_cast<long>(d) / (nn * xx);
                if (score < 0 || cos2 < score) score = cos2;
            }
            if (inside && arr.normals.empty()) score = 1 / xx;
            if (inside && (score > best_score || (score == best_score && x < best))) {
                best_score = score;
                best = x;
            }
        }
        std::size_t i = 0;
        while (i < r && z[i] == radius) z[i++] = -radius;
        if (i == r) break;
        ++z[i];
    }
    if (best.empty()) return reduce_direction(integer_direction(tope.witness));
    return reduce_direction(best);
}

}  // namespace

// The difference walk: for phi in a basis sigma of the current list, (1 - e_phi) delta
// equals delta of the list without phi when that still spans, and 0 otherwise. Stepping
// along +-phi towards the witness direction therefore relates delta(x) to its value at a
// point of the tope, where it equals the partition function. Lists of size dim are
// handled in closed form.
class DeltaWalk {
public:
    DeltaWalk(const WeightList& phi, const RatVec& y, const Weight& direction);
    Int eval(const Weight& x);

private:
    struct Level {
        std::vector<Int> counts;
        WeightList list;
        Arrangement arr;
        std::vector<signed char> target;
        std::unique_ptr<PartitionFunction> pf;
        std::vector<Weight> sigma;
        std::vector<std::size_t> sigma_entry;
        std::vector<bool> removable;
        PivotInverse inv;
        std::vector<Int> a;  // adj * witness_P
        bool basis = false;
        bool basis_match = false;
        int basis_sign = 1;
        std::unordered_map<Weight, Int, WeightHash> memo;
    };

    Level& level(const std::vector<Int>& counts);
    Int eval_level(Level& lv, const Weight& x);
    bool in_tope(const Level& lv, const Weight& x) const;

    std::size_t n_;
    Subspace span_;
    std::vector<WeightEntry> entries_;
    RatVec y_;
    Weight w_;
    std::map<std::vector<Int>, std::unique_ptr<Level>> levels_;
    std::mutex mu_;
    static constexpr std::size_t kMaxChain = 50'000'000;
};

DeltaWalk::DeltaWalk(const WeightList& phi, const RatVec& y, const Weight& direction)
    : n_(phi.rank()), span_(span_of(phi)), entries_(phi.entries()), y_(y), w_(direction) {}

DeltaWalk::Level& DeltaWalk::level(const std::vector<Int>& counts) {
    auto it = levels_.find(counts);
    if (it != levels_.end()) return *it->second;
    auto lv = std::make_unique<Level>();
    lv->counts = counts;
    lv->list = WeightList(n_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (counts[i] > 0) lv->list.add(entries_[i].w, counts[i]);
    lv->arr = arrangement_of(lv->list);
    for (const auto& nrm : lv->arr.normals) lv->target.push_back(static_cast<signed char>(sgn(Z(static_cast<long>(dot(nrm, w_))))));
    std::size_t r = span_.dim();
    // Greedy basis; elements whose removal breaks the span are always picked.
    std::vector<RatVec> rows;
    for (std::size_t i = 0; i < entries_.size() && lv->sigma.size() < r; ++i) {
        if (counts[i] == 0) continue;
        rows.push_back(to_q(entries_[i].w));
        if (linalg::rank_of(rows) == rows.size()) {
            lv->sigma.push_back(entries_[i].w);
            lv->sigma_entry.push_back(i);
        } else {
            rows.pop_back();
        }
    }
    lv->inv = pivot_inverse(lv->sigma, n_);
    lv->a = pivot_apply(lv->inv, w_);
    lv->basis = static_cast<std::size_t>(std::accumulate(counts.begin(), counts.end(), Int(0))) == r;
    if (lv->basis) {
        lv->basis_match = true;
        for (std::size_t i = 0; i < r; ++i) {
            int sy = sgn(dot(lv->sigma[i], y_));
            int sa = lv->a[i] > 0 ? 1 : -1;
            if (sy != sa) lv->basis_match = false;
            if (sy < 0) lv->basis_sign = -lv->basis_sign;
        }
    } else {
        lv->pf = std::make_unique<PartitionFunction>(lv->list, y_);
        for (std::size_t i = 0; i < r; ++i) {
            std::size_t e = lv->sigma_entry[i];
            bool keeps = counts[e] > 1;
            if (!keeps) {
                std::vector<Weight> rest;
                for (std::size_t j = 0; j < entries_.size(); ++j)
                    if (j != e && counts[j] > 0) rest.push_back(entries_[j].w);
                keeps = Subspace::span_of(n_, rest).dim() == r;
            }
            lv->removable.push_back(keeps);
        }
    }
    auto& ref = *lv;
    levels_.emplace(counts, std::move(lv));
    return ref;
}

bool DeltaWalk::in_tope(const Level& lv, const Weight& x) const {
    for (std::size_t i = 0; i < lv.arr.normals.size(); ++i) {
        Int d = dot(lv.arr.normals[i], x);
        int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (s != lv.target[i]) return false;
    }
    return true;
}

Int DeltaWalk::eval(const Weight& x) {
    if (x.size() != n_) throw Error(ErrorKind::InvalidInput, "lambda has wrong length");
    if (!span_.contains(x)) return 0;
    if (span_.dim() == 0) return is_zero(x) ? 1 : 0;
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<Int> counts;
    for (const auto& e : entries_) counts.push_back(e.mult);
    return eval_level(level(counts), x);
}

Int DeltaWalk::eval_level(Level& lv, const Weight& x) {
    std::size_t r = lv.sigma.size();
    if (lv.basis) {
        if (!lv.basis_match) return 0;
        auto c = pivot_apply(lv.inv, x);
        for (Int ci : c)
            if (ci % lv.inv.det != 0) return 0;
        return lv.basis_sign;
    }
    if (auto it = lv.memo.find(x); it != lv.memo.end()) return it->second;
    std::vector<Weight> xs{x};
    std::vector<Int> corr;
    Int base = 0;
    for (;;) {
        const Weight cur = xs.back();
        if (xs.size() > 1) {
            if (auto it = lv.memo.find(cur); it != lv.memo.end()) {
                base = it->second;
                break;
            }
        }
        if (in_tope(lv, cur)) {
            base = (*lv.pf)(cur);
            lv.memo.emplace(cur, base);
            break;
        }
        if (xs.size() > kMaxChain) throw Error(ErrorKind::ValidationFailed, "difference walk did not reach the tope");
        // Advance the coordinate that lags furthest behind the witness direction.
        auto c = pivot_apply(lv.inv, cur);
        std::size_t best = 0;
        for (std::size_t i = 1; i < r; ++i) {
            // compare c_i / a_i < c_best / a_best
            __int128 lhs = static_cast<__int128>(c[i]) * (lv.a[best] < 0 ? -lv.a[best] : lv.a[best]) * (lv.a[i] < 0 ? -1 : 1);
            __int128 rhs = static_cast<__int128>(c[best]) * (lv.a[i] < 0 ? -lv.a[i] : lv.a[i]) * (lv.a[best] < 0 ? -1 : 1);
            if (lhs < rhs) best = i;
        }
        const Weight& phi = lv.sigma[best];
        bool up = lv.a[best] > 0;
        Weight next = up ? add(cur, phi) : sub(cur, phi);
        Int d = 0;
        if (lv.removable[best]) {
            auto counts = lv.counts;
            --counts[lv.sigma_entry[best]];
            Level& child = level(counts);
            d = up ? -eval_level(child, next) : eval_level(child, cur);
        }
        corr.push_back(d);
        xs.push_back(std::move(next));
    }
    Int val = base;
    for (std::size_t j = corr.size(); j-- > 0;) {
        val = checked::add(val, corr[j]);
        lv.memo.emplace(xs[j], val);
    }
    return val;
}

int QuasiPolynomialChar::max_degree() const {
    int d = -1;
    for (const auto& [k, p] : polys_) d = std::max(d, p.degree());
    return d;
}

std::optional<std::vector<Int>> QuasiPolynomialChar::carrier_coords(const Weight& lambda) const {
    if (lambda.size() != rank_) throw Error(ErrorKind::InvalidInput, "lambda has wrong length");
    Weight x = sub(lambda, offset_);
    if (carrier_.empty()) {
        if (!is_zero(x)) return std::nullopt;
        return std::vector<Int>{};
    }
    PivotInverse pi{pivots_, adj_, det_};
    auto c = pivot_apply(pi, x);
    std::vector<Int> z(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] % det_ != 0) return std::nullopt;
        z[i] = c[i] / det_;
    }
    Weight back(rank_, 0);
    for (std::size_t i = 0; i < z.size(); ++i) back = add(back, scale(carrier_[i], z[i]));
    if (back != x) return std::nullopt;
    return z;
}

Int QuasiPolynomialChar::eval(const Weight& lambda) const {
    auto z = carrier_coords(lambda);
    if (!z) return 0;
    if (!explicit_) return walk_->eval(lambda);
    std::vector<Int> res(z->size()), u(z->size());
    for (std::size_t i = 0; i < z->size(); ++i) {
        Int m = (*z)[i] % period_;
        if (m < 0) m += period_;
        res[i] = m;
        u[i] = ((*z)[i] - m) / period_;
    }
    auto it = polys_.find(res);
    if (it == polys_.end()) return 0;
    Q v = it->second.eval(u);
    if (v.get_den() != 1) throw Error(ErrorKind::NonIntegerValue, "quasi-polynomial value " + v.get_str());
    return to_int(v);
}

Int QuasiPolynomialChar::eval_walk(const Weight& lambda) const {
    if (!carrier_coords(lambda)) return 0;
    return walk_->eval(lambda);
}

SupportedFunction QuasiPolynomialChar::as_supported() const {
    auto self = std::make_shared<QuasiPolynomialChar>(*this);
    return SupportedFunction{[self](const Weight& l) { return self->eval(l); }, carrier_, offset_};
}

Int qp_eval(const QuasiPolynomialChar& qp, const Weight& lambda) { return qp.eval(lambda); }

Int basis_period(const WeightList& phi) {
    Subspace s = span_of(phi);
    std::size_t r = s.dim();
    if (r == 0) return 1;
    auto carrier = sublattice_basis(s, phi.rank());
    auto pi = pivot_inverse(carrier, phi.rank());
    std::vector<std::vector<Int>> coords;
    for (const auto& e : phi.entries()) {
        auto c = pivot_apply(pi, e.w);
        for (auto& x : c) x /= pi.det;
        coords.push_back(c);
    }
    Z l = 1;
    std::size_t k = coords.size();
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        std::vector<RatVec> m;
        for (auto i : idx) {
            RatVec row;
            for (Int x : coords[i]) row.push_back(Q(static_cast<long>(x)));
            m.push_back(row);
        }
        // determinant by elimination
        Q det = 1;
        for (std::size_t c = 0; c < r && det != 0; ++c) {
            std::size_t p = c;
            while (p < r && m[p][c] == 0) ++p;
            if (p == r) {
                det = 0;
                break;
            }
            if (p != c) {
                std::swap(m[p], m[c]);
                det = -det;
            }
            det *= m[c][c];
            for (std::size_t i = c + 1; i < r; ++i) {
                Q f = m[i][c] / m[c][c];
                for (std::size_t j = c; j < r; ++j) m[i][j] -= f * m[c][j];
            }
        }
        if (det != 0) l = lcm_z(l, Z(abs(det.get_num())));
        // next combination
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == k - r + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return to_int(l);
}

namespace {

std::vector<std::vector<int>> exponents_up_to(std::size_t r, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == r) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(0, m);
    return out;
}

Q monomial(const std::vector<int>& e, const std::vector<Int>& u) {
    Q v = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int j = 0; j < e[i]; ++j) v *= Q(static_cast<long>(u[i]));
    return v;
}

}  // namespace

QuasiPolynomialChar delta_construct(const WeightList& phi, const RatVec& y, const TopeId& tope,
                                    const DeltaOptions& opt) {
    std::size_t n = phi.rank();
    if (y.size() != n) throw Error(ErrorKind::InvalidInput, "Y has wrong length");
    polarize(phi, y);
    Arrangement arr = arrangement_of(phi);
    TopeId check = tope_of(tope.witness, arr);
    if (!(check == tope)) throw Error(ErrorKind::InvalidInput, "tope signs do not match the witness");

    QuasiPolynomialChar qp;
    qp.rank_ = n;
    qp.offset_ = Weight(n, 0);
    std::size_t r = arr.span.dim();
    qp.carrier_ = sublattice_basis(arr.span, n);
    qp.degree_bound_ = phi.size() - r;
    auto pi = pivot_inverse(qp.carrier_, n);
    qp.pivots_ = pi.pivots;
    qp.adj_ = pi.adj;
    qp.det_ = pi.det;
    Weight dir = interior_direction(arr, tope, qp.carrier_);
    qp.walk_ = std::make_shared<DeltaWalk>(phi, y, dir);
    qp.period_ = basis_period(phi);

    if (r == 0) {
        qp.explicit_ = true;
        qp.polys_[{}].coeffs[{}] = 1;
        return qp;
    }

    Z ncosets = 1;
    for (std::size_t i = 0; i < r; ++i) ncosets *= qp.period_;
    bool build = opt.mode == DeltaOptions::Mode::Explicit ||
                 (opt.mode == DeltaOptions::Mode::Auto && ncosets <= Z(static_cast<unsigned long>(opt.max_cosets)));
    if (!build) return qp;
    if (ncosets > Z(1'000'000)) throw Error(ErrorKind::InvalidInput, "too many cosets for explicit construction");

    PartitionFunction pf(phi, y);
    int m = static_cast<int>(qp.degree_bound_);
    auto expo = exponents_up_to(r, m);
    std::vector<std::vector<int>> held;
    for (const auto& e : exponents_up_to(r, m + 1))
        if (std::accumulate(e.begin(), e.end(), 0) == m + 1) held.push_back(e);

    // Interior direction in carrier coordinates.
    Weight v(r);
    {
        auto z = pivot_apply(pi, dir);
        for (std::size_t i = 0; i < r; ++i) v[i] = z[i] / pi.det;
    }

    Int d = qp.period_;
    std::vector<std::vector<Int>> residues{{}};
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::vector<Int>> next;
        for (const auto& res : residues)
            for (Int c = 0; c < d; ++c) {
                auto t = res;
                t.push_back(c);
                next.push_back(t);
            }
        residues = next;
    }

    auto to_lambda = [&](const std::vector<Int>& res, const std::vector<Int>& u) {
        Weight l(n, 0);
        for (std::size_t i = 0; i < r; ++i) l = add(l, scale(qp.carrier_[i], checked::add(res[i], checked::mul(d, u[i]))));
        return l;
    };

    for (Int depth = opt.initial_depth; depth <= opt.max_depth; depth *= 2) {
        std::vector<Int> base(r);
        for (std::size_t i = 0; i < r; ++i) base[i] = checked::add(checked::mul(depth, v[i]), opt.grid_shift);
        auto node = [&](const std::vector<int>& g) {
            std::vector<Int> u(r);
            for (std::size_t i = 0; i < r; ++i) u[i] = base[i] + g[i];
            return u;
        };
        std::vector<RatVec> vand;
        for (const auto& g : expo) {
            RatVec row;
            auto u = node(g);
            for (const auto& e : expo) row.push_back(monomial(e, u));
            vand.push_back(row);
        }
        bool ok = true;
        std::map<std::vector<Int>, Poly> polys;
        for (const auto& res : residues) {
            RatVec vals;
            for (const auto& g : expo) {
                Weight l = to_lambda(res, node(g));
                if (!in_tope(to_q(l), arr, tope)) {
                    ok = false;
                    break;
                }
                vals.push_back(Q(static_cast<long>(pf(l))));
            }
            if (!ok) break;
            RatVec coef = linalg::solve_square(vand, vals);
            Poly p;
            for (std::size_t j = 0; j < expo.size(); ++j)
                if (coef[j] != 0) p.coeffs[expo[j]] = coef[j];
            for (const auto& h : held) {
                auto u = node(h);
                Weight l = to_lambda(res, u);
                if (!in_tope(to_q(l), arr, tope) || p.eval(u) != Q(static_cast<long>(pf(l)))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
            if (!p.coeffs.empty()) polys[res] = std::move(p);
        }
        if (ok) {
            qp.polys_ = std::move(polys);
            qp.explicit_ = true;
            return qp;
        }
    }
    throw Error(ErrorKind::ValidationFailed, "interpolation not confirmed up to depth " + std::to_string(opt.max_depth));
}

int QuasiPolynomial1D::degree() const {
    int d = -1;
    for (const auto& p : polys)
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != 0) d = std::max(d, static_cast<int>(i));
    return d;
}

Q QuasiPolynomial1D::eval(Int k) const {
    Int r = k % period;
    if (r < 0) r += period;
    Q v = 0, kp = 1;
    for (const auto& c : polys[static_cast<std::size_t>(r)]) {
        v += c * kp;
        kp *= Q(static_cast<long>(k));
    }
    return v;
}

std::string QuasiPolynomial1D::to_string() const {
    std::string s = "period " + std::to_string(period) + ":";
    for (std::size_t r = 0; r < polys.size(); ++r) {
        Poly p;
        for (std::size_t i = 0; i < polys[r].size(); ++i)
            if (polys[r][i] != 0) p.coeffs[{static_cast<int>(i)}] = polys[r][i];
        s += " [k=" + std::to_string(r) + " mod " + std::to_string(period) + "] " + qrk::to_string(p, {"k"}) + ";";
    }
    s.pop_back();
    return s;
}

std::optional<QuasiPolynomial1D> fit_quasipolynomial(const std::vector<Sample1D>& fit,
                                                     const std::vector<Sample1D>& check, Int max_period,
                                                     int max_degree) {
    for (Int d = 1; d <= max_period; ++d) {
        for (int deg = 0; deg <= max_degree; ++deg) {
            QuasiPolynomial1D q;
            q.period = d;
            bool ok = true;
            for (Int r = 0; r < d && ok; ++r) {
                std::vector<Sample1D> pts;
                for (const auto& s : fit)
                    if (((s.k % d) + d) % d == r) pts.push_back(s);
                if (pts.size() < static_cast<std::size_t>(deg + 2)) {
                    ok = false;
                    break;
                }
                std::vector<RatVec> a;
                RatVec b;
                for (int i = 0; i <= deg; ++i) {
                    RatVec row;
                    Q kp = 1;
                    for (int j = 0; j <= deg; ++j) {
                        row.push_back(kp);
                        kp *= Q(static_cast<long>(pts[static_cast<std::size_t>(i)].k));
                    }
                    a.push_back(row);
                    b.push_back(Q(static_cast<long>(pts[static_cast<std::size_t>(i)].v)));
                }
                RatVec c = linalg::solve_square(a, b);
                q.polys.push_back(c);
                QuasiPolynomial1D probe;
                probe.period = 1;
                probe.polys = {c};
                for (const auto& s : pts)
                    if (probe.eval(s.k) != Q(static_cast<long>(s.v))) ok = false;
            }
            if (!ok) continue;
            bool confirmed = true;
            for (const auto& s : check)
                if (q.eval(s.k) != Q(static_cast<long>(s.v))) confirmed = false;
            if (confirmed) return q;
        }
    }
    return std::nullopt;
}

QuasiPolynomial1D qp_fit_1d(const std::vector<Sample1D>& samples, Int max_period, int max_degree) {
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].k != samples[i - 1].k + 1) throw Error(ErrorKind::InvalidInput, "samples must be at consecutive integers");
    std::size_t need = static_cast<std::size_t>((max_degree + 2) * max_period * 2);
    if (samples.size() < need)
        throw Error(ErrorKind::InsufficientSamples,
                    "need at least " + std::to_string(need) + " samples, got " + std::to_string(samples.size()));
    std::size_t half = samples.size() / 2;
    std::vector<Sample1D> fit(samples.begin(), samples.begin() + static_cast<long>(half));
    std::vector<Sample1D> check(samples.begin() + static_cast<long>(half), samples.end());
    auto q = fit_quasipolynomial(fit, check, max_period, max_degree);
    if (!q) throw Error(ErrorKind::NoFit, "no quasi-polynomial with period <= " + std::to_string(max_period) +
                                              " and degree <= " + std::to_string(max_degree));
    return *q;
}

}  // namespace qrk
