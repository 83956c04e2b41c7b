#include "qrk/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>

namespace qrk {

RatVec to_q(const Weight& w) {
    RatVec r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = Q(static_cast<long>(w[i]));
    return r;
}

static void same_len(std::size_t a, std::size_t b) {
    if (a != b) throw Error(ErrorKind::InvalidInput, "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

Q dot(const Weight& a, const RatVec& y) {
    same_len(a.size(), y.size());
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += static_cast<long>(a[i]) * y[i];
    return s;
}

Q dot(const RatVec& a, const RatVec& b) {
    same_len(a.size(), b.size());
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int dot(const Weight& a, const Weight& b) {
    same_len(a.size(), b.size());
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
    return s;
}

Weight add(const Weight& a, const Weight& b) {
    same_len(a.size(), b.size());
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::add(a[i], b[i]);
    return r;
}

Weight sub(const Weight& a, const Weight& b) {
    same_len(a.size(), b.size());
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::sub(a[i], b[i]);
    return r;
}

Weight neg(const Weight& a) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::sub(0, a[i]);
    return r;
}

Weight scale(const Weight& a, Int c) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::mul(a[i], c);
    return r;
}

RatVec add(const RatVec& a, const RatVec& b) {
    same_len(a.size(), b.size());
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
    same_len(a.size(), b.size());
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec scale(const RatVec& a, const Q& c) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

bool is_zero(const Weight& w) {
    return std::all_of(w.begin(), w.end(), [](Int x) { return x == 0; });
}

bool is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; });
}

std::string to_string(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

std::string to_string(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

namespace linalg {

std::vector<std::size_t> rref(std::vector<RatVec>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Q inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Q f = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::size_t rank_of(std::vector<RatVec> rows) { return rref(rows).size(); }

std::vector<RatVec> nullspace(std::vector<RatVec> rows, std::size_t ncols) {
    auto piv = rref(rows);
    std::vector<bool> is_piv(ncols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<RatVec> out;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        RatVec x(ncols, Q(0));
        x[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -rows[i][f];
        out.push_back(x);
    }
    return out;
}

std::optional<RatVec> coordinates(const std::vector<RatVec>& basis, const RatVec& v) {
    std::size_t k = basis.size();
    std::size_t n = v.size();
    // Columns are basis vectors; augmented with v.
    std::vector<RatVec> rows(n, RatVec(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) rows[i][j] = basis[j][i];
        rows[i][k] = v[i];
    }
    auto piv = rref(rows);
    RatVec c(k, Q(0));
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == k) return std::nullopt;
        c[piv[i]] = rows[i][k];
    }
    return c;
}

RatVec solve_square(std::vector<RatVec> a, RatVec b) {
    std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    auto piv = rref(a);
    if (piv.size() != n || (n > 0 && piv.back() >= n)) throw Error(ErrorKind::InvalidInput, "singular system");
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

std::vector<Z> primitive(const RatVec& v) {
    Z den = 1;
    for (const auto& x : v) den = lcm_z(den, x.get_den());
    std::vector<Z> r(v.size());
    Z g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        r[i] = v[i].get_num() * (den / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[i].get_mpz_t());
    }
    if (g == 0) return r;
    int s = 0;
    for (auto& x : r)
        if (x != 0) { s = sgn(x); break; }
    for (auto& x : r) x = x / g * s;
    return r;
}

}  // namespace linalg

Gram::Gram(std::vector<RatVec> entries) : g_(std::move(entries)) {
    for (const auto& row : g_)
        if (row.size() != g_.size()) throw Error(ErrorKind::InvalidInput, "Gram matrix must be square");
}

Gram Gram::identity(std::size_t n) {
    std::vector<RatVec> g(n, RatVec(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
    return Gram(g);
}

Q Gram::inner(const RatVec& a, const RatVec& b) const { return dot(a, to_dual(b)); }

RatVec Gram::to_dual(const RatVec& a) const {
    same_len(a.size(), g_.size());
    RatVec r(a.size(), Q(0));
    for (std::size_t i = 0; i < g_.size(); ++i)
        for (std::size_t j = 0; j < g_.size(); ++j) r[i] += g_[i][j] * a[j];
    return r;
}

bool Gram::symmetric() const {
    for (std::size_t i = 0; i < g_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (g_[i][j] != g_[j][i]) return false;
    return true;
}

bool Gram::positive_definite() const {
    if (!symmetric()) return false;
    // Leading principal minors via Gaussian elimination without pivoting.
    auto a = g_;
    std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            Q f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return true;
}

WeightList::WeightList(std::size_t rank, const std::vector<Weight>& ws) : rank_(rank) {
    for (const auto& w : ws) add(w);
}

void WeightList::add(const Weight& w, Int mult) {
    if (w.size() != rank_) throw Error(ErrorKind::InvalidInput, "weight " + to_string(w) + " has wrong length");
    if (is_zero(w)) throw Error(ErrorKind::InvalidInput, "zero weight in list");
    if (mult < 1) throw Error(ErrorKind::InvalidInput, "multiplicity must be positive");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), w,
                               [](const WeightEntry& e, const Weight& x) { return e.w < x; });
    if (it != entries_.end() && it->w == w)
        it->mult = checked::add(it->mult, mult);
    else
        entries_.insert(it, WeightEntry{w, mult});
}

std::vector<Weight> WeightList::expanded() const {
    std::vector<Weight> out;
    for (const auto& e : entries_)
        for (Int i = 0; i < e.mult; ++i) out.push_back(e.w);
    return out;
}

std::size_t WeightList::size() const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += static_cast<std::size_t>(e.mult);
    return n;
}

std::string to_string(const WeightList& l) {
    std::string s = "[";
    bool first = true;
    for (const auto& e : l.entries()) {
        if (!first) s += ";";
        first = false;
        s += to_string(e.w);
        if (e.mult != 1) s += "*" + std::to_string(e.mult);
    }
    return s + "]";
}

Subspace Subspace::span_of(std::size_t rank, const std::vector<Weight>& vs) {
    Subspace s;
    s.rank_ = rank;
    std::vector<RatVec> rows;
    for (const auto& v : vs) {
        if (v.size() != rank) throw Error(ErrorKind::InvalidInput, "vector length mismatch in span");
        rows.push_back(to_q(v));
        if (linalg::rank_of(rows) == rows.size())
            s.basis_.push_back(v);
        else
            rows.pop_back();
    }
    auto red = rows;
    linalg::rref(red);
    for (const auto& r : red) s.canon_.push_back(linalg::primitive(r));
    for (const auto& nrow : linalg::nullspace(rows, rank)) {
        auto p = linalg::primitive(nrow);
        Weight w(rank);
        for (std::size_t i = 0; i < rank; ++i) w[i] = to_int(p[i]);
        s.normals_.push_back(w);
    }
    return s;
}

bool Subspace::contains(const Weight& w) const {
    for (const auto& n : normals_)
        if (dot(n, w) != 0) return false;
    return true;
}

bool Subspace::contains(const RatVec& v) const {
    for (const auto& n : normals_)
        if (dot(n, v) != 0) return false;
    return true;
}

std::string Subspace::key() const {
    std::string s;
    for (const auto& row : canon_) {
        s += "[";
        for (const auto& x : row) s += x.get_str() + ",";
        s += "]";
    }
    return s;
}

bool Subspace::operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    return canon_ < o.canon_;
}

std::string to_string(const Subspace& s) {
    if (s.dim() == 0) return "{0}";
    std::string out = "span{";
    for (std::size_t i = 0; i < s.basis().size(); ++i) out += (i ? "," : "") + to_string(s.basis()[i]);
    return out + "}";
}

WeightList intersect(const WeightList& l, const Subspace& s) {
    WeightList r(l.rank());
    for (const auto& e : l.entries())
        if (s.contains(e.w)) r.add(e.w, e.mult);
    return r;
}

WeightList complement(const WeightList& l, const Subspace& s) {
    WeightList r(l.rank());
    for (const auto& e : l.entries())
        if (!s.contains(e.w)) r.add(e.w, e.mult);
    return r;
}

Subspace span_of(const WeightList& l) {
    std::vector<Weight> ws;
    for (const auto& e : l.entries()) ws.push_back(e.w);
    return Subspace::span_of(l.rank(), ws);
}

Polarized polarize(const WeightList& phi, const RatVec& y) {
    Polarized out{WeightList(phi.rank()), WeightList(phi.rank())};
    for (const auto& e : phi.entries()) {
        int s = sgn(dot(e.w, y));
        if (s == 0) throw Error(ErrorKind::NotPolarizing, "<" + to_string(e.w) + ", Y> = 0");
        (s > 0 ? out.plus : out.minus).add(e.w, e.mult);
    }
    return out;
}

bool is_polarizing(const WeightList& phi, const RatVec& y) {
    for (const auto& e : phi.entries())
        if (dot(e.w, y) == 0) return false;
    return true;
}

std::vector<Subspace> rational_subspaces(const WeightList& phi) {
    std::set<Subspace> seen;
    std::vector<Subspace> queue{Subspace::zero(phi.rank())};
    seen.insert(queue[0]);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Subspace cur = queue[qi];
        for (const auto& e : phi.entries()) {
            if (cur.contains(e.w)) continue;
            auto b = cur.basis();
            b.push_back(e.w);
            Subspace next = Subspace::span_of(phi.rank(), b);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return {seen.begin(), seen.end()};
}

Arrangement arrangement_of(const WeightList& phi) {
    Arrangement a;
    a.span = span_of(phi);
    std::size_t r = a.span.dim();
    if (r == 0) return a;
    for (const auto& s : rational_subspaces(phi)) {
        if (s.dim() + 1 != r) continue;
        std::vector<RatVec> rows;
        for (const auto& b : s.basis()) rows.push_back(to_q(b));
        Weight normal;
        for (const auto& cand : linalg::nullspace(rows, phi.rank())) {
            bool hits = false;
            for (const auto& b : a.span.basis())
                if (dot(b, cand) != 0) hits = true;
            if (!hits) continue;
            auto p = linalg::primitive(cand);
            normal.resize(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) normal[i] = to_int(p[i]);
            break;
        }
        a.hyperplanes.push_back(s);
        a.normals.push_back(normal);
    }
    return a;
}

bool is_regular(const RatVec& gamma, const Arrangement& a) {
    if (a.span.dim() == 0) return is_zero(gamma);
    if (!a.span.contains(gamma)) return false;
    for (const auto& n : a.normals)
        if (dot(n, gamma) == 0) return false;
    return true;
}

bool is_regular(const RatVec& gamma, const WeightList& phi) { return is_regular(gamma, arrangement_of(phi)); }

TopeId tope_of(const RatVec& gamma, const Arrangement& a) {
    if (!is_regular(gamma, a)) throw Error(ErrorKind::NotRegular, to_string(gamma) + " is not regular");
    TopeId t;
    t.witness = gamma;
    for (const auto& n : a.normals) t.signs.push_back(static_cast<signed char>(sgn(dot(n, gamma))));
    return t;
}

TopeId tope_of(const RatVec& gamma, const WeightList& phi) { return tope_of(gamma, arrangement_of(phi)); }

bool in_tope(const RatVec& x, const Arrangement& a, const TopeId& t) {
    if (!is_regular(x, a)) return false;
    for (std::size_t i = 0; i < a.normals.size(); ++i)
        if (sgn(dot(a.normals[i], x)) != t.signs[i]) return false;
    return true;
}

Projection orthogonal_project(const RatVec& gamma, const Subspace& s, const Gram& g) {
    same_len(gamma.size(), g.rank());
    Projection p;
    std::size_t k = s.dim();
    if (k == 0) {
        p.gamma_s = RatVec(gamma.size(), Q(0));
        p.y = scale(gamma, Q(-1));
        return p;
    }
    std::vector<RatVec> b;
    for (const auto& w : s.basis()) b.push_back(to_q(w));
    std::vector<RatVec> m(k, RatVec(k));
    RatVec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = g.inner(b[i], b[j]);
        rhs[i] = g.inner(b[i], gamma);
    }
    RatVec c = linalg::solve_square(m, rhs);
    p.gamma_s = RatVec(gamma.size(), Q(0));
    for (std::size_t i = 0; i < k; ++i) p.gamma_s = add(p.gamma_s, scale(b[i], c[i]));
    p.y = sub(p.gamma_s, gamma);
    return p;
}

namespace {

using ZMat = std::vector<std::vector<Z>>;

// Row Hermite normal form with positive pivots and reduced entries above them.
ZMat hermite_rows(ZMat rows) {
    if (rows.empty()) return rows;
    std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows.size() && rows[r][c] != 0) {
            if (rows[r][c] < 0)
                for (auto& x : rows[r]) x = -x;
            for (std::size_t i = 0; i < r; ++i) {
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
            }
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

}  // namespace

std::vector<Weight> sublattice_basis(const Subspace& s, std::size_t rank) {
    if (s.rank() != rank) throw Error(ErrorKind::InvalidInput, "subspace rank mismatch");
    if (s.dim() == 0) return {};
    // Integer kernel of the normal matrix by unimodular column reduction.
    const auto& normals = s.normals();
    std::size_t m = normals.size();
    ZMat a(m, std::vector<Z>(rank));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < rank; ++j) a[i][j] = Z(static_cast<long>(normals[i][j]));
    ZMat u(rank, std::vector<Z>(rank, Z(0)));
    for (std::size_t i = 0; i < rank; ++i) u[i][i] = 1;
    std::size_t col = 0;
    for (std::size_t i = 0; i < m && col < rank; ++i) {
        for (std::size_t j = col + 1; j < rank; ++j) {
            if (a[i][j] == 0) continue;
            Z g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[i][col].get_mpz_t(), a[i][j].get_mpz_t());
            Z p = a[i][col] / g, q = a[i][j] / g;
            for (std::size_t r = 0; r < m; ++r) {
                Z c1 = a[r][col], c2 = a[r][j];
                a[r][col] = x * c1 + y * c2;
                a[r][j] = -q * c1 + p * c2;
            }
            for (std::size_t r = 0; r < rank; ++r) {
                Z c1 = u[r][col], c2 = u[r][j];
                u[r][col] = x * c1 + y * c2;
                u[r][j] = -q * c1 + p * c2;
            }
        }
        if (a[i][col] != 0) ++col;
    }
    ZMat kernel;
    for (std::size_t j = col; j < rank; ++j) {
        std::vector<Z> v(rank);
        for (std::size_t r = 0; r < rank; ++r) v[r] = u[r][j];
        kernel.push_back(v);
    }
    kernel = hermite_rows(kernel);
    std::vector<Weight> out;
    for (const auto& row : kernel) {
        Weight w(rank);
        for (std::size_t i = 0; i < rank; ++i) w[i] = to_int(row[i]);
        out.push_back(w);
    }
    if (out.size() != s.dim()) throw Error(ErrorKind::ValidationFailed, "saturation has wrong dimension");
    return out;
}

namespace {

struct PreparedList {
    Weight mu;
    WeightList phi;
    struct Piece {
        Subspace s;
        Arrangement inside;
        WeightList outside;
    };
    std::vector<Piece> pieces;
};

std::vector<PreparedList> prepare(const std::vector<ShiftedList>& data) {
    std::vector<PreparedList> out;
    for (const auto& d : data) {
        PreparedList p{d.mu, d.phi, {}};
        for (const auto& s : rational_subspaces(d.phi))
            p.pieces.push_back({s, arrangement_of(intersect(d.phi, s)), complement(d.phi, s)});
        out.push_back(std::move(p));
    }
    return out;
}

std::string violation(const RatVec& gamma, const std::vector<PreparedList>& prep, const Gram& g) {
    for (std::size_t i = 0; i < prep.size(); ++i) {
        RatVec d = sub(gamma, to_q(prep[i].mu));
        for (const auto& pc : prep[i].pieces) {
            auto pr = orthogonal_project(d, pc.s, g);
            if (!is_regular(pr.gamma_s, pc.inside))
                return "list " + std::to_string(i) + ", S=" + to_string(pc.s) + ": projection is not regular";
            RatVec yt = g.to_dual(pr.y);
            if (!is_polarizing(pc.outside, yt))
                return "list " + std::to_string(i) + ", S=" + to_string(pc.s) + ": orthogonal part is not polarizing";
        }
    }
    return {};
}

const long kPrimes[] = {101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
                        181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269,
                        271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367};

}  // namespace

std::string genericity_violation(const RatVec& gamma, const std::vector<ShiftedList>& data, const Gram& g) {
    return violation(gamma, prepare(data), g);
}

RatVec generic_gamma(const std::vector<ShiftedList>& data, const Gram& g, const RatVec& near,
                     unsigned long long seed, const GenericOptions& opt) {
    auto prep = prepare(data);
    if (violation(near, prep, g).empty()) return near;
    std::vector<Weight> all;
    for (const auto& d : data)
        for (const auto& e : d.phi.entries()) all.push_back(e.w);
    std::size_t rank = near.size();
    auto dirs = sublattice_basis(Subspace::span_of(rank, all), rank);
    if (dirs.empty()) throw Error(ErrorKind::ExhaustedRetries, "no direction to perturb in");
    Int maxnorm = 1;
    for (const auto& d : dirs)
        for (Int x : d) maxnorm = std::max(maxnorm, x < 0 ? -x : x);
    std::mt19937_64 rng(seed);
    const std::size_t nprimes = sizeof(kPrimes) / sizeof(kPrimes[0]);
    std::string last;
    for (int attempt = 0; attempt < opt.retries; ++attempt) {
        RatVec gamma = near;
        for (const auto& d : dirs) {
            long p = kPrimes[rng() % nprimes];
            Q bound = opt.radius * p / static_cast<long>(dirs.size() * static_cast<std::size_t>(maxnorm));
            Z b = bound.get_num() / bound.get_den();
            if (b < 1) b = 1;
            long span = b.get_si();
            long r = static_cast<long>(rng() % static_cast<unsigned long long>(2 * span)) - span;
            if (r >= 0) ++r;  // skip zero
            Q c(r, p);
            c.canonicalize();
            gamma = add(gamma, scale(to_q(d), c));
        }
        bool inside = true;
        for (std::size_t i = 0; i < rank; ++i)
            if (abs(gamma[i] - near[i]) > opt.radius) inside = false;
        if (!inside) continue;
        last = violation(gamma, prep, g);
        if (last.empty()) return gamma;
    }
    throw Error(ErrorKind::ExhaustedRetries, "no generic gamma near " + to_string(near) + " (" + last + ")");
}

}  // namespace qrk
