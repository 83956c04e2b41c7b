#pragma once

// Independent reference computations shared by the test suites.

#include "qrk/reduction.hpp"

#include <functional>
#include <random>

namespace oracle {

using qrk::Int;
using qrk::Q;
using qrk::RatVec;
using qrk::Weight;

// Signed count of ways to write lambda from the polarized list by plain enumeration:
// (-1)^|Phi_-| #{n >= 0 : sum_{Phi_+} n phi - sum_{Phi_-} (n + 1) phi = lambda}.
inline Int brute_kpf(const std::vector<Weight>& phi, const RatVec& y, const Weight& lambda) {
    const std::size_t n = lambda.size();
    std::vector<Weight> psi;
    Weight target = lambda;
    int sign = 1;
    for (const auto& p : phi) {
        Q g = 0;
        for (std::size_t i = 0; i < n; ++i) g += p[i] * y[i];
        if (g > 0) {
            psi.push_back(p);
        } else {
            sign = -sign;
            Weight m(n);
            for (std::size_t i = 0; i < n; ++i) {
                m[i] = -p[i];
                target[i] += p[i];
            }
            psi.push_back(m);
        }
    }
    auto grade = [&](const Weight& w) {
        Q g = 0;
        for (std::size_t i = 0; i < n; ++i) g += w[i] * y[i];
        return g;
    };
    Int count = 0;
    Weight cur(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == psi.size()) {
            if (cur == target) ++count;
            return;
        }
        Q room = grade(target) - grade(cur);
        Q step = grade(psi[i]);
        Weight saved = cur;
        for (Int c = 0; Q(c) * step <= room; ++c) {
            rec(i + 1);
            for (std::size_t j = 0; j < n; ++j) cur[j] += psi[i][j];
        }
        cur = saved;
    };
    rec(0);
    return sign * count;
}

inline bool nonzero(const Weight& w) {
    for (Int x : w)
        if (x != 0) return true;
    return false;
}

struct RandomList {
    std::vector<Weight> ws;
    qrk::WeightList list;
    RatVec y;
};

// Random list of nonzero weights with coordinates in [-c, c] and a polarizing Y.
inline RandomList random_list(std::mt19937_64& rng, std::size_t rank, std::size_t size, Int c) {
    for (;;) {
        RandomList r;
        r.list = qrk::WeightList(rank);
        for (std::size_t i = 0; i < size; ++i) {
            Weight w(rank);
            do {
                for (auto& x : w) x = static_cast<Int>(rng() % static_cast<unsigned long long>(2 * c + 1)) - c;
            } while (!nonzero(w));
            r.ws.push_back(w);
            r.list.add(w);
        }
        r.y.assign(rank, Q(0));
        for (auto& x : r.y) x = Q(static_cast<long>(rng() % 201) - 100, 97);
        if (qrk::is_polarizing(r.list, r.y)) return r;
    }
}

inline Int product_count_p123(const Weight& lambda, const Weight& mu) {
    // -(number of a, b, c >= 0 with a + c = x, b + c = y)
    Int x = lambda[0] - mu[0] - 2, y = lambda[1] - mu[1] - 2;
    if (x < 0 || y < 0) return 0;
    return -(std::min(x, y) + 1);
}

// Coefficient of e_lambda in s e_{base} sum_{k in Z} e_{k alpha} sum_{b>=0} e_{b beta} sum_{c>=0} e_{c(alpha+beta)}.
inline Int product_count_edge(const Weight& lambda, const Weight& base, int s) {
    Int y = lambda[1] - base[1];
    if (y < 0) return 0;
    return s * (y + 1);
}

}  // namespace oracle
