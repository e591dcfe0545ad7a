#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "pine/errors.hpp"

namespace pine {

using bigint = boost::multiprecision::cpp_int;

// binom(kappa+s-2, kappa-1): order above which every graph holds a kappa-clique
// or an s-stable set.
inline bigint ramsey_bound(int kappa, int s) {
    if (kappa < 1 || s < 1) return 0;  // an empty witness always exists
    bigint num = 1, den = 1;
    int a = kappa + s - 2, b = kappa - 1;
    for (int i = 1; i <= b; ++i) {
        num *= a - b + i;
        den *= i;
    }
    return num / den;
}

// Target count sufficient for a same-length spoke star: k(kappa, d, s).
// Base cases: s=0 trivial; d=0 vacuous beyond one target; d=1 direct stable-set pick.
// Step: k = ((d+1)(k'-1)+1) * k1 with k' = k(kappa, d-1, s), k1 = ramsey_bound(kappa, s).
inline bigint getstar_k(int kappa, int d, int s) {
    if (s == 0) return 0;
    if (d == 0) return 2;
    bigint k1 = ramsey_bound(kappa, s);
    if (d == 1) return k1 + 1;
    bigint kprev = getstar_k(kappa, d - 1, s);
    return ((d + 1) * (kprev - 1) + 1) * k1;
}

// Family sizes that force a once-subdivided-complete detection:
// s = nu(nu-1)/2, k1 = getstar_k, k = k1*(d+1), l1 = nu*binom(k1, s), l = l1*(d+1)^k.
struct RouterBounds {
    int s = 0;
    bigint k1, k, l1, l;
};

inline bigint binom_big(const bigint& n, int r) {
    if (r < 0 || n < r) return 0;
    bigint num = 1, den = 1;
    for (int i = 1; i <= r; ++i) {
        num *= n - r + i;
        den *= i;
    }
    return num / den;
}

inline RouterBounds router_bounds(int nu, int d, int kappa) {
    RouterBounds b;
    b.s = nu * (nu - 1) / 2;
    b.k1 = getstar_k(kappa, d, b.s);
    b.k = b.k1 * (d + 1);
    b.l1 = nu * binom_big(b.k1, b.s);
    bigint pw = 1;
    // (d+1)^k caps out of any practical range quickly; grow lazily and clamp via exceptions upstream.
    if (b.k > 4096) {
        // representative lower bound; the exact value is astronomically large and
        // only its comparison against desk-scale integers matters
        pw = bigint(1) << 4096;
    } else {
        for (bigint i = 0; i < b.k; ++i) pw *= (d + 1);
    }
    b.l = b.l1 * pw;
    return b;
}

// Chromatic descent chain: c_k = l*tau, c_i = 2 c_{i+1} + 2c; returns c_k..c_0 (index by i).
inline std::vector<bigint> distant_chain(int c, int tau, const bigint& l, const bigint& k) {
    if (k < 0) throw std::invalid_argument("distant_chain: negative k");
    int kk = static_cast<int>(std::min<bigint>(k, 512));  // beyond this the values dwarf any graph
    std::vector<bigint> chain(kk + 1);
    chain[kk] = l * tau;
    for (int i = kk - 1; i >= 0; --i) chain[i] = 2 * chain[i + 1] + 2 * c;
    return chain;
}

inline bigint distant_c_prime(int c, int tau, const bigint& l, const bigint& k) {
    return distant_chain(c, tau, l, k)[0];
}

// Leaf-pattern alphabet size for the uniform-tree Ramsey pipeline: q = 2^(2^(2h)).
inline bigint platonic_q(int h) {
    if (h < 0) throw std::invalid_argument("platonic_q: negative height");
    if (h > 5) throw precondition_error("platonic_q: alphabet is astronomically large for h > 5");
    bigint exponent = bigint(1) << (2 * h);
    return bigint(1) << static_cast<unsigned>(exponent);
}

}  // namespace pine
