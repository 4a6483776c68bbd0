#pragma once

// Small dense polynomials over Z/pZ, coefficients lowest degree first.

#include <vector>

#include "twistlab/arith.hpp"

namespace twistlab::detail {

using Poly = std::vector<Integer>;

inline Integer mod_p(const Integer& a, const Integer& p) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly reduce(const Poly& f, const Integer& p) {
    Poly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = mod_p(f[i], p);
    trim(r);
    return r;
}

inline Integer inverse(const Integer& a, const Integer& p) {
    Integer r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

inline Poly make_monic(const Poly& f, const Integer& p) {
    if (f.empty()) return f;
    Integer inv = inverse(f.back(), p);
    Poly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = mod_p(f[i] * inv, p);
    return r;
}

/// Remainder of f by nonzero g.
inline Poly rem(Poly f, const Poly& g, const Integer& p) {
    trim(f);
    const int dg = degree(g);
    const Integer lead_inv = inverse(g.back(), p);
    while (degree(f) >= dg) {
        Integer c = mod_p(f.back() * lead_inv, p);
        const int shift = degree(f) - dg;
        for (int i = 0; i <= dg; ++i) f[shift + i] = mod_p(f[shift + i] - c * g[i], p);
        trim(f);
    }
    return f;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, const Integer& p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return rem(reduce(r, p), m, p);
}

/// X^e mod m over F_p.
inline Poly x_pow_mod(const Integer& e, const Poly& m, const Integer& p) {
    Poly result = rem(Poly{Integer(1)}, m, p);
    Poly base = rem(Poly{Integer(0), Integer(1)}, m, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m, p);
    }
    return result;
}

inline Poly sub(const Poly& a, const Poly& b, const Integer& p) {
    Poly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return reduce(r, p);
}

/// Monic gcd.
inline Poly gcd(Poly a, Poly b, const Integer& p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

inline Poly derivative(const Poly& f, const Integer& p) {
    if (f.size() <= 1) return {};
    Poly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * static_cast<unsigned long>(i);
    return reduce(d, p);
}

inline Integer eval(const Poly& f, const Integer& x) {
    Integer r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

/// Number of distinct roots of f in F_p (f nonzero mod p).
inline int count_distinct_roots(const Poly& f, const Integer& p) {
    Poly fr = reduce(f, p);
    if (degree(fr) <= 0) return 0;
    Poly xp = x_pow_mod(p, fr, p);
    Poly g = gcd(fr, sub(xp, Poly{Integer(0), Integer(1)}, p), p);
    return degree(g);
}

}  // namespace twistlab::detail
