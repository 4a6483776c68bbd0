#pragma once

// Exact integer, modular and symbol arithmetic.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "twistlab/error.hpp"

namespace twistlab {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Sign and prime-power factors, primes strictly increasing.
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;

    Integer value() const;
    std::vector<Integer> primes() const;
};

/// Largest cofactor (after trial division to 10^6) that factor() will attack with rho.
const Integer& factor_cofactor_bound();

/// Complete factorization. Trial division to 10^6, then Pollard-Brent rho on
/// the remaining cofactor, which must not exceed 2^96 (OutOfRange otherwise).
Factorization factor(const Integer& n);

bool is_probable_prime(const Integer& n);

/// Primes up to `limit` in increasing order.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Kronecker symbol (a|n). Throws BothZero when a = n = 0.
int kronecker(const Integer& a, const Integer& n);

/// ord_p(n) for n != 0.
unsigned valuation(const Integer& n, const Integer& p);

/// ord_p(x) for nonzero rational x.
long valuation(const Rational& x, const Integer& p);

bool is_square(const Integer& n);
bool is_squarefree(const Integer& n);

/// Element of Q^x / (Q^x)^2, stored as its squarefree representative.
class SquareClass {
public:
    SquareClass() : rep_(1) {}

    /// Representative must already be squarefree and nonzero.
    static SquareClass from_squarefree(const Integer& rep);

    const Integer& representative() const { return rep_; }
    bool is_trivial() const { return rep_ == 1; }

    SquareClass operator*(const SquareClass& other) const;
    bool operator==(const SquareClass& other) const { return rep_ == other.rep_; }

private:
    explicit SquareClass(Integer rep) : rep_(std::move(rep)) {}
    Integer rep_;
};

/// Representative of n modulo squares. Throws ZeroInput for n = 0.
SquareClass squarefree_part(const Integer& n);

/// A place of Q: the real place or a finite prime.
class Place {
public:
    static Place real() { return Place(); }
    static Place finite(const Integer& p);
    static Place finite(long p) { return finite(Integer(p)); }

    bool is_real() const { return real_; }
    bool is_finite() const { return !real_; }
    /// Only meaningful for finite places.
    const Integer& prime() const { return prime_; }

    std::string to_string() const;

    bool operator==(const Place& other) const {
        return real_ == other.real_ && (real_ || prime_ == other.prime_);
    }
    /// Real place first, then primes in increasing order.
    bool operator<(const Place& other) const;

private:
    Place() : real_(true), prime_(0) {}
    bool real_;
    Integer prime_;
};

/// Hilbert symbol (a,b)_v for nonzero rationals a, b.
int hilbert(const Rational& a, const Rational& b, const Place& v);

/// Integer square root floor, n >= 0.
Integer isqrt(const Integer& n);

std::string to_string(const Integer& n);

}  // namespace twistlab
