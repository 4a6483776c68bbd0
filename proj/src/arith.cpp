#include "twistlab/arith.hpp"

#include <algorithm>
#include <map>

namespace twistlab {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::BothZero: return "BothZero";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::SingularModel: return "SingularModel";
        case ErrorCode::NotSquarefree: return "NotSquarefree";
        case ErrorCode::BadReductionPrime: return "BadReductionPrime";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::UnsupportedPlace: return "UnsupportedPlace";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::WrongTorsion: return "WrongTorsion";
        case ErrorCode::HypothesesFail: return "HypothesesFail";
        case ErrorCode::FamilyCheckFailed: return "FamilyCheckFailed";
        case ErrorCode::NotOddPrime: return "NotOddPrime";
        case ErrorCode::InvalidAction: return "InvalidAction";
        case ErrorCode::UnresolvedPlace: return "UnresolvedPlace";
        case ErrorCode::InconsistentDescriptor: return "InconsistentDescriptor";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

namespace {

constexpr std::uint32_t kTrialLimit = 1000000;

const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
    return primes;
}

// Pollard-Brent; n odd composite, not a perfect power of a small prime.
Integer rho_split(const Integer& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) return isqrt(n);
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, ys, q = 1, g = 1;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto step = [&](Integer& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                const unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    step(y);
                    Integer diff = x - y;
                    q = q * abs(diff);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                step(ys);
                Integer diff = abs(Integer(x - ys));
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_large(const Integer& n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = rho_split(n);
    factor_large(d, out);
    factor_large(Integer(n / d), out);
}

}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

Integer Factorization::value() const {
    Integer v = sign;
    for (const auto& pp : factors) {
        Integer t;
        mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        v *= t;
    }
    return v;
}

std::vector<Integer> Factorization::primes() const {
    std::vector<Integer> out;
    out.reserve(factors.size());
    for (const auto& pp : factors) out.push_back(pp.prime);
    return out;
}

const Integer& factor_cofactor_bound() {
    static const Integer bound = Integer(1) << 96;
    return bound;
}

Factorization factor(const Integer& n) {
    if (n == 0) throw Error(ErrorCode::ZeroInput, "factor(0)");
    Factorization f;
    f.sign = sgn(n) < 0 ? -1 : 1;
    Integer m = abs(n);
    for (std::uint32_t p : trial_primes()) {
        if (m == 1) break;
        if (Integer(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            f.factors.push_back({Integer(p), e});
        }
    }
    if (m == 1) return f;
    if (m <= Integer(kTrialLimit) * kTrialLimit || is_probable_prime(m)) {
        f.factors.push_back({m, 1});
        return f;
    }
    if (m > factor_cofactor_bound()) {
        throw Error(ErrorCode::OutOfRange, "cofactor " + to_string(m) + " exceeds 2^96");
    }
    std::map<Integer, unsigned> big;
    factor_large(m, big);
    for (const auto& [p, e] : big) f.factors.push_back({p, e});
    std::sort(f.factors.begin(), f.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return f;
}

bool is_probable_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

int kronecker(const Integer& a, const Integer& n) {
    if (a == 0 && n == 0) throw Error(ErrorCode::BothZero, "kronecker(0, 0)");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

unsigned valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw Error(ErrorCode::ZeroInput, "valuation of 0");
    Integer m = n;
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

long valuation(const Rational& x, const Integer& p) {
    return static_cast<long>(valuation(x.get_num(), p)) - static_cast<long>(valuation(x.get_den(), p));
}

bool is_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

bool is_squarefree(const Integer& n) {
    if (n == 0) return false;
    for (const auto& pp : factor(n).factors)
        if (pp.exponent > 1) return false;
    return true;
}

SquareClass SquareClass::from_squarefree(const Integer& rep) {
    if (rep == 0) throw Error(ErrorCode::ZeroInput, "square class of 0");
    return SquareClass(rep);
}

SquareClass SquareClass::operator*(const SquareClass& other) const {
    Integer g = gcd(rep_, other.rep_);
    return SquareClass(Integer(rep_ * other.rep_ / (g * g)));
}

SquareClass squarefree_part(const Integer& n) {
    if (n == 0) throw Error(ErrorCode::ZeroInput, "squarefree_part(0)");
    Factorization f = factor(n);
    Integer r = f.sign;
    for (const auto& pp : f.factors)
        if (pp.exponent % 2 == 1) r *= pp.prime;
    return SquareClass::from_squarefree(r);
}

Place Place::finite(const Integer& p) {
    if (p < 2) throw Error(ErrorCode::InvalidInput, "place must be a prime, got " + twistlab::to_string(p));
    Place v;
    v.real_ = false;
    v.prime_ = p;
    return v;
}

std::string Place::to_string() const {
    return real_ ? std::string("inf") : twistlab::to_string(prime_);
}

bool Place::operator<(const Place& other) const {
    if (real_ != other.real_) return real_;
    if (real_) return false;
    return prime_ < other.prime_;
}

namespace {

// Splits a nonzero rational into p^alpha * u with u a p-adic unit integer
// representative (numerator * denominator, which has the same square class
// up to a square of the denominator).
void split_at(const Rational& x, const Integer& p, long& alpha, Integer& unit) {
    Integer num = x.get_num(), den = x.get_den();
    alpha = 0;
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
        ++alpha;
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        --alpha;
    }
    unit = num * den;
}

int eps2(const Integer& u) {  // (u-1)/2 mod 2, u odd
    Integer r = u % 4;
    if (r < 0) r += 4;
    return r == 3 ? 1 : 0;
}

int omega2(const Integer& u) {  // (u^2-1)/8 mod 2, u odd
    Integer r = u % 8;
    if (r < 0) r += 8;
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw Error(ErrorCode::ZeroInput, "hilbert symbol of 0");
    if (v.is_real()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    const Integer& p = v.prime();
    long alpha, beta;
    Integer u, w;
    split_at(a, p, alpha, u);
    split_at(b, p, beta, w);
    if (p == 2) {
        int e = eps2(u) * eps2(w) + static_cast<int>((alpha & 1) * omega2(w)) +
                static_cast<int>((beta & 1) * omega2(u));
        return (e % 2 == 0) ? 1 : -1;
    }
    int sign = 1;
    if ((alpha & 1) && (beta & 1)) {
        Integer half = (p - 1) / 2;
        if (mpz_odd_p(half.get_mpz_t())) sign = -sign;
    }
    if (beta & 1) sign *= kronecker(u, p);
    if (alpha & 1) sign *= kronecker(w, p);
    return sign;
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw Error(ErrorCode::InvalidInput, "isqrt of negative");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::string to_string(const Integer& n) { return n.get_str(); }

}  // namespace twistlab
