#include "twistlab/curve.hpp"

#include <algorithm>
#include <set>

#include "curve_detail.hpp"
#include "polymod.hpp"

namespace twistlab {

using detail::Poly;

Curve make_curve(const std::array<Integer, 5>& a) {
    Curve E;
    E.a = a;
    const Integer &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    E.b2 = a1 * a1 + 4 * a2;
    E.b4 = 2 * a4 + a1 * a3;
    E.b6 = a3 * a3 + 4 * a6;
    E.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    E.c4 = E.b2 * E.b2 - 24 * E.b4;
    E.c6 = -E.b2 * E.b2 * E.b2 + 36 * E.b2 * E.b4 - 216 * E.b6;
    E.disc = -E.b2 * E.b2 * E.b8 - 8 * E.b4 * E.b4 * E.b4 - 27 * E.b6 * E.b6 + 9 * E.b2 * E.b4 * E.b6;
    if (E.disc == 0) throw Error(ErrorCode::SingularModel, "discriminant is zero");
    E.j = Rational(E.c4 * E.c4 * E.c4, E.disc);
    E.j.canonicalize();
    return E;
}

Curve make_curve(std::initializer_list<long> a) {
    if (a.size() != 5) throw Error(ErrorCode::InvalidInput, "need five coefficients");
    std::array<Integer, 5> v;
    std::size_t i = 0;
    for (long x : a) v[i++] = x;
    return make_curve(v);
}

namespace {

bool divides_exactly(const Integer& num, long den, Integer& out) {
    if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(den))) return false;
    out = num / den;
    return true;
}

Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace

std::optional<Curve> curve_from_c4c6(const Integer& c4, const Integer& c6) {
    Integer delta;
    if (!divides_exactly(Integer(c4 * c4 * c4 - c6 * c6), 1728, delta) || delta == 0) return std::nullopt;
    Integer b2 = detail::mod_p(Integer(-c6), Integer(12));
    if (b2 > 6) b2 -= 12;
    Integer b4, b6;
    if (!divides_exactly(Integer(b2 * b2 - c4), 24, b4)) return std::nullopt;
    if (!divides_exactly(Integer(-b2 * b2 * b2 + 36 * b2 * b4 - c6), 216, b6)) return std::nullopt;
    Integer a1 = detail::mod_p(b2, Integer(2));
    Integer a3 = detail::mod_p(b6, Integer(2));
    Integer a2, a4, a6;
    if (!divides_exactly(Integer(b2 - a1), 4, a2)) return std::nullopt;
    if (!divides_exactly(Integer(b4 - a1 * a3), 2, a4)) return std::nullopt;
    if (!divides_exactly(Integer(b6 - a3), 4, a6)) return std::nullopt;
    Curve E = make_curve({a1, a2, a3, a4, a6});
    if (E.c4 != c4 || E.c6 != c6) return std::nullopt;
    return E;
}

Curve minimal_model(const Curve& E) {
    const Integer& c4 = E.c4;
    const Integer& c6 = E.c6;
    Integer g = gcd(gcd(c4, c6), E.disc);
    Integer u_rest = 1;
    unsigned max2 = 0, max3 = 0;
    for (const auto& pp : factor(g).factors) {
        unsigned e = valuation(E.disc, pp.prime) / 12;
        if (c4 != 0) e = std::min(e, valuation(c4, pp.prime) / 4);
        if (c6 != 0) e = std::min(e, valuation(c6, pp.prime) / 6);
        if (e == 0) continue;
        if (pp.prime == 2) max2 = e;
        else if (pp.prime == 3) max3 = e;
        else u_rest *= pow_int(pp.prime, e);
    }
    std::optional<Curve> best;
    Integer best_u = 0;
    for (unsigned e2 = 0; e2 <= max2; ++e2) {
        for (unsigned e3 = 0; e3 <= max3; ++e3) {
            Integer u = u_rest * pow_int(2, e2) * pow_int(3, e3);
            if (u <= best_u) continue;
            auto cand = curve_from_c4c6(Integer(c4 / pow_int(u, 4)), Integer(c6 / pow_int(u, 6)));
            if (cand) {
                best = cand;
                best_u = u;
            }
        }
    }
    if (!best) throw Error(ErrorCode::InvalidInput, "no integral model for the given invariants");
    return *best;
}

std::string_view reduction_kind_name(ReductionKind k) {
    switch (k) {
        case ReductionKind::Good: return "Good";
        case ReductionKind::MultSplit: return "MultSplit";
        case ReductionKind::MultNonsplit: return "MultNonsplit";
        case ReductionKind::Additive: return "Additive";
        case ReductionKind::RealPlace: return "RealPlace";
    }
    return "?";
}

std::string_view galois_type_name(GaloisType g) {
    switch (g) {
        case GaloisType::S3: return "S3";
        case GaloisType::C3: return "C3";
        case GaloisType::C2: return "C2";
        case GaloisType::V: return "V";
    }
    return "?";
}

namespace detail {

ReductionPlace reduction_on_minimal(const Curve& M, const Integer& p) {
    ReductionPlace r;
    r.place = Place::finite(p);
    r.ordDeltaMin = valuation(M.disc, p);
    if (r.ordDeltaMin == 0) {
        r.type = ReductionKind::Good;
        return r;
    }
    if (!mpz_divisible_p(M.c4.get_mpz_t(), p.get_mpz_t())) {
        bool split;
        if (p == 2) split = mod_p(Integer(-M.c6), Integer(8)) == 1;
        else split = kronecker(Integer(-M.c6), p) == 1;
        r.type = split ? ReductionKind::MultSplit : ReductionKind::MultNonsplit;
    } else {
        r.type = ReductionKind::Additive;
    }
    return r;
}

Poly monic_two_division(const Curve& E) {
    return {16 * E.b6, 8 * E.b4, E.b2, Integer(1)};
}

int frobenius_order_on_minimal(const Curve& M, const Integer& p) {
    const int roots = count_distinct_roots(monic_two_division(M), p);
    return roots == 0 ? 3 : roots == 1 ? 2 : 1;
}

namespace {

int sign_at(const Poly& f, const Integer& x) { return sgn(eval(f, x)); }

void bisect_monotone(const Poly& f, Integer lo, Integer hi, std::set<Integer>& roots) {
    if (lo > hi) return;
    int slo = sign_at(f, lo), shi = sign_at(f, hi);
    if (slo == 0) roots.insert(lo);
    if (shi == 0) roots.insert(hi);
    if (slo == 0 || shi == 0 || slo == shi) return;
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        int s = sign_at(f, mid);
        if (s == 0) {
            roots.insert(mid);
            return;
        }
        if (s == slo) lo = mid;
        else hi = mid;
    }
}

}  // namespace

std::vector<Integer> integer_roots_monic_cubic(const Poly& f) {
    const Integer& c2 = f[2];
    const Integer& c1 = f[1];
    const Integer& c0 = f[0];
    Integer bound = 1 + std::max({abs(c2), abs(c1), abs(c0)});
    std::set<Integer> roots;
    Integer D = 4 * c2 * c2 - 12 * c1;
    if (D <= 0) {
        bisect_monotone(f, -bound, bound, roots);
    } else {
        Integer r = isqrt(D);
        Integer w1, w2;
        mpz_fdiv_q_ui(w1.get_mpz_t(), Integer(-2 * c2 - r).get_mpz_t(), 6);
        mpz_fdiv_q_ui(w2.get_mpz_t(), Integer(-2 * c2 + r).get_mpz_t(), 6);
        for (const Integer& w : {w1, w2})
            for (Integer x = w - 3; x <= w + 3; ++x)
                if (eval(f, x) == 0) roots.insert(x);
        bisect_monotone(f, -bound, Integer(w1 - 3), roots);
        bisect_monotone(f, Integer(w1 + 3), Integer(w2 - 3), roots);
        bisect_monotone(f, Integer(w2 + 3), bound, roots);
    }
    return {roots.begin(), roots.end()};
}

namespace {

// h(r + p X)
Poly shift_scale(const Poly& h, const Integer& r, const Integer& p) {
    Poly out(h.size(), Integer(0));
    Poly power{Integer(1)};  // (r + pX)^k
    for (std::size_t k = 0; k < h.size(); ++k) {
        for (std::size_t i = 0; i < power.size(); ++i) out[i] += h[k] * power[i];
        Poly next(power.size() + 1, Integer(0));
        for (std::size_t i = 0; i < power.size(); ++i) {
            next[i] += power[i] * r;
            next[i + 1] += power[i] * p;
        }
        power = std::move(next);
    }
    return out;
}

constexpr unsigned kMaxDepth = 1024;
constexpr unsigned long kBruteForceLimit = 64;

int count_zp_roots(Poly h, const Integer& p, unsigned depth) {
    if (depth > kMaxDepth) throw Error(ErrorCode::PrecisionExhausted, "p-adic root count did not stabilize");
    trim(h);
    unsigned v = ~0U;
    for (const auto& c : h)
        if (c != 0) v = std::min(v, valuation(c, p));
    if (v == ~0U) throw Error(ErrorCode::PrecisionExhausted, "zero polynomial in root count");
    if (v > 0) {
        Integer pv;
        mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), v);
        for (auto& c : h) c /= pv;
    }
    Poly hb = reduce(h, p);
    if (degree(hb) <= 0) return 0;
    Poly dh = derivative(hb, p);
    int count = 0;
    if (p < kBruteForceLimit) {
        for (unsigned long r = 0; r < p.get_ui(); ++r) {
            Integer x = r;
            if (mod_p(eval(hb, x), p) != 0) continue;
            if (mod_p(eval(dh, x), p) != 0) ++count;
            else count += count_zp_roots(shift_scale(h, x, p), p, depth + 1);
        }
        return count;
    }
    const int distinct = count_distinct_roots(hb, p);
    Poly m = dh.empty() ? hb : gcd(hb, dh, p);
    if (degree(m) <= 0) return distinct;
    Integer r;
    if (degree(m) == 1) r = mod_p(Integer(-m[0]), p);
    else r = mod_p(Integer(-m[1] * inverse(Integer(2), p)), p);
    return distinct - 1 + count_zp_roots(shift_scale(h, r, p), p, depth + 1);
}

}  // namespace

int padic_root_count(const Poly& f, const Integer& p) { return count_zp_roots(f, p, 0); }

}  // namespace detail

ReductionPlace reduction_type(const Curve& E, const Integer& p) {
    if (!is_probable_prime(p)) throw Error(ErrorCode::InvalidInput, to_string(p) + " is not prime");
    return detail::reduction_on_minimal(minimal_model(E), p);
}

ReductionPlace real_reduction(const Curve& E) {
    ReductionPlace r;
    r.place = Place::real();
    r.type = ReductionKind::RealPlace;
    r.realSignDelta = sgn(E.disc) > 0 ? 1 : -1;
    return r;
}

std::vector<ReductionPlace> bad_reduction(const Curve& E) {
    Curve M = minimal_model(E);
    std::vector<ReductionPlace> out;
    for (const auto& p : factor(M.disc).primes()) out.push_back(detail::reduction_on_minimal(M, p));
    return out;
}

TwoDivisionData two_division(const Curve& E) {
    TwoDivisionData t;
    t.cubic = {Integer(4), E.b2, 2 * E.b4, E.b6};
    for (const auto& X : detail::integer_roots_monic_cubic(detail::monic_two_division(E))) {
        Rational x(X, 4);
        x.canonicalize();
        t.rationalRoots.push_back(x);
    }
    switch (t.rationalRoots.size()) {
        case 0:
            t.torsionDimQ = 0;
            t.galoisType = is_square(E.disc) ? GaloisType::C3 : GaloisType::S3;
            break;
        case 1:
            t.torsionDimQ = 1;
            t.galoisType = GaloisType::C2;
            break;
        default:
            t.torsionDimQ = 2;
            t.galoisType = GaloisType::V;
            break;
    }
    return t;
}

int frobenius_order(const Curve& E, const Integer& p) {
    Curve M = minimal_model(E);
    if (p == 2 || mpz_divisible_p(M.disc.get_mpz_t(), p.get_mpz_t()))
        throw Error(ErrorCode::BadReductionPrime, "bad prime " + to_string(p));
    if (!is_probable_prime(p)) throw Error(ErrorCode::InvalidInput, to_string(p) + " is not prime");
    return detail::frobenius_order_on_minimal(M, p);
}

int local_two_torsion_dim(const Curve& E, const Place& v) {
    int roots;
    if (v.is_real()) roots = sgn(E.disc) > 0 ? 3 : 1;
    else roots = detail::padic_root_count(detail::monic_two_division(E), v.prime());
    return roots == 0 ? 0 : roots == 1 ? 1 : 2;
}

void require_twist_disc(const Integer& d) {
    if (d == 0 || !is_squarefree(d))
        throw Error(ErrorCode::NotSquarefree, "twist discriminant " + to_string(d) + " is not squarefree");
}

Curve twist(const Curve& E, const Integer& d) {
    require_twist_disc(d);
    Integer c4 = d * d * E.c4;
    Integer c6 = d * d * d * E.c6;
    return minimal_model(make_curve({Integer(0), Integer(0), Integer(0), Integer(-27 * c4), Integer(-54 * c6)}));
}

}  // namespace twistlab
