#include "twistlab/descent.hpp"

#include <algorithm>
#include <set>

#include "polymod.hpp"
#include "twistlab/localdata.hpp"

namespace twistlab {

const Integer& descent_root_bound() {
    static const Integer bound = 1000000;
    return bound;
}

FullTorsionCurve::FullTorsionCurve(Integer e1, Integer e2, Integer e3) : e_{std::move(e1), std::move(e2), std::move(e3)} {
    if (e_[0] == e_[1] || e_[0] == e_[2] || e_[1] == e_[2])
        throw Error(ErrorCode::InvalidInput, "roots must be distinct");
    for (const auto& e : e_)
        if (abs(e) > descent_root_bound()) throw Error(ErrorCode::OutOfRange, "root " + to_string(e) + " exceeds 10^6");
    std::set<Integer> primes{Integer(2)};
    for (const Integer& diff : {Integer(e_[0] - e_[1]), Integer(e_[0] - e_[2]), Integer(e_[1] - e_[2])})
        for (const auto& p : factor(diff).primes()) primes.insert(p);
    support_.assign(primes.begin(), primes.end());
}

Curve FullTorsionCurve::curve() const {
    const Integer s1 = e_[0] + e_[1] + e_[2];
    const Integer s2 = e_[0] * e_[1] + e_[0] * e_[2] + e_[1] * e_[2];
    const Integer s3 = e_[0] * e_[1] * e_[2];
    return make_curve({Integer(0), Integer(-s1), Integer(0), s2, Integer(-s3)});
}

FullTorsionCurve FullTorsionCurve::twist(const Integer& d) const {
    require_twist_disc(d);
    return FullTorsionCurve(d * e_[0], d * e_[1], d * e_[2]);
}

namespace {

void split_unit(const Rational& x, const Integer& p, long& ord, Integer& unit) {
    Integer num = x.get_num(), den = x.get_den();
    ord = 0;
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
        ++ord;
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        --ord;
    }
    unit = num * den;
}

bool is_local_square(const Rational& x, const Place& v) {
    if (x == 0) return false;
    if (v.is_real()) return x > 0;
    long ord;
    Integer u;
    split_unit(x, v.prime(), ord, u);
    if (ord % 2 != 0) return false;
    if (v.prime() == 2) return detail::mod_p(u, Integer(8)) == 1;
    return kronecker(u, v.prime()) == 1;
}

Rational f_at(const FullTorsionCurve& E, const Rational& x) {
    const auto& e = E.e();
    return (x - e[0]) * (x - e[1]) * (x - e[2]);
}

BitVector pair_bits(const Rational& a, const Rational& b, const Place& v) {
    const std::size_t w = local_class_width(v);
    BitVector out(2 * w);
    BitVector ba = local_class_bits(a, v), bb = local_class_bits(b, v);
    for (std::size_t i = 0; i < w; ++i) {
        if (ba.get(i)) out.set(i);
        if (bb.get(i)) out.set(w + i);
    }
    return out;
}

std::array<Rational, 2> torsion_rationals(const FullTorsionCurve& E, int i) {
    const auto& e = E.e();
    const Integer d12 = e[0] - e[1], d13 = e[0] - e[2], d23 = e[1] - e[2];
    switch (i) {
        case 0: return {Rational(d12 * d13), Rational(d12)};
        case 1: return {Rational(-d12), Rational(Integer(-d12) * d23)};
        default: return {Rational(Integer(-d13)), Rational(Integer(-d23))};
    }
}

bool is_bad(const FullTorsionCurve& E, const Integer& p) {
    return std::binary_search(E.bad_support().begin(), E.bad_support().end(), p);
}

}  // namespace

ClassPair torsion_image(const FullTorsionCurve& E, int i) {
    auto r = torsion_rationals(E, i);
    return {squarefree_part(r[0].get_num()).representative(), squarefree_part(r[1].get_num()).representative()};
}

std::size_t local_class_width(const Place& v) {
    if (v.is_real()) return 1;
    return v.prime() == 2 ? 3 : 2;
}

BitVector local_class_bits(const Rational& x, const Place& v) {
    if (x == 0) throw Error(ErrorCode::ZeroInput, "square class of 0");
    BitVector b(local_class_width(v));
    if (v.is_real()) {
        if (x < 0) b.set(0);
        return b;
    }
    long ord;
    Integer u;
    split_unit(x, v.prime(), ord, u);
    if (ord % 2 != 0) b.set(0);
    if (v.prime() == 2) {
        const Integer r = detail::mod_p(u, Integer(8));
        if (r == 3 || r == 7) b.set(1);
        if (r == 3 || r == 5) b.set(2);
    } else if (kronecker(u, v.prime()) == -1) {
        b.set(1);
    }
    return b;
}

std::vector<BitVector> local_kummer_image(const FullTorsionCurve& E, const Place& v) {
    const auto& e = E.e();
    if (v.is_finite() && !is_bad(E, v.prime())) {
        // good odd prime: the unramified classes
        BitVector a(4), b(4);
        a.set(1);
        b.set(3);
        return {a, b};
    }
    const std::size_t target = v.is_real() ? 1 : (v.prime() == 2 ? 3 : 2);
    EchelonBasis basis(2 * local_class_width(v));
    for (int i = 0; i < 3; ++i) {
        auto r = torsion_rationals(E, i);
        basis.insert(pair_bits(r[0], r[1], v));
    }
    auto try_x = [&](const Rational& x) {
        if (basis.dim() >= target) return;
        if (x == e[0] || x == e[1] || x == e[2]) return;
        if (!is_local_square(f_at(E, x), v)) return;
        basis.insert(pair_bits(x - e[0], x - e[1], v));
    };
    if (v.is_real()) {
        std::array<Integer, 3> r = e;
        std::sort(r.begin(), r.end());
        try_x(Rational(r[0] + r[1], 2));
        try_x(Rational(r[2] + 1));
    } else {
        const Integer& p = v.prime();
        unsigned max_ord = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) max_ord = std::max(max_ord, valuation(Integer(e[i] - e[j]), p));
        for (const long U : {16L, 128L, 1024L}) {
            const unsigned K = max_ord + (p == 2 ? 8 : 4);
            Integer pk = 1;
            for (unsigned k = 0; k <= K && basis.dim() < target; ++k, pk *= p) {
                for (long u = 1; u <= U && basis.dim() < target; ++u) {
                    for (int i = 0; i < 3; ++i) {
                        try_x(Rational(e[i] + pk * u));
                        try_x(Rational(e[i] - pk * u));
                    }
                }
            }
            Integer p2k = p * p;
            for (unsigned k = 1; k <= (p == 2 ? 4U : 2U) && basis.dim() < target; ++k, p2k *= p * p) {
                for (long u = 1; u <= U && basis.dim() < target; ++u) {
                    try_x(Rational(Integer(u), p2k));
                    try_x(Rational(Integer(-u), p2k));
                }
            }
            if (basis.dim() >= target) break;
        }
    }
    if (basis.dim() < target)
        throw Error(ErrorCode::PrecisionExhausted, "local image at " + v.to_string() + " incomplete");
    return basis.originals();
}

namespace {

struct SelmerSystem {
    std::vector<Integer> basis;  // -1 then primes
    std::vector<BitVector> rows;
    std::size_t n() const { return basis.size(); }
};

SelmerSystem make_system(const std::vector<Integer>& primes) {
    SelmerSystem s;
    s.basis.push_back(-1);
    for (const auto& p : primes) s.basis.push_back(p);
    return s;
}

// Bits of each basis element at v.
std::vector<BitVector> basis_bits(const SelmerSystem& s, const Place& v) {
    std::vector<BitVector> out;
    for (const auto& b : s.basis) out.push_back(local_class_bits(Rational(b), v));
    return out;
}

// Adds the row x -> a . loc_v(x) for a functional a on (Q_v^x/sq)^2.
void add_functional(SelmerSystem& s, const std::vector<BitVector>& bits, const BitVector& a) {
    const std::size_t n = s.n(), w = bits.front().size();
    BitVector row(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        bool c1 = false, c2 = false;
        for (std::size_t i = 0; i < w; ++i) {
            if (bits[j].get(i) && a.get(i)) c1 = !c1;
            if (bits[j].get(i) && a.get(w + i)) c2 = !c2;
        }
        if (c1) row.set(j);
        if (c2) row.set(n + j);
    }
    s.rows.push_back(row);
}

void add_local_condition(SelmerSystem& s, const std::vector<BitVector>& image, const Place& v) {
    const std::size_t w2 = 2 * local_class_width(v);
    const auto annihilator = BitMatrix::from_rows(image, w2).kernel();
    const auto bits = basis_bits(s, v);
    for (const auto& a : annihilator) add_functional(s, bits, a);
}

void add_trivial_condition(SelmerSystem& s, const Place& v) {
    const std::size_t w2 = 2 * local_class_width(v);
    const auto bits = basis_bits(s, v);
    for (std::size_t i = 0; i < w2; ++i) {
        BitVector a(w2);
        a.set(i);
        add_functional(s, bits, a);
    }
}

std::vector<BitVector> solve(const SelmerSystem& s) {
    return BitMatrix::from_rows(s.rows, 2 * s.n()).kernel();
}

ClassPair to_pair(const SelmerSystem& s, const BitVector& x) {
    Integer d1 = 1, d2 = 1;
    for (std::size_t j = 0; j < s.n(); ++j) {
        if (x.get(j)) d1 *= s.basis[j];
        if (x.get(s.n() + j)) d2 *= s.basis[j];
    }
    return {d1, d2};
}

bool contains(const std::vector<Place>& T, const Place& v) {
    return std::find(T.begin(), T.end(), v) != T.end();
}

std::vector<Place> all_places(const std::vector<Integer>& primes) {
    std::vector<Place> out{Place::real()};
    for (const auto& p : primes) out.push_back(Place::finite(p));
    return out;
}

std::vector<Integer> enlarged_support(const FullTorsionCurve& E, const std::vector<Place>& T) {
    std::set<Integer> s(E.bad_support().begin(), E.bad_support().end());
    for (const auto& v : T)
        if (v.is_finite()) s.insert(v.prime());
    return {s.begin(), s.end()};
}

}  // namespace

DescentBasis sel2(const FullTorsionCurve& E) {
    SelmerSystem s = make_system(E.bad_support());
    for (const auto& v : all_places(E.bad_support())) add_local_condition(s, local_kummer_image(E, v), v);
    DescentBasis out;
    out.support = E.bad_support();
    for (const auto& x : solve(s)) out.generators.push_back(to_pair(s, x));
    out.dim = static_cast<int>(out.generators.size());
    return out;
}

SelmerSetup relaxed_strict(const FullTorsionCurve& E, const std::vector<Place>& T) {
    const std::vector<Integer> support = enlarged_support(E, T);
    const std::vector<Place> places = all_places(support);
    SelmerSystem relaxed = make_system(support), strict = make_system(support), full = make_system(support);
    for (const auto& v : places) {
        const auto image = local_kummer_image(E, v);
        add_local_condition(full, image, v);
        add_local_condition(strict, image, v);
        if (contains(T, v)) add_trivial_condition(strict, v);
        else add_local_condition(relaxed, image, v);
    }
    SelmerSetup out;
    out.T = T;
    std::sort(out.T.begin(), out.T.end());
    out.T.erase(std::unique(out.T.begin(), out.T.end()), out.T.end());
    out.d2 = static_cast<int>(solve(full).size());
    out.dimStrict = static_cast<int>(solve(strict).size());
    out.dimRelaxed = static_cast<int>(solve(relaxed).size());
    out.dimVT = out.d2 - out.dimStrict;
    return out;
}

int localize(const FullTorsionCurve& E, const std::vector<Place>& T) {
    if (T.empty()) return 0;
    const DescentBasis B = sel2(E);
    std::vector<BitVector> images;
    std::size_t width = 0;
    for (const auto& v : T) width += 2 * local_class_width(v);
    for (const auto& [d1, d2] : B.generators) {
        BitVector img(width);
        std::size_t off = 0;
        for (const auto& v : T) {
            BitVector b = pair_bits(Rational(d1), Rational(d2), v);
            for (std::size_t i = 0; i < b.size(); ++i)
                if (b.get(i)) img.set(off + i);
            off += b.size();
        }
        images.push_back(img);
    }
    return static_cast<int>(span_rank(images));
}

Lem2Report verify_lem2(const FullTorsionCurve& E, const Integer& d) {
    const Curve C = E.curve();
    const Admissibility adm = admissible(C, d);
    if (!adm.admissible) throw Error(ErrorCode::NotAdmissible, adm.reason);
    Lem2Report r;
    r.d = d;
    r.T = adm.T;
    std::vector<Place> T;
    for (const auto& p : adm.T) {
        T.push_back(Place::finite(p));
        r.t += local_two_torsion_dim(C, Place::finite(p));
    }
    const FullTorsionCurve Ed = E.twist(d);
    r.d2Base = sel2(E).dim;
    r.d2Twist = sel2(Ed).dim;
    r.dimVT = localize(E, T);
    r.dimVTTwist = localize(Ed, T);
    r.dd = r.d2Twist - r.d2Base + r.dimVT;
    r.equalityHolds = r.dd == r.dimVTTwist;
    r.rangeHolds = r.dd >= 0 && r.dd <= r.t - r.dimVT;
    r.parityHolds = ((r.t - r.dimVT - r.dd) % 2 + 2) % 2 == 0;
    return r;
}

}  // namespace twistlab
