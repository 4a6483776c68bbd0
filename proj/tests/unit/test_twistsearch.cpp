#include "doctest.h"
#include "oracles.hpp"
#include "twistlab/parity.hpp"
#include "twistlab/twistsearch.hpp"

using namespace twistlab;

namespace {
const Curve E0 = make_curve({0, -1, 1, 0, 0});
const Curve C3 = make_curve({0, 1, 0, -2, -1});
}  // namespace

TEST_CASE("stable twist primes") {
    const auto ps = stable_twist_primes(E0, 10000);
    REQUIRE_FALSE(ps.empty());
    CHECK(ps.front() == 89);
    for (const auto& p : ps) {
        CHECK(p % 8 == 1);
        CHECK(frobenius_order(E0, p) == 3);
        const auto a = admissible(E0, p);
        CHECK(a.admissible);
        CHECK(a.T.empty());
        CHECK(root_number(twist(E0, p)).global == root_number(E0).global);
    }
    // Independent sieve: p = 1 mod 8 and the 2-division cubic has no root mod p.
    std::vector<Integer> expect;
    for (long p = 3; p <= 10000; ++p) {
        if (p % 8 != 1 || !oracle::is_prime(p)) continue;
        bool root = false;
        for (long x = 0; x < p && !root; ++x) root = (4 * x * x % p * x - 4 * x * x + 1) % p == 0;
        if (!root) expect.push_back(p);
    }
    CHECK(ps == expect);
    CHECK(stable_twist_primes(E0, 2).empty());
    CHECK_THROWS_AS(stable_twist_primes(make_curve({0, 0, 0, -1, 0}), 100), Error);
}

TEST_CASE("step twist candidates") {
    CHECK(step_anchor(E0) == Place::finite(11));
    const auto cands = step_twist_candidates(E0, 1000);
    REQUIRE_FALSE(cands.empty());
    for (const auto& c : cands) {
        CHECK(c.p != 7);
        CHECK(local_two_torsion_dim(E0, Place::finite(c.p)) == 1);
        CHECK(frobenius_order(E0, c.p) == 2);
        const auto a = admissible(E0, c.d);
        CHECK(a.admissible);
        const auto env = selmer_envelope(E0, c.d, 1);
        REQUIRE(env.possible.size() == 2);
        CHECK(env.possible[1] - env.possible[0] == 2);
    }
    CHECK_THROWS_AS(step_anchor(C3), Error);
}

TEST_CASE("flip twist") {
    const auto d = flip_twist(E0, 10000);
    REQUIRE(d.has_value());
    CHECK(*d == -7);
    CHECK(kramer_parity(E0, *d).flipBit == 1);
    CHECK(root_number(twist(E0, *d)).global == -root_number(E0).global);
    CHECK_FALSE(flip_twist(E0, 0).has_value());
    for (long p : {13L, 17L, 29L, 37L}) {
        const auto m = family_curve(p, 0);
        const auto fd = flip_twist(m.curve, 10000);
        REQUIRE(fd.has_value());
        CHECK(kramer_parity(m.curve, *fd).flipBit == 1);
        CHECK(root_number(twist(m.curve, *fd)).global == -root_number(m.curve).global);
    }
}

TEST_CASE("family curves") {
    CHECK(family_eta(11) == 8);
    const auto m0 = family_curve(11, 0, Integer(0));
    CHECK(m0.curve == E0);
    CHECK(m0.curve.disc == -11);
    const auto m8 = family_curve(11, 0);
    CHECK(m8.eta == 8);
    CHECK(valuation(Integer(4 * 8 + 1), Integer(11)) == 1);
    CHECK(reduction_type(m8.curve, 11).ordDeltaMin == 1);
    CHECK_THROWS_AS(family_curve(2, 0), Error);
    for (long t = 0; t <= 6; ++t) {
        const Curve E = make_curve({0, -1, 1, 0, t});
        CHECK(E.disc == -(4 * t + 1) * (108 * t + 11));
        CHECK(E.c4 == 16);
    }
    for (long p : {3L, 5L, 7L, 13L}) {
        for (long t0 = 0; t0 <= 4; ++t0) {
            try {
                const auto m = family_curve(p, t0);
                CHECK(reduction_type(m.curve, p).multiplicative());
                CHECK(reduction_type(m.curve, p).ordDeltaMin == 1);
                CHECK(two_division(m.curve).galoisType == GaloisType::S3);
                for (const auto& r : bad_reduction(m.curve)) CHECK(r.multiplicative());
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::FamilyCheckFailed);
            }
        }
    }
}

TEST_CASE("density scan") {
    const auto r = density_scan(E0, 10);
    // Good odd primes up to 10: 3 and 5 (cubic irreducible), 7 (one root).
    CHECK(r.primesExamined == 3);
    long sum = 0;
    for (const auto& [k, v] : r.counts) sum += v;
    CHECK(sum == 3);
    CHECK(r.counts.at(3) == 2);
    CHECK(r.counts.at(2) == 1);
    CHECK(r.counts.at(1) == 0);
    CHECK(r.exponent == doctest::Approx(2.0 / 3));
    CHECK(density_scan(C3, 10).exponent == doctest::Approx(1.0 / 3));

    const auto big = density_scan(E0, 20000, 4);
    const auto one = density_scan(E0, 20000, 1);
    CHECK(big.counts == one.counts);
    CHECK(big.n1Count == one.n1Count);
    CHECK(big.observed.at(3) == doctest::Approx(1.0 / 3).epsilon(0.1));
}
