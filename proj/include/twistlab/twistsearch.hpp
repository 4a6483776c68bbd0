#pragma once

// Congruence and Frobenius sieves for twist construction, the E_t family, density counts.

#include <map>
#include <optional>
#include <vector>

#include "twistlab/parity.hpp"

namespace twistlab {

enum class SignCondition { Positive, Negative, Either };

struct SieveSpec {
    std::vector<std::pair<Integer, std::vector<Integer>>> modulusClasses;
    std::vector<std::pair<Integer, int>> qrConditions;
    std::optional<int> frobeniusOrder;
    SignCondition signCondition = SignCondition::Either;
};

/// Primes p <= X with p = 1 mod 8, (p|q) = 1 at odd additive and even-valuation
/// multiplicative q, and Frobenius of order 3. Throws WrongTorsion if E(Q)[2] != 0.
std::vector<Integer> stable_twist_primes(const Curve& E, const Integer& X);

/// The conditions stable_twist_primes sieves on, minus the Frobenius check order.
SieveSpec stable_twist_sieve(const Curve& E);

struct StepCandidate {
    Integer p;
    Integer d;
    int flipBit = 1;
    std::array<int, 2> envelopeOffsets{-1, 1};
};

/// Anchor place used by step_twist_candidates: the first multiplicative prime
/// with odd valuation, else the real place when the discriminant is negative.
/// Throws HypothesesFail if neither exists or the Galois type is not S3.
Place step_anchor(const Curve& E);

std::vector<StepCandidate> step_twist_candidates(const Curve& E, const Integer& X);

/// d = +-p with |d| <= X and kramer flip bit 1.
std::optional<Integer> flip_twist(const Curve& E, const Integer& X);

struct FamilyMember {
    Integer p;
    Integer eta;
    Integer t0;
    Integer g;  // eta + (4 eta + 1)^2 t0
    Curve curve;
};

/// Smallest eta >= 0 with ord_p(4 eta + 1) = 1.
Integer family_eta(const Integer& p);

/// E_g: y^2 + y = x^3 - x^2 + g with g = eta + (4 eta + 1)^2 t0. Throws NotOddPrime,
/// FamilyCheckFailed.
FamilyMember family_curve(const Integer& p, const Integer& t0, std::optional<Integer> eta = std::nullopt);

struct DensityReport {
    Integer X;
    std::map<int, long> counts;
    std::map<int, double> expected;
    std::map<int, double> observed;
    long primesExamined = 0;
    long n1Count = 0;
    double exponent = 0;
};

DensityReport density_scan(const Curve& E, const Integer& X, unsigned jobs = 1);

}  // namespace twistlab
