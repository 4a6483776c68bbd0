#pragma once

// Weierstrass models over Q, minimal models, reduction types, 2-division data.

#include <array>
#include <optional>
#include <vector>

#include "twistlab/arith.hpp"

namespace twistlab {

struct Curve {
    std::array<Integer, 5> a;  // a1 a2 a3 a4 a6
    Integer b2, b4, b6, b8;
    Integer c4, c6;
    Integer disc;
    Rational j;

    bool operator==(const Curve& o) const { return a == o.a; }
};

/// Throws SingularModel when the discriminant vanishes.
Curve make_curve(const std::array<Integer, 5>& a);
Curve make_curve(std::initializer_list<long> a);

/// Reduced globally minimal model (a1, a3 in {0,1}, a2 in {-1,0,1}).
Curve minimal_model(const Curve& E);

/// Model with invariants (c4, c6), if one with integral coefficients exists.
std::optional<Curve> curve_from_c4c6(const Integer& c4, const Integer& c6);

enum class ReductionKind { Good, MultSplit, MultNonsplit, Additive, RealPlace };

std::string_view reduction_kind_name(ReductionKind k);

struct ReductionPlace {
    Place place = Place::real();
    ReductionKind type = ReductionKind::RealPlace;
    unsigned ordDeltaMin = 0;
    int realSignDelta = 0;  // Real only

    bool multiplicative() const {
        return type == ReductionKind::MultSplit || type == ReductionKind::MultNonsplit;
    }
};

/// Classification at a prime, computed on the minimal model.
ReductionPlace reduction_type(const Curve& E, const Integer& p);
ReductionPlace real_reduction(const Curve& E);
/// Reduction records at every prime dividing the minimal discriminant.
std::vector<ReductionPlace> bad_reduction(const Curve& E);

enum class GaloisType { S3, C3, C2, V };

std::string_view galois_type_name(GaloisType g);

struct TwoDivisionData {
    std::array<Integer, 4> cubic;  // 4, b2, 2 b4, b6 (leading first)
    GaloisType galoisType = GaloisType::S3;
    int torsionDimQ = 0;
    std::vector<Rational> rationalRoots;  // increasing
};

TwoDivisionData two_division(const Curve& E);

/// Order of Frobenius at p on E[2]. Throws BadReductionPrime if p = 2 or p | disc_min.
int frobenius_order(const Curve& E, const Integer& p);

/// dim E(Q_v)[2].
int local_two_torsion_dim(const Curve& E, const Place& v);

/// Quadratic twist by Q(sqrt d), returned as a minimal model.
Curve twist(const Curve& E, const Integer& d);

/// Throws NotSquarefree unless d is a nonzero squarefree integer.
void require_twist_disc(const Integer& d);

}  // namespace twistlab
