#pragma once

// Complete 2-descent for curves y^2 = (x - e1)(x - e2)(x - e3).

#include <array>
#include <utility>
#include <vector>

#include "twistlab/curve.hpp"
#include "twistlab/f2.hpp"

namespace twistlab {

class FullTorsionCurve {
public:
    /// Throws InvalidInput unless the roots are distinct, OutOfRange if |e_i| > 10^6.
    FullTorsionCurve(Integer e1, Integer e2, Integer e3);

    const std::array<Integer, 3>& e() const { return e_; }
    /// Primes dividing 2 (e1 - e2)(e1 - e3)(e2 - e3).
    const std::vector<Integer>& bad_support() const { return support_; }
    Curve curve() const;
    FullTorsionCurve twist(const Integer& d) const;

private:
    std::array<Integer, 3> e_;
    std::vector<Integer> support_;
};

const Integer& descent_root_bound();

/// A class in (Q^x / Q^x2)^2, as the images of x - e1 and x - e2.
using ClassPair = std::pair<Integer, Integer>;

struct DescentBasis {
    std::vector<ClassPair> generators;
    int dim = 0;
    std::vector<Integer> support;
};

struct SelmerSetup {
    std::vector<Place> T;
    int dimStrict = 0;
    int dimRelaxed = 0;
    int dimVT = 0;
    int d2 = 0;
};

DescentBasis sel2(const FullTorsionCurve& E);

SelmerSetup relaxed_strict(const FullTorsionCurve& E, const std::vector<Place>& T);

int localize(const FullTorsionCurve& E, const std::vector<Place>& T);

struct Lem2Report {
    Integer d;
    std::vector<Integer> T;
    int t = 0;
    int d2Base = 0;
    int d2Twist = 0;
    int dimVT = 0;
    int dd = 0;             // d2Twist - d2Base + dimVT
    int dimVTTwist = 0;     // dim V_T computed on the twist
    bool equalityHolds = false;
    bool rangeHolds = false;
    bool parityHolds = false;
    bool ok() const { return equalityHolds && rangeHolds && parityHolds; }
};

/// Throws NotAdmissible unless d is admissible for E.
Lem2Report verify_lem2(const FullTorsionCurve& E, const Integer& d);

/// Kummer image of the 2-torsion point with x = e_i.
ClassPair torsion_image(const FullTorsionCurve& E, int i);

/// Bits of the class of x in Q_v^x / Q_v^x2: one bit at the real place, two at an
/// odd prime (odd valuation, nonresidue unit), three at 2 (odd valuation, unit 3 or
/// 7 mod 8, unit 3 or 5 mod 8).
BitVector local_class_bits(const Rational& x, const Place& v);
std::size_t local_class_width(const Place& v);

/// Spanning set of the local Kummer image at v as pairs of local class bits;
/// throws PrecisionExhausted if the expected dimension is not reached.
std::vector<BitVector> local_kummer_image(const FullTorsionCurve& E, const Place& v);

}  // namespace twistlab
