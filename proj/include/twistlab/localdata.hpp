#pragma once

// Local conditions, local norm indices and twist admissibility.

#include <optional>
#include <string>
#include <vector>

#include "twistlab/curve.hpp"

namespace twistlab {

enum class Splitting { Split, Inert, Ramified };

std::string_view splitting_name(Splitting s);

/// Behavior of v in Q(sqrt d).
Splitting splitting(const Integer& d, const Place& v);

/// Finite part of the conductor of Q(sqrt d): |d| if d = 1 mod 4, else 4|d|.
Integer twist_conductor(const Integer& d);

/// dim H^1_f(Q_v, E[2]).
int h1f_dim(const Curve& E, const Place& v);

struct DeltaValue {
    std::optional<int> value;  // empty means Unsupported
    std::string rule;
};

/// Local norm index delta_v(E, Q(sqrt d)/Q). E is taken to its minimal model.
DeltaValue delta_v(const Curve& E, const Integer& d, const Place& v);

struct NormIndexEntry {
    Place place = Place::real();
    std::optional<int> delta;
    std::string rule;
};

struct NormIndexReport {
    std::vector<NormIndexEntry> entries;
    std::optional<int> totalParity;
};

/// delta_v at the real place and every prime dividing 2 * disc_min * d.
NormIndexReport norm_index_report(const Curve& E, const Integer& d);

enum class Tri { Yes, No, Unknown };
enum class PlaceKind { Real, Complex, Finite };
enum class LocalReduction { Good, MultSplit, MultNonsplit, Additive };

std::string_view tri_name(Tri t);

struct PlaceDescriptor {
    PlaceKind kind = PlaceKind::Finite;
    Integer p = 0;  // residue characteristic, finite only
    bool ramified = false;
    LocalReduction reduction = LocalReduction::Good;
    unsigned ordDelta = 0;
    Tri deltaParityFlag = Tri::Unknown;
};

Tri d_parity(const PlaceDescriptor& desc);

struct Admissibility {
    bool admissible = false;
    std::vector<Integer> T;
    std::string reason;
};

Admissibility admissible(const Curve& E, const Integer& d);

}  // namespace twistlab
