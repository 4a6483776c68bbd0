#pragma once

// Kramer's congruence, Selmer envelopes, root numbers, constant-parity classifier.

#include <optional>
#include <utility>
#include <vector>

#include "twistlab/localdata.hpp"

namespace twistlab {

struct ParityPrediction {
    int flipBit = 0;
    NormIndexReport perPlace;
    std::vector<std::string> basis;       // rule tags used
    std::optional<int> predictedParity;  // parity of d2 of the twist, when d2_base is given
};

/// Sum of delta_v mod 2. Throws UnsupportedPlace if any delta_v is unsupported.
ParityPrediction kramer_parity(const Curve& E, const Integer& d, std::optional<int> d2_base = std::nullopt);

struct SelmerEnvelope {
    std::vector<Integer> T;
    int t = 0;
    std::vector<int> possible;  // increasing
    std::optional<int> exact;
};

/// Throws NotAdmissible unless admissible(E, d).
SelmerEnvelope selmer_envelope(const Curve& E, const Integer& d, int d2_base,
                               std::optional<int> dimVT = std::nullopt);

/// Envelope from T-data alone (t and an optional dim V_T).
SelmerEnvelope envelope_from_t(int t, int d2_base, std::optional<int> dimVT);

struct RootNumberReport {
    int global = 1;
    std::vector<std::pair<Place, int>> local;
    bool domainOK = true;
};

/// Throws OutOfDomain for additive reduction at 2 or 3.
RootNumberReport root_number(const Curve& E);

/// (-1)^descentD2 == w(E).
bool parity_crosscheck(const Curve& E, int descentD2);

struct ConstantParityVerdict {
    bool constant = false;
    std::optional<std::size_t> witness;  // index of the witnessing place
};

/// Throws UnresolvedPlace for an Unknown flag and InconsistentDescriptor for a
/// flag contradicting d_parity.
ConstantParityVerdict classify_constant_parity(const std::vector<PlaceDescriptor>& places);

/// Smallest |d| <= bound (positive first) with every delta supported and flip bit 1.
std::optional<Integer> parity_flip_witness(const Curve& E, const Integer& bound);

}  // namespace twistlab
