#include "twistlab/parity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "curve_detail.hpp"

namespace twistlab {

ParityPrediction kramer_parity(const Curve& E, const Integer& d, std::optional<int> d2_base) {
    ParityPrediction out;
    out.perPlace = norm_index_report(E, d);
    std::set<std::string> tags;
    for (const auto& e : out.perPlace.entries) {
        if (!e.delta) throw Error(ErrorCode::UnsupportedPlace, "delta unsupported at " + e.place.to_string());
        tags.insert(e.rule);
    }
    out.basis.assign(tags.begin(), tags.end());
    out.flipBit = *out.perPlace.totalParity;
    if (d2_base) out.predictedParity = ((*d2_base + out.flipBit) % 2 + 2) % 2;
    return out;
}

SelmerEnvelope envelope_from_t(int t, int d2_base, std::optional<int> dimVT) {
    SelmerEnvelope env;
    env.t = t;
    std::set<int> values;
    const int vmax = std::min(d2_base, t);
    for (int dimV = 0; dimV <= vmax; ++dimV) {
        if (dimVT && dimV != *dimVT) continue;
        for (int dd = (t - dimV) % 2; dd <= t - dimV; dd += 2) values.insert(d2_base - dimV + dd);
    }
    env.possible.assign(values.begin(), values.end());
    if (t == 0) env.exact = d2_base;
    else if (dimVT && t - *dimVT <= 1) env.exact = d2_base - 2 * *dimVT + t;
    return env;
}

SelmerEnvelope selmer_envelope(const Curve& E, const Integer& d, int d2_base, std::optional<int> dimVT) {
    if (d2_base < 0) throw Error(ErrorCode::InvalidInput, "negative d2");
    const Admissibility adm = admissible(E, d);
    if (!adm.admissible) throw Error(ErrorCode::NotAdmissible, adm.reason);
    const Curve M = minimal_model(E);
    int t = 0;
    for (const auto& p : adm.T) t += local_two_torsion_dim(M, Place::finite(p));
    if (dimVT && (*dimVT < 0 || *dimVT > std::min(t, d2_base)))
        throw Error(ErrorCode::InvalidInput, "dim V_T out of range");
    SelmerEnvelope env = envelope_from_t(t, d2_base, dimVT);
    env.T = adm.T;
    return env;
}

RootNumberReport root_number(const Curve& E) {
    const Curve M = minimal_model(E);
    RootNumberReport r;
    r.local.emplace_back(Place::real(), -1);
    for (const auto& p : factor(M.disc).primes()) {
        const ReductionPlace red = detail::reduction_on_minimal(M, p);
        int w = 1;
        switch (red.type) {
            case ReductionKind::MultSplit: w = -1; break;
            case ReductionKind::MultNonsplit: w = 1; break;
            case ReductionKind::Additive: {
                if (p == 2 || p == 3) {
                    throw Error(ErrorCode::OutOfDomain, "additive reduction at " + to_string(p));
                }
                const bool pot_mult = M.c4 != 0 && 3 * valuation(M.c4, p) < red.ordDeltaMin;
                if (pot_mult) {
                    w = kronecker(Integer(-1), p);
                } else {
                    const unsigned e = 12 / std::gcd(red.ordDeltaMin, 12U);
                    if (e == 2 || e == 6) w = kronecker(Integer(-1), p);
                    else if (e == 3) w = kronecker(Integer(-3), p);
                    else if (e == 4) w = kronecker(Integer(-2), p);
                }
                break;
            }
            default: break;
        }
        r.local.emplace_back(Place::finite(p), w);
    }
    for (const auto& [v, w] : r.local) r.global *= w;
    return r;
}

bool parity_crosscheck(const Curve& E, int descentD2) {
    const int w = root_number(E).global;
    return (descentD2 % 2 == 0 ? 1 : -1) == w;
}

ConstantParityVerdict classify_constant_parity(const std::vector<PlaceDescriptor>& places) {
    for (std::size_t i = 0; i < places.size(); ++i) {
        const Tri derived = d_parity(places[i]);
        if (derived != Tri::Unknown && places[i].deltaParityFlag != Tri::Unknown &&
            places[i].deltaParityFlag != derived)
            throw Error(ErrorCode::InconsistentDescriptor,
                        "place " + std::to_string(i) + " flag contradicts its reduction data");
    }
    ConstantParityVerdict v;
    for (std::size_t i = 0; i < places.size(); ++i) {
        const auto& d = places[i];
        const bool mult = d.kind == PlaceKind::Finite && (d.reduction == LocalReduction::MultSplit ||
                                                          d.reduction == LocalReduction::MultNonsplit);
        if (d.kind == PlaceKind::Real || mult) {
            v.witness = i;
            return v;
        }
    }
    std::vector<Tri> flags;
    for (const auto& d : places) {
        Tri f = d.deltaParityFlag == Tri::Unknown ? d_parity(d) : d.deltaParityFlag;
        flags.push_back(f);
    }
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i] == Tri::Unknown)
            throw Error(ErrorCode::UnresolvedPlace, "place " + std::to_string(i) + " has unresolved parity");
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i] == Tri::No) {
            v.witness = i;
            return v;
        }
    }
    v.constant = true;
    return v;
}

std::optional<Integer> parity_flip_witness(const Curve& E, const Integer& bound) {
    const Curve M = minimal_model(E);
    for (Integer n = 1; n <= bound; ++n) {
        if (!is_squarefree(n)) continue;
        for (int s : {1, -1}) {
            const Integer d = s * n;
            if (d == 1) continue;
            const NormIndexReport rep = norm_index_report(M, d);
            if (rep.totalParity && *rep.totalParity == 1) return d;
        }
    }
    return std::nullopt;
}

}  // namespace twistlab
