#include "twistlab/localdata.hpp"

#include <algorithm>
#include <set>

#include "curve_detail.hpp"

namespace twistlab {

std::string_view splitting_name(Splitting s) {
    switch (s) {
        case Splitting::Split: return "Split";
        case Splitting::Inert: return "Inert";
        case Splitting::Ramified: return "Ramified";
    }
    return "?";
}

std::string_view tri_name(Tri t) {
    switch (t) {
        case Tri::Yes: return "Yes";
        case Tri::No: return "No";
        case Tri::Unknown: return "Unknown";
    }
    return "?";
}

Splitting splitting(const Integer& d, const Place& v) {
    if (d == 0) throw Error(ErrorCode::ZeroInput, "twist discriminant 0");
    if (v.is_real()) return d > 0 ? Splitting::Split : Splitting::Ramified;
    const Integer& p = v.prime();
    if (p == 2) {
        const Integer r = detail::mod_p(d, Integer(8));
        if (r == 1) return Splitting::Split;
        if (r == 5) return Splitting::Inert;
        return Splitting::Ramified;
    }
    if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) return Splitting::Ramified;
    return kronecker(d, p) == 1 ? Splitting::Split : Splitting::Inert;
}

Integer twist_conductor(const Integer& d) {
    if (detail::mod_p(d, Integer(4)) == 1) return abs(d);
    return 4 * abs(d);
}

int h1f_dim(const Curve& E, const Place& v) {
    if (v.is_real()) return sgn(minimal_model(E).disc) > 0 ? 1 : 0;
    const int dim = local_two_torsion_dim(E, v);
    return v.prime() == 2 ? dim + 1 : dim;
}

namespace {

DeltaValue delta_on_minimal(const Curve& M, const Integer& d, const Place& v) {
    const Splitting s = splitting(d, v);
    if (s == Splitting::Split) return {0, "split"};
    if (v.is_real()) {
        if (M.disc < 0) return {0, "real-negative-disc"};
        return {hilbert(Rational(M.disc), Rational(d), v) == 1 ? 1 : 0, "real-ramified"};
    }
    const Integer& p = v.prime();
    const ReductionPlace red = detail::reduction_on_minimal(M, p);
    const int dimT = local_two_torsion_dim(M, v);
    if (p != 2 && dimT == 0) return {0, "no-local-2-torsion"};
    const bool ramified = s == Splitting::Ramified;
    if (red.type == ReductionKind::Good) {
        if (!ramified) return {0, "good-unramified"};
        if (p != 2) return {dimT, "good-ramified"};
        return {std::nullopt, "unsupported"};
    }
    if (red.multiplicative() && !ramified) {
        if (red.ordDeltaMin % 2 == 1) return {0, "mult-inert-odd"};
        return {1, "mult-inert-even"};
    }
    if (red.type == ReductionKind::MultSplit && ramified)
        return {hilbert(Rational(M.disc), Rational(d), v) == 1 ? 1 : 0, "mult-split-ramified"};
    return {std::nullopt, "unsupported"};
}

}  // namespace

DeltaValue delta_v(const Curve& E, const Integer& d, const Place& v) {
    require_twist_disc(d);
    return delta_on_minimal(minimal_model(E), d, v);
}

NormIndexReport norm_index_report(const Curve& E, const Integer& d) {
    require_twist_disc(d);
    const Curve M = minimal_model(E);
    std::set<Integer> primes{Integer(2)};
    for (const auto& p : factor(M.disc).primes()) primes.insert(p);
    if (d != 1 && d != -1)
        for (const auto& p : factor(d).primes()) primes.insert(p);
    NormIndexReport report;
    std::vector<Place> places{Place::real()};
    for (const auto& p : primes) places.push_back(Place::finite(p));
    int total = 0;
    bool complete = true;
    for (const auto& v : places) {
        DeltaValue dv = delta_on_minimal(M, d, v);
        report.entries.push_back({v, dv.value, dv.rule});
        if (dv.value) total += *dv.value;
        else complete = false;
    }
    if (complete) report.totalParity = total % 2;
    return report;
}

Tri d_parity(const PlaceDescriptor& desc) {
    switch (desc.kind) {
        case PlaceKind::Real: return Tri::No;
        case PlaceKind::Complex: return Tri::Yes;
        case PlaceKind::Finite: break;
    }
    if (desc.reduction == LocalReduction::MultSplit || desc.reduction == LocalReduction::MultNonsplit) return Tri::No;
    if (desc.reduction == LocalReduction::Good && desc.p != 2) return Tri::Yes;
    return Tri::Unknown;
}

Admissibility admissible(const Curve& E, const Integer& d) {
    require_twist_disc(d);
    const Curve M = minimal_model(E);
    Admissibility out;
    auto fail = [&](std::string why) {
        out.admissible = false;
        out.reason = std::move(why);
        return out;
    };
    if (d == 1) {
        out.admissible = true;
        return out;
    }
    if (splitting(d, Place::finite(2)) != Splitting::Split)
        return fail("2 does not split: " + to_string(d) + " is not 1 mod 8");
    if (M.disc > 0 && d < 0) return fail("real place must split when the discriminant is positive");
    for (const auto& p : factor(M.disc).primes()) {
        const ReductionPlace red = detail::reduction_on_minimal(M, p);
        const Splitting s = splitting(d, Place::finite(p));
        if (red.type == ReductionKind::Additive && s != Splitting::Split)
            return fail("additive place " + to_string(p) + " must split");
        if (red.multiplicative() && red.ordDeltaMin % 2 == 0 && s != Splitting::Split)
            return fail("multiplicative place " + to_string(p) + " with even valuation must split");
        if (red.multiplicative() && red.ordDeltaMin % 2 == 1 && s == Splitting::Ramified)
            return fail("multiplicative place " + to_string(p) + " with odd valuation must be unramified");
    }
    if (d != -1) {
        for (const auto& p : factor(d).primes())
            if (local_two_torsion_dim(M, Place::finite(p)) != 0) out.T.push_back(p);
    }
    out.admissible = true;
    return out;
}

}  // namespace twistlab
