// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "twistlab/descent.hpp"
#include "twistlab/gmodule.hpp"
#include "twistlab/localdata.hpp"
#include "twistlab/parity.hpp"
#include "twistlab/twistsearch.hpp"

using namespace twistlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::vector<FullTorsionCurve> random_full_torsion(std::mt19937_64& rng, std::size_t n, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<FullTorsionCurve> out;
    while (out.size() < n) {
        const long a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == b || a == c || b == c) continue;
        out.emplace_back(a, b, c);
    }
    return out;
}

Integer random_squarefree(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    for (;;) {
        const long d = dist(rng);
        if (d != 0 && d != 1 && is_squarefree(Integer(d))) return d;
    }
}

// All admissible d with 1 < |d| <= bound.
std::vector<Integer> admissible_twists(const Curve& C, long bound) {
    std::vector<Integer> out;
    for (long d = -bound; d <= bound; ++d)
        if (d != 0 && d != 1 && is_squarefree(Integer(d)) && admissible(C, d).admissible) out.push_back(d);
    return out;
}

bool semistable_at_2_and_3(const Curve& E) {
    for (const auto& r : bad_reduction(E))
        if (r.type == ReductionKind::Additive && (r.place.prime() == 2 || r.place.prime() == 3)) return false;
    return true;
}

Outcome kramer_agreement() {
    const auto start = Clock::now();
    std::mt19937_64 rng(1001);
    long curves = 0, skipped = 0, admissible_cases = 0, other_cases = 0, mismatches = 0;
    auto check = [&](const FullTorsionCurve& E, int base, const Integer& d) {
        const auto pred = kramer_parity(E.curve(), d);
        const int diff = sel2(E.twist(d)).dim - base;
        if (((diff % 2) + 2) % 2 != pred.flipBit) ++mismatches;
    };
    while (curves < 200) {
        const FullTorsionCurve E = random_full_torsion(rng, 1, 50).front();
        const Curve C = E.curve();
        const auto ds = admissible_twists(C, 500);
        if (ds.empty()) {
            ++skipped;
            continue;
        }
        const int base = sel2(E).dim;
        check(E, base, ds[rng() % ds.size()]);
        ++admissible_cases;
        ++curves;
        // A few non-admissible twists whose local indices are all supported.
        for (int extra = 0; extra < 2; ++extra) {
            const Integer d = random_squarefree(rng, 500);
            try {
                (void)kramer_parity(C, d);
            } catch (const Error&) {
                continue;
            }
            check(E, base, d);
            ++other_cases;
        }
    }
    const double secs = seconds_since(start);
    Outcome o;
    o.pass = mismatches == 0 && secs < 600;
    o.detail = std::to_string(curves) + " curves with admissible twists (" + std::to_string(skipped) +
               " without), " + std::to_string(other_cases) + " further supported twists, " +
               std::to_string(mismatches) + " mismatches, " + std::to_string(static_cast<int>(secs)) + "s";
    return o;
}

Outcome poitou_tate() {
    std::mt19937_64 rng(1002);
    const std::vector<long> good{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    long pairs = 0, failures = 0;
    for (const auto& E : random_full_torsion(rng, 60, 40)) {
        const auto& bad = E.bad_support();
        std::vector<Place> T;
        const int size = static_cast<int>(rng() % 3);
        while (static_cast<int>(T.size()) < size) {
            const bool use_bad = rng() % 2 == 0;
            const Place v = Place::finite(use_bad ? bad[rng() % bad.size()] : Integer(good[rng() % good.size()]));
            if (std::find(T.begin(), T.end(), v) == T.end()) T.push_back(v);
        }
        const auto s = relaxed_strict(E, T);
        int sum = 0;
        for (const auto& v : T) sum += h1f_dim(E.curve(), v);
        ++pairs;
        if (s.dimRelaxed - s.dimStrict != sum || s.dimVT + s.dimStrict != s.d2) ++failures;
    }
    return {failures == 0 && pairs >= 50, std::to_string(pairs) + " pairs, " + std::to_string(failures) + " failures"};
}

Outcome twist_formula() {
    std::mt19937_64 rng(1003);
    long checked = 0, failures = 0;
    while (checked < 100) {
        const FullTorsionCurve E = random_full_torsion(rng, 1, 40).front();
        const auto ds = admissible_twists(E.curve(), 500);
        if (ds.empty()) continue;
        if (!verify_lem2(E, ds[rng() % ds.size()]).ok()) ++failures;
        ++checked;
    }
    return {failures == 0, std::to_string(checked) + " pairs, " + std::to_string(failures) + " failures"};
}

Outcome root_number_parity() {
    std::mt19937_64 rng(1004);
    long checked = 0, failures = 0;
    for (const auto& E : random_full_torsion(rng, 3000, 50)) {
        const Curve C = E.curve();
        if (!semistable_at_2_and_3(C)) continue;
        if (!parity_crosscheck(C, sel2(E).dim)) ++failures;
        ++checked;
    }
    return {failures == 0 && checked > 0, std::to_string(checked) + " curves, " + std::to_string(failures) + " failures"};
}

Outcome densities() {
    const auto start = Clock::now();
    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    const auto s3 = density_scan(make_curve({0, -1, 1, 0, 0}), 100000, jobs);
    const auto c3 = density_scan(make_curve({0, 1, 0, -2, -1}), 100000, jobs);
    const double secs = seconds_since(start);
    const double f3 = s3.observed.at(3), g3 = c3.observed.at(3);
    char buf[160];
    std::snprintf(buf, sizeof buf, "S3 order-3 fraction %.4f, C3 order-3 fraction %.4f, %.1fs", f3, g3, secs);
    return {std::abs(f3 - 1.0 / 3) <= 0.02 && std::abs(g3 - 2.0 / 3) <= 0.02 && secs < 120, buf};
}

Outcome stable_twists() {
    const Curve E0 = make_curve({0, -1, 1, 0, 0});
    const int w = root_number(E0).global;
    const auto ps = stable_twist_primes(E0, 10000);
    long failures = 0;
    for (const auto& p : ps) {
        const auto a = admissible(E0, p);
        if (!a.admissible || !a.T.empty() || root_number(twist(E0, p)).global != w) ++failures;
    }
    return {!ps.empty() && failures == 0, std::to_string(ps.size()) + " primes, " + std::to_string(failures) + " failures"};
}

Outcome parity_flip() {
    std::vector<Curve> curves{make_curve({0, -1, 1, 0, 0})};
    for (long p : {3L, 5L, 7L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L}) {
        if (curves.size() == 11) break;
        for (long t0 = 0; t0 <= 4; ++t0) {
            try {
                curves.push_back(family_curve(p, t0).curve);
                break;
            } catch (const Error&) {
            }
        }
    }
    long failures = 0;
    for (const auto& E : curves) {
        const auto d = flip_twist(E, 10000);
        if (!d || root_number(twist(E, *d)).global != -root_number(E).global) ++failures;
    }
    return {curves.size() == 11 && failures == 0,
            std::to_string(curves.size()) + " curves, " + std::to_string(failures) + " failures"};
}

Outcome family() {
    long members = 0, failures = 0, primes_used = 0;
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
        bool any = false;
        for (long t0 = 0; t0 <= 4; ++t0) {
            try {
                const auto m = family_curve(p, t0);
                ++members;
                any = true;
                bool ok = two_division(m.curve).galoisType == GaloisType::S3;
                const auto rp = reduction_type(m.curve, p);
                ok = ok && rp.multiplicative() && rp.ordDeltaMin == 1;
                for (const auto& r : bad_reduction(m.curve)) ok = ok && r.multiplicative();
                if (!ok) ++failures;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::FamilyCheckFailed) ++failures;
            }
        }
        if (any) ++primes_used;
    }
    long line_failures = 0;
    for (long t = 0; t <= 50; ++t) {
        const Curve E = make_curve({0, -1, 1, 0, t});
        if (E.disc != -(4 * t + 1) * (108 * t + 11) || E.c4 != 16) ++line_failures;
    }
    return {failures == 0 && line_failures == 0 && primes_used == 10,
            std::to_string(primes_used) + " primes, " + std::to_string(members) + " members, " +
                std::to_string(failures + line_failures) + " failures"};
}

Outcome group_algebras() {
    long failures = 0;
    for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
        unsigned ord = 1;
        for (unsigned x = 2 % p; x != 1; x = x * 2 % p) ++ord;
        const auto g = group_algebra(p);
        if (g.simpleDims.size() != (p - 1) / ord) ++failures;
        for (unsigned d : g.simpleDims)
            if (d != ord) ++failures;
    }
    std::mt19937_64 rng(1009);
    const std::vector<unsigned> ps{3, 5, 7, 11, 13};
    long modules = 0;
    while (modules < 100) {
        const unsigned p = ps[rng() % ps.size()];
        const auto g = group_algebra(p);
        BitMatrix A = BitMatrix::identity(rng() % 4);
        for (const auto& f : g.factors)
            for (std::size_t k = rng() % 3; k > 0; --k) A = BitMatrix::direct_sum(A, companion(f));
        const std::size_t n = A.rows();
        if (n == 0) continue;
        BitMatrix P = BitMatrix::identity(n), Pinv = BitMatrix::identity(n);
        for (int k = 0; k < 4 * static_cast<int>(n) && n > 1; ++k) {
            const std::size_t i = rng() % n, j = rng() % n;
            if (i == j) continue;
            BitMatrix E = BitMatrix::identity(n);
            E.set(i, j);
            P = E * P;
            Pinv = Pinv * E;
        }
        const auto s = split_module({p, P * A * Pinv});
        std::size_t total = s.fixedDim;
        for (const auto& m : s.multiplicities) total += m.multiplicity * m.simpleDim;
        if (total != n) ++failures;
        ++modules;
    }
    return {failures == 0, std::to_string(modules) + " random modules, " + std::to_string(failures) + " failures"};
}

Outcome classifier() {
    auto make = [](PlaceKind k, long p, LocalReduction r, Tri flag) {
        PlaceDescriptor d;
        d.kind = k;
        d.p = p;
        d.reduction = r;
        d.deltaParityFlag = flag;
        d.ordDelta = r == LocalReduction::Good ? 0 : 2;
        return d;
    };
    const std::vector<PlaceDescriptor> alphabet{
        make(PlaceKind::Real, 0, LocalReduction::Good, Tri::No),
        make(PlaceKind::Complex, 0, LocalReduction::Good, Tri::Yes),
        make(PlaceKind::Finite, 7, LocalReduction::Good, Tri::Yes),
        make(PlaceKind::Finite, 5, LocalReduction::MultSplit, Tri::No),
        make(PlaceKind::Finite, 5, LocalReduction::MultNonsplit, Tri::No),
        make(PlaceKind::Finite, 5, LocalReduction::Additive, Tri::Yes),
        make(PlaceKind::Finite, 5, LocalReduction::Additive, Tri::No),
        make(PlaceKind::Finite, 2, LocalReduction::Additive, Tri::Yes),
    };
    long sets = 0, failures = 0;
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (!idx.empty()) {
            std::vector<PlaceDescriptor> places;
            bool real_or_mult = false, all_yes = true;
            for (std::size_t i : idx) {
                const auto& d = alphabet[i];
                places.push_back(d);
                real_or_mult = real_or_mult || d.kind == PlaceKind::Real || d.reduction == LocalReduction::MultSplit ||
                               d.reduction == LocalReduction::MultNonsplit;
                all_yes = all_yes && d.deltaParityFlag == Tri::Yes;
            }
            const auto v = classify_constant_parity(places);
            const bool expect_constant = !real_or_mult && all_yes;
            if (v.constant != expect_constant) ++failures;
            if (!v.constant && (!v.witness || *v.witness >= places.size())) ++failures;
            ++sets;
        }
        if (depth == 6) return;
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            idx.push_back(i);
            rec(depth + 1);
            idx.pop_back();
        }
    };
    rec(0);
    return {failures == 0, std::to_string(sets) + " descriptor lists, " + std::to_string(failures) + " failures"};
}

Outcome hilbert_product() {
    std::mt19937_64 rng(1011);
    std::uniform_int_distribution<long> dist(-10000, 10000);
    long pairs = 0, failures = 0;
    while (pairs < 10000) {
        const long a = dist(rng), b = dist(rng);
        if (!a || !b) continue;
        std::vector<Integer> primes{2};
        for (long x : {a, b})
            for (const auto& pp : factor(x).factors)
                if (std::find(primes.begin(), primes.end(), pp.prime) == primes.end()) primes.push_back(pp.prime);
        int prod = hilbert(a, b, Place::real());
        for (const auto& p : primes) prod *= hilbert(a, b, Place::finite(p));
        if (prod != 1) ++failures;
        ++pairs;
    }
    return {failures == 0, std::to_string(pairs) + " pairs, " + std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"kramer congruence agrees with descent", kramer_agreement},
        {"relaxed minus strict equals local condition dimensions", poitou_tate},
        {"twist formula verified on admissible twists", twist_formula},
        {"descent parity matches root number", root_number_parity},
        {"Frobenius order densities", densities},
        {"stable twists keep T empty and root number", stable_twists},
        {"flip twists change root number", parity_flip},
        {"family curves", family},
        {"group algebra and module splitting", group_algebras},
        {"constant parity classifier", classifier},
        {"Hilbert product formula", hilbert_product},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %zu %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
