#include "twistlab/twistsearch.hpp"

#include <algorithm>
#include <thread>

#include "curve_detail.hpp"

namespace twistlab {

namespace {

const Integer kSieveLimit = 1000000000;

std::vector<std::uint32_t> primes_to(const Integer& X) {
    if (X < 2) return {};
    if (X > kSieveLimit) throw Error(ErrorCode::OutOfRange, "sieve bound exceeds 10^9");
    return primes_up_to(static_cast<std::uint32_t>(X.get_ui()));
}

struct BadData {
    Curve M;
    std::vector<ReductionPlace> bad;
};

BadData bad_data(const Curve& E) {
    BadData b{minimal_model(E), {}};
    for (const auto& p : factor(b.M.disc).primes()) b.bad.push_back(detail::reduction_on_minimal(b.M, p));
    return b;
}

bool divides(const Integer& n, std::uint32_t p) { return mpz_divisible_ui_p(n.get_mpz_t(), p) != 0; }

// Odd bad primes at which a stable twist must split.
std::vector<Integer> split_required(const BadData& b) {
    std::vector<Integer> qs;
    for (const auto& r : b.bad) {
        const Integer& q = r.place.prime();
        if (q == 2) continue;
        if (r.type == ReductionKind::Additive || (r.multiplicative() && r.ordDeltaMin % 2 == 0)) qs.push_back(q);
    }
    return qs;
}

bool all_residues(const Integer& d, const std::vector<Integer>& qs) {
    for (const auto& q : qs)
        if (kronecker(d, q) != 1) return false;
    return true;
}

void require_no_torsion(const Curve& M) {
    if (two_division(M).torsionDimQ != 0) throw Error(ErrorCode::WrongTorsion, "E(Q)[2] is nonzero");
}

}  // namespace

SieveSpec stable_twist_sieve(const Curve& E) {
    const BadData b = bad_data(E);
    SieveSpec s;
    s.modulusClasses.push_back({Integer(8), {Integer(1)}});
    for (const auto& q : split_required(b)) s.qrConditions.emplace_back(q, 1);
    s.frobeniusOrder = 3;
    s.signCondition = SignCondition::Positive;
    return s;
}

std::vector<Integer> stable_twist_primes(const Curve& E, const Integer& X) {
    const BadData b = bad_data(E);
    require_no_torsion(b.M);
    const auto qs = split_required(b);
    std::vector<Integer> out;
    for (std::uint32_t p : primes_to(X)) {
        if (p % 8 != 1 || divides(b.M.disc, p)) continue;
        const Integer P = p;
        if (!all_residues(P, qs)) continue;
        if (detail::frobenius_order_on_minimal(b.M, P) == 3) out.push_back(P);
    }
    return out;
}

Place step_anchor(const Curve& E) {
    const BadData b = bad_data(E);
    if (two_division(b.M).galoisType != GaloisType::S3)
        throw Error(ErrorCode::HypothesesFail, "Galois group of the 2-division field is not S3");
    for (const auto& r : b.bad)
        if (r.place.prime() != 2 && r.multiplicative() && r.ordDeltaMin % 2 == 1) return r.place;
    if (b.M.disc < 0) return Place::real();
    throw Error(ErrorCode::HypothesesFail, "no multiplicative prime of odd valuation and positive discriminant");
}

std::vector<StepCandidate> step_twist_candidates(const Curve& E, const Integer& X) {
    const Place v0 = step_anchor(E);
    const BadData b = bad_data(E);
    std::vector<Integer> qs;
    for (const auto& r : b.bad)
        if (r.place.prime() != 2 && !(r.place == v0)) qs.push_back(r.place.prime());
    std::vector<StepCandidate> out;
    for (std::uint32_t p : primes_to(X)) {
        if (p == 2 || divides(b.M.disc, p)) continue;
        Integer d;
        if (p % 8 == 1) d = p;
        else if (p % 8 == 7 && v0.is_real()) d = -Integer(p);
        else continue;
        if (!all_residues(d, qs)) continue;
        const Integer P = p;
        if (detail::frobenius_order_on_minimal(b.M, P) != 2) continue;
        StepCandidate c;
        c.p = P;
        c.d = d;
        const NormIndexReport rep = norm_index_report(b.M, d);
        c.flipBit = rep.totalParity.value_or(-1);
        out.push_back(c);
    }
    return out;
}

std::optional<Integer> flip_twist(const Curve& E, const Integer& X) {
    const BadData b = bad_data(E);
    require_no_torsion(b.M);
    std::vector<Integer> odd_bad;
    for (const auto& r : b.bad)
        if (r.place.prime() != 2) odd_bad.push_back(r.place.prime());
    const int real_order = b.M.disc > 0 ? 3 : 2;
    for (std::uint32_t p : primes_to(X)) {
        if (p == 2 || divides(b.M.disc, p)) continue;
        const Integer P = p;
        std::optional<Integer> cand;
        if (p % 8 == 7) {
            const Integer d = -P;
            if (all_residues(d, odd_bad) && detail::frobenius_order_on_minimal(b.M, P) == real_order) cand = d;
        } else if (p % 8 == 1) {
            for (const auto& r : b.bad) {
                const Integer& q0 = r.place.prime();
                if (q0 == 2 || !r.multiplicative() || kronecker(P, q0) != -1) continue;
                bool others = true;
                for (const auto& q : odd_bad)
                    if (q != q0 && kronecker(P, q) != 1) others = false;
                if (!others) continue;
                const int want = r.ordDeltaMin % 2 == 1 ? 2 : 3;
                if (detail::frobenius_order_on_minimal(b.M, P) == want) {
                    cand = P;
                    break;
                }
            }
        }
        if (!cand) continue;
        const NormIndexReport rep = norm_index_report(b.M, *cand);
        if (rep.totalParity && *rep.totalParity == 1) return cand;
    }
    return std::nullopt;
}

Integer family_eta(const Integer& p) {
    for (Integer eta = 0;; ++eta) {
        const Integer m = 4 * eta + 1;
        if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()) && valuation(m, p) == 1) return eta;
    }
}

FamilyMember family_curve(const Integer& p, const Integer& t0, std::optional<Integer> eta) {
    if (p == 2 || !is_probable_prime(p)) throw Error(ErrorCode::NotOddPrime, to_string(p) + " is not an odd prime");
    FamilyMember f;
    f.p = p;
    f.t0 = t0;
    f.eta = eta ? *eta : family_eta(p);
    const Integer m = 4 * f.eta + 1;
    f.g = f.eta + m * m * t0;
    f.curve = make_curve({Integer(0), Integer(-1), Integer(1), Integer(0), f.g});
    const Curve M = minimal_model(f.curve);
    auto fail = [&](const std::string& why) {
        return Error(ErrorCode::FamilyCheckFailed,
                     "t0 = " + to_string(t0) + ": " + why + "; try another t0");
    };
    const ReductionPlace at_p = detail::reduction_on_minimal(M, p);
    if (!at_p.multiplicative() || at_p.ordDeltaMin != 1) throw fail("not multiplicative of valuation 1 at p");
    for (const auto& q : factor(M.disc).primes())
        if (detail::reduction_on_minimal(M, q).type == ReductionKind::Additive) throw fail("not semistable");
    if (two_division(M).galoisType != GaloisType::S3) throw fail("2-division field is not S3");
    return f;
}

DensityReport density_scan(const Curve& E, const Integer& X, unsigned jobs) {
    const BadData b = bad_data(E);
    const GaloisType g = two_division(b.M).galoisType;
    if (g != GaloisType::S3 && g != GaloisType::C3) throw Error(ErrorCode::WrongTorsion, "E(Q)[2] is nonzero");
    DensityReport r;
    r.X = X;
    if (g == GaloisType::S3) {
        r.expected = {{1, 1.0 / 6}, {2, 0.5}, {3, 1.0 / 3}};
        r.exponent = 2.0 / 3;
    } else {
        r.expected = {{1, 1.0 / 3}, {3, 2.0 / 3}};
        r.exponent = 1.0 / 3;
    }
    std::vector<std::uint32_t> good;
    for (std::uint32_t p : primes_to(X))
        if (p != 2 && !divides(b.M.disc, p)) good.push_back(p);
    std::vector<int> order(good.size());
    jobs = std::max(1U, jobs);
    std::vector<std::thread> workers;
    const std::size_t chunk = (good.size() + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(good.size(), lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) order[i] = detail::frobenius_order_on_minimal(b.M, Integer(good[i]));
        });
    }
    for (auto& t : workers) t.join();
    for (int k : {1, 2, 3}) r.counts[k] = 0;
    for (int o : order) ++r.counts[o];
    r.primesExamined = static_cast<long>(good.size());
    for (const auto& [k, c] : r.counts)
        r.observed[k] = r.primesExamined ? static_cast<double>(c) / static_cast<double>(r.primesExamined) : 0.0;

    const auto qs = split_required(b);
    std::vector<std::uint64_t> n1primes;
    for (std::size_t i = 0; i < good.size(); ++i)
        if (order[i] == 3 && good[i] % 8 == 1 && all_residues(Integer(good[i]), qs)) n1primes.push_back(good[i]);
    const std::uint64_t limit = X.get_ui();
    long count = 0;
    // squarefree products of distinct n1primes, at most X
    auto dfs = [&](auto&& self, std::size_t start, std::uint64_t prod) -> void {
        for (std::size_t i = start; i < n1primes.size(); ++i) {
            if (prod * n1primes[i] > limit) break;
            ++count;
            self(self, i + 1, prod * n1primes[i]);
        }
    };
    dfs(dfs, 0, 1);
    r.n1Count = count;
    return r;
}

}  // namespace twistlab
