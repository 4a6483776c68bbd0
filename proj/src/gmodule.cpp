#include "twistlab/gmodule.hpp"

#include <algorithm>

#include "twistlab/arith.hpp"

namespace twistlab {

namespace {

void trim(F2Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const F2Poly& f) { return static_cast<int>(f.size()) - 1; }

F2Poly mul(const F2Poly& a, const F2Poly& b) {
    if (a.empty() || b.empty()) return {};
    F2Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= b[j];
    trim(r);
    return r;
}

void divmod(F2Poly a, const F2Poly& b, F2Poly& q, F2Poly& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (deg(a) >= deg(b)) {
        const int shift = deg(a) - deg(b);
        q[shift] = 1;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] ^= b[i];
        trim(a);
    }
    trim(q);
    r = a;
}

F2Poly mod(const F2Poly& a, const F2Poly& b) {
    F2Poly q, r;
    divmod(a, b, q, r);
    return r;
}

F2Poly gcd(F2Poly a, F2Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        F2Poly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

std::string f2poly_to_string(const F2Poly& f) {
    if (f.empty()) return "0";
    std::string s;
    for (int i = deg(f); i >= 0; --i) {
        if (!f[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0) s += "1";
        else if (i == 1) s += "x";
        else s += "x^" + std::to_string(i);
    }
    return s;
}

std::vector<F2Poly> berlekamp_factor(const F2Poly& f_in) {
    F2Poly f = f_in;
    trim(f);
    const int n = deg(f);
    if (n <= 1) return {f};
    BitMatrix M(n, n);
    F2Poly xi{1};
    for (int i = 0; i < n; ++i) {
        F2Poly sq = mod(mul(xi, xi), f);
        for (int j = 0; j < static_cast<int>(sq.size()); ++j)
            if (sq[j]) M.row(j).flip(i);
        M.row(i).flip(i);
        xi = mod(mul(xi, F2Poly{0, 1}), f);
    }
    const auto kernel = M.kernel();
    const std::size_t k = kernel.size();
    std::vector<F2Poly> factors{f};
    for (const auto& v : kernel) {
        if (factors.size() == k) break;
        F2Poly g(n, 0);
        for (int i = 0; i < n; ++i) g[i] = v.get(i);
        trim(g);
        if (deg(g) <= 0) continue;
        std::vector<F2Poly> next;
        for (const auto& h : factors) {
            if (deg(h) <= 1) {
                next.push_back(h);
                continue;
            }
            F2Poly a = gcd(h, g);
            if (deg(a) > 0 && deg(a) < deg(h)) {
                F2Poly q, r;
                divmod(h, a, q, r);
                next.push_back(a);
                next.push_back(q);
            } else {
                next.push_back(h);
            }
        }
        factors = std::move(next);
    }
    std::sort(factors.begin(), factors.end(), [](const F2Poly& a, const F2Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return factors;
}

CyclicGroupAlgebra group_algebra(unsigned p) {
    if (p < 3 || !is_probable_prime(Integer(p))) throw Error(ErrorCode::NotOddPrime, std::to_string(p) + " is not an odd prime");
    CyclicGroupAlgebra g;
    g.p = p;
    g.factors = berlekamp_factor(F2Poly(p, 1));
    for (const auto& f : g.factors) g.simpleDims.push_back(static_cast<unsigned>(deg(f)));
    return g;
}

BitMatrix evaluate(const F2Poly& f, const BitMatrix& A) {
    const std::size_t n = A.rows();
    BitMatrix R(n, n);
    const BitMatrix I = BitMatrix::identity(n);
    for (int i = deg(f); i >= 0; --i) {
        R = R * A;
        if (f[i]) R = R + I;
    }
    return R;
}

BitMatrix companion(const F2Poly& f) {
    const int m = deg(f);
    BitMatrix C(m, m);
    for (int i = 0; i + 1 < m; ++i) C.set(i + 1, i);
    for (int j = 0; j < m; ++j)
        if (f[j]) C.set(j, m - 1);
    return C;
}

ModuleSplit split_module(const GModule& B) {
    const BitMatrix& A = B.action;
    if (A.rows() != A.cols()) throw Error(ErrorCode::InvalidAction, "action matrix is not square");
    const CyclicGroupAlgebra g = group_algebra(B.p);
    const std::size_t n = A.rows();
    if (!(A.pow(B.p) == BitMatrix::identity(n))) throw Error(ErrorCode::InvalidAction, "A^p is not the identity");
    ModuleSplit s;
    s.fixedDim = n - (A + BitMatrix::identity(n)).rank();
    s.newDim = n - s.fixedDim;
    for (const auto& pi : g.factors) {
        const std::size_t kernel_dim = n - evaluate(pi, A).rank();
        Multiplicity m;
        m.simple = pi;
        m.simpleDim = static_cast<unsigned>(deg(pi));
        m.multiplicity = kernel_dim / m.simpleDim;
        s.multiplicities.push_back(m);
    }
    return s;
}

StabilityVerdict rank_stability(const std::vector<Multiplicity>& multiplicities) {
    if (multiplicities.empty()) return StabilityVerdict::RankStable;
    for (const auto& m : multiplicities)
        if (m.multiplicity == 0) return StabilityVerdict::RankStable;
    return StabilityVerdict::Inconclusive;
}

}  // namespace twistlab
