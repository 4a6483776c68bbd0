#pragma once

// F2[G]-modules for G cyclic of odd prime order.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twistlab/f2.hpp"

namespace twistlab {

/// Polynomial over F2, coefficient of X^i at index i, no trailing zeros.
using F2Poly = std::vector<std::uint8_t>;

std::string f2poly_to_string(const F2Poly& f);  // e.g. "x^2+x+1"

/// Irreducible factors over F2 of a squarefree polynomial (Berlekamp), sorted.
std::vector<F2Poly> berlekamp_factor(const F2Poly& f);

struct CyclicGroupAlgebra {
    unsigned p = 0;
    std::vector<F2Poly> factors;  // irreducible factors of X^{p-1} + ... + 1
    std::vector<unsigned> simpleDims;
};

/// Throws NotOddPrime.
CyclicGroupAlgebra group_algebra(unsigned p);

struct GModule {
    unsigned p = 0;
    BitMatrix action;  // generator, acting on column vectors
    std::size_t dim() const { return action.rows(); }
};

struct Multiplicity {
    F2Poly simple;
    unsigned simpleDim = 0;
    std::size_t multiplicity = 0;
};

struct ModuleSplit {
    std::size_t fixedDim = 0;
    std::size_t newDim = 0;
    std::vector<Multiplicity> multiplicities;
};

/// Throws InvalidAction unless the action is square and A^p = I.
ModuleSplit split_module(const GModule& B);

enum class StabilityVerdict { RankStable, Inconclusive };

StabilityVerdict rank_stability(const std::vector<Multiplicity>& multiplicities);

/// Evaluate f(A).
BitMatrix evaluate(const F2Poly& f, const BitMatrix& A);

/// Companion matrix of f (dim = deg f); a simple module when f is irreducible.
BitMatrix companion(const F2Poly& f);

}  // namespace twistlab
