#pragma once

#include <vector>

#include "polymod.hpp"
#include "twistlab/curve.hpp"

namespace twistlab::detail {

ReductionPlace reduction_on_minimal(const Curve& M, const Integer& p);

/// X^3 + b2 X^2 + 8 b4 X + 16 b6, whose roots are 4x for x a root of the 2-division cubic.
Poly monic_two_division(const Curve& E);

/// Assumes p odd and of good reduction for the minimal model M.
int frobenius_order_on_minimal(const Curve& M, const Integer& p);

std::vector<Integer> integer_roots_monic_cubic(const Poly& f);

/// Number of roots in Z_p of a nonzero integer polynomial without repeated factors.
int padic_root_count(const Poly& f, const Integer& p);

}  // namespace twistlab::detail
