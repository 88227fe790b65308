#pragma once

#include <span>
#include <vector>

#include "nia/interval_set.h"
#include "nia/polynomial.h"
#include "nia/term_store.h"

namespace nia {

/// 1 + ceil(max_i |c_i| / |c_d|): every real root has absolute value below it.
/// `coeffs` are low-to-high with a nonzero leading entry.
Integer cauchy_bound(std::span<const Integer> coeffs);

/// Number of distinct real roots in (a, b] by Sturm's theorem.
std::size_t count_real_roots(std::span<const Integer> coeffs, const Integer& a, const Integer& b);

/// The set of integers v with p(v) rel 0, where p is given by its low-to-high
/// coefficients. Exact: real roots are isolated with Sturm sequences down to
/// unit-width integer brackets and the sign between brackets is evaluated.
IntervalSet solve_univariate(std::span<const Integer> coeffs, Relation rel);

/// Same for a polynomial whose only variable (if any) is `v`.
IntervalSet solve_univariate(const Polynomial& p, VarId v, Relation rel);

}  // namespace nia
