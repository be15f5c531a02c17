#pragma once

#include "zetafock/rational.hpp"

namespace zetafock {

/// B_n with the convention B_1 = -1/2, so that B_n(0) = B_n.
/// Values are memoized behind a mutex.
Rational bernoulli_number(long n);

/// B_n(x) = sum_k C(n,k) B_k x^(n-k).
Rational bernoulli_poly(long n, const Rational& x);

/// zeta(-m) = -B_{m+1}/(m+1) for m >= 1.
Rational zeta_negative(long m);

}  // namespace zetafock
