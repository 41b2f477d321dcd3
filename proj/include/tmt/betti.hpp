#pragma once

#include "tmt/polyseries.hpp"
#include "tmt/rational.hpp"

#include <vector>

namespace tmt::betti {

/// Default truncation for the degree-2(n-3) moduli formulas; long enough that a
/// non-vanishing tail shows up as a test failure rather than being cut silently.
int default_truncation(int n);

/// Poincare polynomial of the n-marked genus-zero SU(2) moduli space in the first
/// chamber, as a GIT quotient of (P^1)^n:
///   (1+t^2)^n (1-t^4)^{-1} - sum_{n/2 < r <= n} C(n,r) t^{2(r-1)} (1-t^2)^{-1}.
/// Only odd n is accepted; even n sits on a wall and the series does not terminate.
PolySeries kirwan_poincare(int n, int truncation);

/// Second-chamber (mu = 1/4) Poincare polynomial via the Atiyah-Bott stratification:
///   (1+t^2)^n (1-t^2)^{-1} (1-t^4)^{-1} - 2^{n-1} t^{n-1} (1-t^2)^{-2}.
PolySeries ab_poincare(int n, int truncation);

/// Gaussian multinomial [r]_q! / prod [m_i]_q! with q = t^2: the Poincare
/// polynomial of the partial flag variety with the given block sizes.
PolySeries flag_poincare(const std::vector<int>& multiplicities);

enum class Chamber { D4, D5, Empty, Wall };
const char* chamber_name(Chamber c);

/// Chamber of M_5(mu) for SU(2): walls at 0, 1/5, 2/5; empty past 2/5.
Chamber chamber_report(const Rational& mu);

/// H(CP^{r-1}) = 1 + t^2 + ... + t^{2(r-1)}.
PolySeries unknot_hf(int r);

}  // namespace tmt::betti
