#pragma once

// Scalar special functions used by the certification engine and the
// statistical tests. All functions are pure and thread-safe.

#include <cstdint>

namespace rslab {

double normal_pdf(double x);

// Φ(x), computed through erfc so the lower tail keeps relative precision.
double normal_cdf(double x);

// 1 - Φ(x) without cancellation.
double normal_sf(double x);

// Φ⁻¹(p) for p in (0,1): rational starting point refined by two Newton
// steps on Φ. Throws DomainError outside (0,1).
double normal_quantile(double p);

// log Γ(x) for x > 0 (reentrant).
double log_gamma(double x);

// Q(s, x) = Γ(s, x) / Γ(s): series below x = s + 1, continued fraction
// above. Throws DomainError for s <= 0 or x < 0, NumericError when the
// expansion fails to converge.
double reg_inc_gamma_upper(double s, double x);
double reg_inc_gamma_lower(double s, double x);

// Survival function of χ² with `dof` degrees of freedom.
double chi2_sf(double x, double dof);

// I_x(a, b), the regularised incomplete beta function.
double reg_inc_beta(double a, double b, double x);

// P(X >= k) for X ~ Binomial(n, p), summed term by term in log space.
// Intended as a brute-force reference, not for speed.
double binom_tail_ge(std::int64_t k, std::int64_t n, double p);

}  // namespace rslab
