#pragma once

namespace tsgkit {

/// Regularized lower incomplete gamma P(a, x); series expansion for
/// x < a + 1, Lentz continued fraction otherwise. Target 1e-14 relative.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction
/// with the usual symmetry switch at x = (a+1)/(a+b+2).
double regularized_beta(double a, double b, double x);

/// Chi-square survival function P(X >= x) with `df` degrees of freedom.
double chi_square_sf(double x, double df);

/// Two-sided Student-t p-value P(|T| >= t) with `df` degrees of freedom.
double student_t_two_sided(double t, double df);

} // namespace tsgkit
