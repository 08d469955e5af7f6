#pragma once

namespace mpe {

/// Upper-tail probability of the standard normal, Q(u) = P(Z > u).
double q_function(double u);

/// Gauss hypergeometric function 2F1(a, b; c; z) for z <= 0.
///
/// Uses the Pochhammer series for |z| <= 0.5 and linear transformation
/// identities below that: the incomplete-beta complement when c = a + 1 or
/// c = b + 1, otherwise the 1/(1 - z) connection formula. Relative accuracy
/// is about 1e-12 in the supported region. Throws DomainError for z > 0 or
/// c a nonpositive integer and NumericError when a series hits its cap.
double hypergeometric_2f1(double a, double b, double c, double z);

/// CDF of the standard Student-t distribution with `dof` degrees of
/// freedom, evaluated through the hypergeometric representation.
double student_t_cdf(double w, double dof);

/// P(X <= theta) for X non-central chi-square with k degrees of freedom
/// and non-centrality lambda_nc.
///
/// Poisson mixture of central chi-square CDFs, summed outward from the
/// modal Poisson index until the bound on the remaining terms falls below
/// 1e-16 of the running sum.
double noncentral_chi2_cdf(double theta, int k, double lambda_nc);

/// P(X > theta), summed from upper incomplete gamma terms so that small
/// tail probabilities keep their relative accuracy.
double noncentral_chi2_sf(double theta, int k, double lambda_nc);

/// Regularized lower incomplete gamma P(s, x).
double regularized_gamma_p(double s, double x);

}  // namespace mpe
