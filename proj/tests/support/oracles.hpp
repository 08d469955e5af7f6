#pragma once

// Reference computations used only by the tests. They deliberately avoid the
// library's own routines: quadrature instead of closed forms, O(n^2) sums
// instead of FFTs, and std::mt19937_64 draws instead of RngStream.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace oracle {

/// Adaptive Gauss-Kronrod quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b);

/// Integral over [a, +inf).
double integrate_to_inf(const std::function<double(double)>& f, double a);

double normal_pdf(double w);
double student_t_pdf(double w, double dof);
double laplace_pdf(double w, double b);

/// Student-t CDF by integrating the density.
double student_t_cdf(double w, double dof);

/// Q(u) = integral of the standard normal density over [u, u + 40].
double q_function(double u);

/// Euler integral
///   2F1(a, b; c; z) = G(c) / (G(b) G(c-b)) int_0^1 t^(b-1) (1-t)^(c-b-1) (1-zt)^(-a) dt,
/// valid for c > b > 0.
double hypergeometric_euler(double a, double b, double c, double z);

/// Partial sum of the Pochhammer series in long double.
long double hypergeometric_series(double a, double b, double c, double z, int terms);

/// O(n^2) orthonormal DCT-II.
std::vector<double> direct_dct(std::span<const double> x);

/// Mean and standard error of n draws of f(rng).
struct McEstimate {
  double mean;
  double stderr_;
};
McEstimate monte_carlo(std::size_t n, std::uint64_t seed,
                       const std::function<double(std::mt19937_64&)>& f);

double draw_laplace(std::mt19937_64& rng, double b);

}  // namespace oracle
