#include "mpe/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "mpe/error.hpp"

namespace mpe {
namespace {

constexpr std::size_t kSeriesCap = 1'000'000;
// Truncation stops once the remaining terms are below this fraction of the sum.
constexpr double kPoissonTail = 1e-16;
constexpr double kTiny = std::numeric_limits<double>::min();

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-8; }

struct SeriesValue {
  double value;
  // Sum of |terms| relative to |value|: how much cancellation occurred.
  double condition;
};

// sum_k (a)_k (b)_k / ((c)_k k!) z^k, valid for |z| < 1 or a terminating series.
SeriesValue pochhammer_series(double a, double b, double c, double z) {
  long double term = 1.0L;
  long double sum = 1.0L;
  long double abs_sum = 1.0L;
  for (std::size_t k = 0; k < kSeriesCap; ++k) {
    const long double kk = static_cast<long double>(k);
    const long double ratio = (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0L)) * z;
    term *= ratio;
    sum += term;
    abs_sum += std::fabs(term);
    if (term == 0.0L) break;
    // Once consecutive ratios stay below 1 the tail is bounded geometrically.
    const long double next = std::fabs((a + kk + 1) * (b + kk + 1) /
                                       ((c + kk + 1) * (kk + 2.0L)) * z);
    if (next < 1.0L) {
      const long double tail = std::fabs(term) * next / (1.0L - next);
      if (tail <= 1e-19L * std::fabs(sum) || tail == 0.0L) {
        const double value = static_cast<double>(sum);
        return {value, value == 0.0 ? HUGE_VAL : static_cast<double>(abs_sum / std::fabs(sum))};
      }
    }
    if (k + 1 == kSeriesCap) break;
  }
  if (term == 0.0L) {
    const double value = static_cast<double>(sum);
    return {value, value == 0.0 ? HUGE_VAL : static_cast<double>(abs_sum / std::fabs(sum))};
  }
  std::ostringstream msg;
  msg << "hypergeometric series did not converge within " << kSeriesCap
      << " terms (a=" << a << ", b=" << b << ", c=" << c << ", z=" << z
      << ", last term=" << static_cast<double>(term) << ")";
  throw NumericError(msg.str());
}

// log|Gamma(x)| and its sign; sign 0 at the poles.
struct SignedLogGamma {
  double log_abs;
  int sign;
};

SignedLogGamma signed_lgamma(double x) {
  if (is_nonpositive_integer(x)) return {HUGE_VAL, 0};
  int sign = 1;
  const double value = ::lgamma_r(x, &sign);
  return {value, sign};
}

// Gamma(n1) Gamma(n2) / (Gamma(d1) Gamma(d2)); zero when a denominator has a pole.
double gamma_ratio(double n1, double n2, double d1, double d2) {
  const auto gn1 = signed_lgamma(n1);
  const auto gn2 = signed_lgamma(n2);
  const auto gd1 = signed_lgamma(d1);
  const auto gd2 = signed_lgamma(d2);
  if (gd1.sign == 0 || gd2.sign == 0) return 0.0;
  if (gn1.sign == 0 || gn2.sign == 0) {
    throw NumericError("hypergeometric connection formula hit a Gamma pole");
  }
  const int sign = gn1.sign * gn2.sign * gd1.sign * gd2.sign;
  return sign * std::exp(gn1.log_abs + gn2.log_abs - gd1.log_abs - gd2.log_abs);
}

// Better-conditioned of the two Pfaff forms, zeta = z / (z - 1) in (0, 1):
//   (1-z)^{-a} F(a, c-b; c; zeta)  and  (1-z)^{-b} F(c-a, b; c; zeta).
SeriesValue pfaff(double a, double b, double c, double z) {
  const double zeta = z / (z - 1.0);
  const double log1mz = std::log1p(-z);
  SeriesValue first = pochhammer_series(a, c - b, c, zeta);
  first.value *= std::exp(-a * log1mz);
  SeriesValue second = pochhammer_series(c - a, b, c, zeta);
  second.value *= std::exp(-b * log1mz);
  return first.condition <= second.condition ? first : second;
}

// c = a + 1 with b - a > 0 and a > 0: through the incomplete beta function,
//   F(a, b; a+1; z) = a (-z)^{-a} [B(a, b-a) - B_{1-zeta}(b-a, a)],
//   B_y(p, q) = y^p / p F(p, 1-q; p+1; y),  1 - zeta = 1 / (1 - z).
double incomplete_beta_route(double a, double b, double z) {
  const double q = b - a;
  const double y = 1.0 / (1.0 - z);
  const double complete = std::exp(std::lgamma(a) + std::lgamma(q) - std::lgamma(a + q));
  const double partial =
      std::exp(q * std::log(y)) / q * pochhammer_series(q, 1.0 - a, q + 1.0, y).value;
  return a * std::exp(-a * std::log(-z)) * (complete - partial);
}

// 1/(1-z) connection formula, b - a not an integer.
double connection_route(double a, double b, double c, double z) {
  const double y = 1.0 / (1.0 - z);
  const double log1mz = std::log1p(-z);
  const double first = gamma_ratio(c, b - a, b, c - a) * std::exp(-a * log1mz) *
                       pochhammer_series(a, c - b, a - b + 1.0, y).value;
  const double second = gamma_ratio(c, a - b, a, c - b) * std::exp(-b * log1mz) *
                        pochhammer_series(b, c - a, b - a + 1.0, y).value;
  return first + second;
}

}  // namespace

double q_function(double u) {
  if (!std::isfinite(u)) throw DomainError("q_function: argument must be finite");
  return 0.5 * std::erfc(u / std::numbers::sqrt2);
}

double hypergeometric_2f1(double a, double b, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
    throw DomainError("hypergeometric_2f1: arguments must be finite");
  }
  if (z > 0.0) throw DomainError("hypergeometric_2f1: z must be <= 0");
  if (is_nonpositive_integer(c)) {
    throw DomainError("hypergeometric_2f1: c must not be a nonpositive integer");
  }
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    return pochhammer_series(a, b, c, z).value;
  }
  if (z >= -0.5) {
    const SeriesValue direct = pochhammer_series(a, b, c, z);
    const SeriesValue transformed = pfaff(a, b, c, z);
    return direct.condition <= transformed.condition ? direct.value : transformed.value;
  }
  if (z >= -1.0) return pfaff(a, b, c, z).value;  // zeta <= 1/2

  if (c == a + 1.0 && a > 0.0 && b > a) return incomplete_beta_route(a, b, z);
  if (c == b + 1.0 && b > 0.0 && a > b) return incomplete_beta_route(b, a, z);
  if (!near_integer(b - a)) return connection_route(a, b, c, z);
  return pfaff(a, b, c, z).value;
}

double student_t_cdf(double w, double dof) {
  if (!(dof > 0.0) || !std::isfinite(dof)) throw DomainError("student_t_cdf: dof must be > 0");
  if (std::isnan(w)) throw DomainError("student_t_cdf: argument is NaN");
  if (w == 0.0) return 0.5;
  const double aw = std::abs(w);
  if (aw > std::sqrt(dof)) {
    // Tail form, free of the cancellation in 1/2 + w C 2F1 for large |w|:
    //   F(-|w|) = x^(v/2) (1-x)^(-1/2) / ((v/2) B(v/2, 1/2)) 2F1(1, 1/2; v/2+1; -v/w^2),
    // with x = v / (v + w^2).
    const double r = dof / aw / aw;
    const double log1p_r = std::log1p(r);
    const double log_x = std::log(dof) - 2.0 * std::log(aw) - log1p_r;
    const double log_beta = std::lgamma(0.5 * dof) + std::lgamma(0.5) - std::lgamma(0.5 * (dof + 1.0));
    const double log_pref = 0.5 * dof * log_x + 0.5 * log1p_r - std::log(0.5 * dof) - log_beta;
    const double lower = 0.5 * std::exp(log_pref) * hypergeometric_2f1(1.0, 0.5, 0.5 * dof + 1.0, -r);
    return w < 0.0 ? lower : 1.0 - lower;
  }
  const double z = -w * w / dof;
  const double scale = std::exp(std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof)) /
                       std::sqrt(dof * std::numbers::pi);
  const double value = 0.5 + w * scale * hypergeometric_2f1(0.5, 0.5 * (dof + 1.0), 1.5, z);
  return std::clamp(value, 0.0, 1.0);
}

double regularized_gamma_p(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0)) throw DomainError("regularized_gamma_p: need s > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(s, x);
}

namespace {

// sum_m Pois(m; lambda/2) T(k/2 + m, theta/2), where T is the regularized
// lower (upper = false) or upper incomplete gamma. Weights and T follow O(1)
// recurrences outward from the modal index:
//   P(s + 1, x) = P(s, x) - g(s),  Q(s + 1, x) = Q(s, x) + g(s),
//   g(s) = x^s e^{-x} / Gamma(s + 1).
double poisson_gamma_mixture(double theta, int k, double lambda_nc, bool upper) {
  const double x = 0.5 * theta;
  const double inv_x = 1.0 / x;
  const double half_k = 0.5 * k;
  const double mu = 0.5 * lambda_nc;
  const double inv_mu = 1.0 / mu;
  const double log_x = std::log(x);
  const double m0 = std::floor(mu);
  const double w0 = std::exp(-mu + m0 * std::log(mu) - std::lgamma(m0 + 1.0));
  const double t0 = upper ? boost::math::gamma_q(half_k + m0, x) : boost::math::gamma_p(half_k + m0, x);
  const double log_g0 = (half_k + m0) * log_x - x - std::lgamma(half_k + m0 + 1.0);
  // g is stepped multiplicatively unless it starts near underflow, where a
  // later growth phase would otherwise be lost.
  const bool linear = log_g0 > -600.0;
  // Direction in which T grows: backward for P, forward for Q.
  const double grow_back = upper ? -1.0 : 1.0;

  long double sum = static_cast<long double>(w0) * t0;
  std::size_t terms = 1;
  {
    double w = w0;
    double t = t0;
    double log_g = log_g0;
    double g = std::exp(log_g0);
    for (double m = m0 - 1.0; m >= 0.0; m -= 1.0) {
      const double s_next = half_k + m + 1.0;
      w *= (m + 1.0) * inv_mu;
      if (linear) {
        g *= s_next * inv_x;  // g(s - 1) = g(s) s / x
      } else {
        log_g += std::log(s_next) - log_x;
        g = std::exp(log_g);
      }
      t = std::clamp(t + grow_back * g, 0.0, 1.0);
      sum += static_cast<long double>(w) * t;
      // Remaining weights fall geometrically with ratio at most m / mu.
      const double r = m * inv_mu;
      const double bound = upper ? t : 1.0;
      if (w * bound * r / (1.0 - r) < kPoissonTail * static_cast<double>(sum) + kTiny) break;
      if (++terms > kSeriesCap) throw NumericError("noncentral chi-square: series cap exceeded");
    }
  }
  {
    double w = w0;
    double t = t0;
    double log_g = log_g0;
    double g = std::exp(log_g0);
    for (double m = m0 + 1.0;; m += 1.0) {
      w *= mu / m;
      t = std::clamp(t - grow_back * g, 0.0, 1.0);
      if (linear) {
        g *= x / (half_k + m);  // g(s + 1) = g(s) x / (s + 1)
      } else {
        log_g += log_x - std::log(half_k + m);
        g = std::exp(log_g);
      }
      sum += static_cast<long double>(w) * t;
      const double r = mu / (m + 1.0);
      const double bound = upper ? 1.0 : t;
      if (r < 1.0 && w * bound * r / (1.0 - r) < kPoissonTail * static_cast<double>(sum) + kTiny) {
        break;
      }
      if (++terms > kSeriesCap) throw NumericError("noncentral chi-square: series cap exceeded");
    }
  }
  return std::clamp(static_cast<double>(sum), 0.0, 1.0);
}

// Chernoff bound on P(X <= theta) for theta below the mean k + lambda:
//   min_t exp(t theta) E[e^{-tX}],  E[e^{-tX}] = exp(-lambda t / u) u^{-k/2},  u = 1 + 2t,
// minimized at u = (k + sqrt(k^2 + 4 theta lambda)) / (2 theta). Returns 1 otherwise.
double lower_tail_bound(double theta, int k, double lambda_nc) {
  if (theta >= k + lambda_nc) return 1.0;
  const double u = (k + std::sqrt(static_cast<double>(k) * k + 4.0 * theta * lambda_nc)) / (2.0 * theta);
  const double t = 0.5 * (u - 1.0);
  return std::exp(t * theta - lambda_nc * t / u - 0.5 * k * std::log(u));
}

void check_noncentral_args(double theta, int k, double lambda_nc) {
  if (!std::isfinite(theta) || !std::isfinite(lambda_nc)) {
    throw DomainError("noncentral chi-square: arguments must be finite");
  }
  if (k < 1) throw DomainError("noncentral chi-square: k must be >= 1");
  if (lambda_nc < 0.0) throw DomainError("noncentral chi-square: lambda must be >= 0");
}

}  // namespace

double noncentral_chi2_cdf(double theta, int k, double lambda_nc) {
  check_noncentral_args(theta, k, lambda_nc);
  if (theta <= 0.0) return 0.0;
  if (lambda_nc == 0.0) return regularized_gamma_p(0.5 * k, 0.5 * theta);
  return poisson_gamma_mixture(theta, k, lambda_nc, false);
}

double noncentral_chi2_sf(double theta, int k, double lambda_nc) {
  check_noncentral_args(theta, k, lambda_nc);
  if (theta <= 0.0) return 1.0;
  if (lambda_nc == 0.0) return boost::math::gamma_q(0.5 * k, 0.5 * theta);
  // Far in the lower tail 1 - cdf rounds to 1; skips O(sqrt(lambda)) terms.
  if (lower_tail_bound(theta, k, lambda_nc) < 0x1p-54) return 1.0;
  return poisson_gamma_mixture(theta, k, lambda_nc, true);
}

}  // namespace mpe
