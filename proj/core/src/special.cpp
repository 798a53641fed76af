#include "rriqa/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rriqa/error.hpp"

namespace rriqa {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

// K value carried as mant * exp(log_scale) so the order recurrence and
// large-x underflow never lose the result.
struct ScaledK {
  double mant = 0.0;
  double log_scale = 0.0;
};

// (1/Gamma(1 - mu) - 1/Gamma(1 + mu)) / (2 mu) and the matching half sum.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
  gampl = 1.0 / std::tgamma(1.0 + mu);
  gammi = 1.0 / std::tgamma(1.0 - mu);
  if (std::abs(mu) < 1e-2) {
    // Taylor coefficients of 1/Gamma(1 + z): odd part only.
    const double m2 = mu * mu;
    gam1 = -(0.57721566490153286 +
             m2 * (-0.042002635034095236 + m2 * (-0.042197734555544337 + m2 * 0.0072189432466630995)));
  } else {
    gam1 = (gammi - gampl) / (2.0 * mu);
  }
  gam2 = 0.5 * (gammi + gampl);
}

// K_mu and K_{mu+1} for |mu| <= 1/2.
void k_pair(double mu, double x, ScaledK& kmu, double& ratio) {
  const double mu2 = mu * mu;
  if (x <= 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 10000; ++i) {
      const double di = i;
      ff = (di * ff + p + q) / (di * di - mu2);
      c *= d / di;
      p /= di - mu;
      q /= di + mu;
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - di * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    kmu = {sum, 0.0};
    ratio = sum1 * (2.0 / x) / sum;
    return;
  }

  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  kmu = {std::sqrt(kPi / (2.0 * x)) / s, -x};
  ratio = (mu + x + 0.5 - h) / x;
}

ScaledK scaled_bessel_k(double nu, double x) {
  if (std::isnan(nu) || std::isnan(x) || x < 0.0 || !std::isfinite(nu)) {
    throw Error(ErrorCode::DomainError, "bessel_k(" + std::to_string(nu) + ", " + std::to_string(x) + ")");
  }
  nu = std::abs(nu);
  const double nl = std::floor(nu + 0.5);
  const double mu = nu - nl;

  ScaledK k;
  double ratio;
  k_pair(mu, x, k, ratio);

  // Upward recurrence on the ratio r = K_{m+1} / K_m, which obeys
  // r' = 2 (m + 1) / x + 1 / r. Large factors go straight to the log scale.
  const double xi2 = 2.0 / x;
  const auto steps = static_cast<long>(nl);
  double r = ratio;
  for (long i = 1; i <= steps; ++i) {
    if (r > 1e100) {
      k.log_scale += std::log(r);
    } else {
      k.mant *= r;
      if (k.mant > 1e150) {
        k.log_scale += std::log(k.mant);
        k.mant = 1.0;
      }
    }
    r = (mu + static_cast<double>(i)) * xi2 + 1.0 / r;
  }
  return k;
}

}  // namespace

double bessel_k(double nu, double x) {
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  const auto k = scaled_bessel_k(nu, x);
  return k.mant * std::exp(k.log_scale);
}

double log_bessel_k(double nu, double x) {
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  const auto k = scaled_bessel_k(nu, x);
  return std::log(k.mant) + k.log_scale;
}

SignedLogGamma signed_lgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return {std::numeric_limits<double>::infinity(), 0};
  SignedLogGamma out;
  out.log_abs = std::lgamma(x);
  if (x < 0.0) out.sign = static_cast<long long>(std::floor(x)) % 2 == 0 ? 1 : -1;
  return out;
}

namespace {

bool nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// Gamma(n1) Gamma(n2) / (Gamma(d1) Gamma(d2)); zero when a denominator
// argument is a pole.
double gamma_ratio(double n1, double n2, double d1, double d2) {
  const auto a = signed_lgamma(n1), b = signed_lgamma(n2), c = signed_lgamma(d1), d = signed_lgamma(d2);
  if (c.sign == 0 || d.sign == 0) return 0.0;
  if (a.sign == 0 || b.sign == 0) {
    throw Error(ErrorCode::HypergeometricDivergence, "gamma pole in connection coefficient");
  }
  return a.sign * b.sign * c.sign * d.sign * std::exp(a.log_abs + b.log_abs - c.log_abs - d.log_abs);
}

struct SeriesResult {
  double value = 0.0;
  bool converged = false;
};

SeriesResult gauss_series(double a, double b, double c, double z, long max_terms) {
  double term = 1.0, sum = 1.0;
  for (long n = 0; n < max_terms; ++n) {
    const double dn = static_cast<double>(n);
    const double num = (a + dn) * (b + dn);
    if (num == 0.0) return {sum, true};
    const double den = (c + dn) * (dn + 1.0);
    term *= num / den * z;
    sum += term;
    if (!std::isfinite(sum)) return {sum, false};
    // Geometric bound on the tail once the term ratio is below one.
    const double r = std::max(std::abs(num * z / den), std::abs(z));
    if (r < 1.0 && std::abs(term) * r <= kEps * (1.0 - r) * std::abs(sum)) return {sum, true};
  }
  return {sum, false};
}

double series_or_throw(double a, double b, double c, double z) {
  const auto r = gauss_series(a, b, c, z, 200000);
  if (!r.converged) {
    throw Error(ErrorCode::NoConvergence, "2F1 series at z = " + std::to_string(z));
  }
  return r.value;
}

// z -> 1 - z connection formula; requires c - a - b non-integer.
double connection_generic(double a, double b, double c, double z) {
  const double s = c - a - b;
  const double w = 1.0 - z;
  double out = 0.0;
  const double g1 = gamma_ratio(c, s, c - a, c - b);
  if (g1 != 0.0) out += g1 * series_or_throw(a, b, 1.0 - s, w);
  const double g2 = gamma_ratio(c, -s, a, b);
  if (g2 != 0.0) out += g2 * std::pow(w, s) * series_or_throw(c - a, c - b, 1.0 + s, w);
  return out;
}

// For c - a - b within kNearInt of an integer the connection coefficients
// blow up and cancel. 2F1 is analytic in c there, so interpolate through
// well-separated neighbours c' = a + b + m + k h.
constexpr double kNearInt = 1e-3;
constexpr double kStep = 1e-2;

double connection(double a, double b, double c, double z) {
  const double s = c - a - b;
  const double m = std::round(s);
  const double delta = s - m;
  if (std::abs(delta) >= kNearInt) return connection_generic(a, b, c, z);

  const double base = a + b + m;
  constexpr std::array<double, 6> symmetric{-3, -2, -1, 1, 2, 3};
  constexpr std::array<double, 6> one_sided{1, 2, 3, 4, 5, 6};
  const auto& nodes = base - 3.5 * kStep > 0.0 ? symmetric : one_sided;
  std::array<double, 6> values{};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    values[i] = connection_generic(a, b, base + nodes[i] * kStep, z);
  }
  const double t = delta / kStep;
  double out = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double li = 1.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j != i) li *= (t - nodes[j]) / (nodes[i] - nodes[j]);
    }
    out += li * values[i];
  }
  return out;
}

// 0 < z < 1.
double unit_interval(double a, double b, double c, double z) {
  if (z <= 0.5) return series_or_throw(a, b, c, z);
  const auto direct = gauss_series(a, b, c, z, 4000);
  if (direct.converged) return direct.value;
  return connection(a, b, c, z);
}

}  // namespace

double hypergeometric_2f1(double a, double b, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
    throw Error(ErrorCode::DomainError, "2F1 arguments must be finite");
  }
  if (nonpositive_integer(c)) {
    throw Error(ErrorCode::DomainError, "2F1 with c = " + std::to_string(c));
  }
  if (z == 0.0) return 1.0;
  if (nonpositive_integer(a) || nonpositive_integer(b)) {
    if (z > 1.0) throw Error(ErrorCode::DomainError, "2F1 requires z <= 1");
    return series_or_throw(a, b, c, z);
  }
  if (z >= 1.0) {
    if (z == 1.0 && c - a - b > 0.0) return gamma_ratio(c, c - a - b, c - a, c - b);
    throw Error(ErrorCode::DomainError, "2F1 requires z < 1, got " + std::to_string(z));
  }
  if (std::abs(z) <= 0.5) return series_or_throw(a, b, c, z);
  if (z < -0.5) {
    // Pfaff: F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1)).
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * (nonpositive_integer(c - b) ? series_or_throw(a, c - b, c, w)
                                                                : unit_interval(a, c - b, c, w));
  }
  return unit_interval(a, b, c, z);
}

}  // namespace rriqa
