#pragma once

#include <span>
#include <string>
#include <string_view>

#include "rriqa/bkf.hpp"

namespace rriqa {

struct BandId {
  int level = 1;   // 1 = finest
  int detail = 1;  // 1..3

  friend auto operator<=>(const BandId&, const BandId&) = default;
};

struct BandPair {
  BkfParams ref;
  BkfParams dist;
  BandId band;
};

enum class Measure { Q1, Q2, Q3, Q4, Q5 };

std::string_view to_string(Measure m) noexcept;
// Accepts "q1".."q5" in either case; throws InvalidParams otherwise.
Measure parse_measure(std::string_view name);

struct QualityScore {
  double value = 0.0;
  Measure measure = Measure::Q5;
};

enum class DistanceMethod { ClosedForm, Quadrature };

// Sum of |alpha_r - alpha_d|.
QualityScore q1(std::span<const BandPair> bands);
// Sum of |beta_r - beta_d|.
QualityScore q2(std::span<const BandPair> bands);
// Sum of sqrt(A * R) with A = |alpha_r - alpha_d| and R = A / alpha_r.
QualityScore q3(std::span<const BandPair> bands);
// As q3 on beta.
QualityScore q4(std::span<const BandPair> bands);
// Root-sum-of-squares of the per-band L2 distances between densities.
QualityScore q5(std::span<const BandPair> bands, DistanceMethod method = DistanceMethod::ClosedForm);

QualityScore score(Measure m, std::span<const BandPair> bands);

// Smallest shape for which a BKF density is square integrable is > 1/4.
inline constexpr double kL2AlphaLimit = 0.25;

// sqrt(int (f1 - f2)^2 dx) by adaptive quadrature over the whole line,
// split at the origin. Reference route for the closed form.
double l2_distance_quadrature(const BkfParams& p1, const BkfParams& p2);

// Closed form of the same distance. With xi(a) = Gamma(a - 1/2) / Gamma(a),
// ordered so beta1 <= beta2 and w = 1 - beta1 / beta2,
//   d^2 = (xi(2 a1) / sqrt(b1) + xi(2 a2) / sqrt(b2)
//          - 2 xi(a1 + a2) / sqrt(b1) (b1/b2)^a2 F(a1 + a2 - 1/2, a2; a1 + a2; w)) / sqrt(2 pi).
// The cross term is evaluated through Euler's transformation
//   (b1/b2)^a2 F(a1 + a2 - 1/2, a2; a1 + a2; w) = sqrt(b1/b2) F(1/2, a1; a1 + a2; w),
// whose series terms stay bounded for any shapes.
double l2_distance_closed(const BkfParams& p1, const BkfParams& p2);

}  // namespace rriqa
