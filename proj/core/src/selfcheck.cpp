#include "rriqa/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rriqa/bkf.hpp"
#include "rriqa/error.hpp"
#include "rriqa/metrics.hpp"
#include "rriqa/quadrature.hpp"
#include "rriqa/tetrolet.hpp"

namespace rriqa {
namespace {

template <typename F>
CheckResult guarded(std::string name, F&& body) {
  CheckResult r{std::move(name), false, {}};
  try {
    std::ostringstream detail;
    r.passed = body(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  std::vector<CheckResult> out;

  out.push_back(guarded("tiling catalog", [](std::ostream& os) {
    const auto cat = enumerate_tilings();
    const auto classes = cat.symmetry_class_count();
    os << cat.size() << " tilings, " << classes << " symmetry classes";
    return cat.size() == 117 && classes == 22 && cat.free_tetromino_count() == 5;
  }));

  out.push_back(guarded("perfect reconstruction", [](std::ostream& os) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 255.0);
    Plane img(64, 64);
    for (auto& v : img.values()) v = u(rng);
    const auto rec = inverse_plane(forward(img, 3));
    double err = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) err = std::max(err, std::abs(rec.values()[i] - img.values()[i]));
    os << "max error " << err;
    return err <= 1e-9;
  }));

  out.push_back(guarded("density normalization", [](std::ostream& os) {
    double worst = 0.0;
    for (double a : {0.3, 1.0, 10.0}) {
      const BkfParams p{a, 1.0};
      const double power = a < 0.75 ? std::max(2.0, 1.0 / a) : 2.0;
      const auto r = integrate_half_line([&](double x) { return pdf(x, p); }, std::sqrt(a), power);
      worst = std::max(worst, std::abs(2.0 * r.value - 1.0));
    }
    os << "max |mass - 1| " << worst;
    return worst <= 1e-4;
  }));

  out.push_back(guarded("L2 closed form", [](std::ostream& os) {
    double worst = 0.0;
    for (const auto& [p1, p2] : {std::pair{BkfParams{0.5, 1.0}, BkfParams{2.0, 4.0}},
                                 std::pair{BkfParams{1.0, 0.5}, BkfParams{0.3, 1.0}}}) {
      const double qd = l2_distance_quadrature(p1, p2);
      worst = std::max(worst, std::abs(l2_distance_closed(p1, p2) - qd) / qd);
    }
    os << "max relative error " << worst;
    return worst <= 1e-5;
  }));

  return out;
}

}  // namespace rriqa
