#include "rispath/radiation.hpp"

#include <cmath>

#include "rispath/errors.hpp"
#include "rispath/units.hpp"

namespace rispath {

namespace {

double ipow(double base, int e) {
  double out = 1.0;
  double b = base;
  for (; e > 0; e >>= 1) {
    if (e & 1) out *= b;
    b *= b;
  }
  return out;
}

}  // namespace

CosinePattern::CosinePattern(double exponent) : exponent_(exponent) {
  if (!(exponent >= 0.0)) throw ValidationError("pattern exponent must be >= 0");
  const double r = std::round(exponent);
  int_exponent_ = (r == exponent && r <= 1024.0) ? static_cast<int>(r) : -1;
}

double CosinePattern::value_from_cos(double cos_theta) const {
  if (cos_theta < 0.0) return 0.0;  // back hemisphere
  if (int_exponent_ >= 0) return ipow(cos_theta, int_exponent_);
  return std::pow(cos_theta, exponent_);
}

double pattern_value(const CosinePattern& p, double theta_rad) {
  if (!(theta_rad >= 0.0 && theta_rad <= kPi)) {
    throw ValidationError("pattern elevation must lie in [0, pi]");
  }
  if (theta_rad > kPi / 2.0) return 0.0;
  return p.value_from_cos(std::cos(theta_rad));
}

double gain_from_pattern(const CosinePattern& p) {
  // Composite Simpson over [0, pi/2] of cos^alpha(t) sin(t); the back
  // hemisphere contributes nothing. 8192 intervals keep the quadrature within
  // 1e-6 relative of the closed form up to alpha = 62 (trapezoid at the same
  // count does not).
  constexpr int kIntervals = 8192;
  const double h = (kPi / 2.0) / kIntervals;
  auto f = [&p](double t) { return p.value_from_cos(std::cos(t)) * std::sin(t); };
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < kIntervals; i += 2) odd += f(i * h);
  for (int i = 2; i < kIntervals; i += 2) even += f(i * h);
  const double integral = h / 3.0 * (f(0.0) + f(kPi / 2.0) + 4.0 * odd + 2.0 * even);
  return 4.0 * kPi / (kTwoPi * integral);
}

double cosine_gain_closed_form(double alpha) { return 2.0 * (alpha + 1.0); }

double mainlobe_halfwidth(const CosinePattern& p) {
  if (p.exponent() == 0.0) return kPi / 2.0;
  return std::acos(std::pow(2.0, -1.0 / p.exponent()));
}

AntennaSpec make_antenna(double alpha, double gain_linear) {
  AntennaSpec a;
  a.pattern = CosinePattern(alpha);
  a.gain = gain_linear;
  if (!(a.gain > 0.0)) throw ValidationError("antenna gain must be positive");
  return a;
}

AntennaSpec make_antenna(double alpha) {
  return make_antenna(alpha, cosine_gain_closed_form(alpha));
}

double combined_pattern_factor(const AntennaSpec& tx, const AntennaSpec& rx,
                               const CosinePattern& cell_pattern, const Point3& cell) {
  const double rt = cell_distance(tx.position, cell);
  const double rr = cell_distance(rx.position, cell);
  if (rt == 0.0 || rr == 0.0) throw ValidationError("terminal coincides with the cell");
  const double f_tx = tx.pattern.value_from_cos(cos_offboresight(tx.position, tx.boresight_target, cell));
  const double f_t = cell_pattern.value_from_cos((tx.position.z - cell.z) / rt);
  const double f_r = cell_pattern.value_from_cos((rx.position.z - cell.z) / rr);
  const double f_rx = rx.pattern.value_from_cos(cos_offboresight(rx.position, rx.boresight_target, cell));
  return f_tx * f_t * f_r * f_rx;
}

}  // namespace rispath
