#include "udv/vehicle.hpp"

#include <cmath>
#include <stdexcept>

namespace udv {

namespace {

// K at a given slider position for a symmetric-stiffness candidate k,
// with the a0/b0w split chosen so K(0) = k_center.
double k_at(double slider_y, double k, double k_center,
            const VehicleParams& base) {
  const double m = base.total_mass;
  const double L = base.wheelbase;
  const double split = k_center * L * L * k / m;  // a0 - b0w
  const double a0 = 0.5 * (L + split);
  const double b0w = L - a0;
  const double shift = base.slider_mass * slider_y / m;
  const double a = a0 - shift;
  const double b = b0w + shift;
  return m / (L * L) * (a / k - b / k);
}

}  // namespace

VehicleParams VehicleParams::calibrate(double k_center, double k_target,
                                       double excursion) {
  VehicleParams p;
  // 1-D root-find (bisection) on the common cornering stiffness: for each
  // candidate the a0/b0w split is fixed by K(0) = k_center, and the
  // residual is K(excursion) - k_target.
  double lo = 100.0, hi = 1e6;
  auto residual = [&](double k) {
    return k_at(excursion, k, k_center, p) - k_target;
  };
  if (residual(lo) * residual(hi) > 0.0)
    throw std::runtime_error("vehicle calibration: bracket failure");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (residual(lo) * residual(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  const double k = 0.5 * (lo + hi);
  p.front_stiffness = k;
  p.rear_stiffness = k;
  const double split = k_center * p.wheelbase * p.wheelbase * k / p.total_mass;
  p.nominal_front_dist = 0.5 * (p.wheelbase + split);
  p.nominal_rear_dist = p.wheelbase - p.nominal_front_dist;
  p.validate();
  return p;
}

void VehicleParams::validate() const {
  if (total_mass <= 0.0) throw std::invalid_argument("vehicle: m must be > 0");
  if (wheelbase <= 0.0) throw std::invalid_argument("vehicle: L must be > 0");
  if (std::abs(nominal_front_dist + nominal_rear_dist - wheelbase) > 1e-12)
    throw std::invalid_argument("vehicle: a0 + b0w != L");
}

std::pair<double, double> com_shift(double slider_y,
                                    const VehicleParams& params) {
  const double shift = params.slider_mass * slider_y / params.total_mass;
  const double a = params.nominal_front_dist - shift;
  const double b = params.nominal_rear_dist + shift;
  if (a <= 0.0 || b <= 0.0)
    throw std::domain_error("com_shift: COM outside the wheelbase");
  return {a, b};
}

double stability_factor(double a, double b, const VehicleParams& params) {
  if (params.front_stiffness == 0.0 || params.rear_stiffness == 0.0)
    throw std::domain_error("stability_factor: zero cornering stiffness");
  const double L = params.wheelbase;
  return params.total_mass / (L * L) *
         (a / params.rear_stiffness - b / params.front_stiffness);
}

double yaw_rate_gain(double ux, double K, double L) {
  const double denom = 1.0 + K * ux * ux;
  if (std::abs(denom) < 1e-9)
    throw std::domain_error("yaw_rate_gain: oversteer singularity");
  return (ux / L) / denom;
}

double characteristic_speed(double K) {
  if (K <= 0.0)
    throw std::domain_error("characteristic_speed: requires K > 0");
  return std::sqrt(1.0 / K);
}

std::pair<double, double> steady_state_solve(double delta, double ux,
                                             const VehicleParams& params,
                                             double a, double b) {
  const double k1 = params.front_stiffness;
  const double k2 = params.rear_stiffness;
  const double m = params.total_mass;
  // [k1+k2, (a*k1 - b*k2)/ux - m*ux] [beta]   [k1*delta  ]
  // [a*k1-b*k2, (a^2*k1+b^2*k2)/ux ] [wr  ] = [a*k1*delta]
  const double a11 = k1 + k2;
  const double a12 = (a * k1 - b * k2) / ux - m * ux;
  const double a21 = a * k1 - b * k2;
  const double a22 = (a * a * k1 + b * b * k2) / ux;
  const double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-9 * std::abs(a11 * a22))
    throw std::domain_error("steady_state_solve: singular system");
  const double r1 = k1 * delta;
  const double r2 = a * k1 * delta;
  const double beta = (r1 * a22 - a12 * r2) / det;
  const double wr = (a11 * r2 - r1 * a21) / det;
  return {beta, wr};
}

std::vector<SteadyTestPoint> steady_test_reduce(
    const std::vector<SteadyTestSample>& points, double R0, double L) {
  std::vector<SteadyTestPoint> out;
  out.reserve(points.size());
  constexpr double kRadToDeg = 57.3;
  for (const auto& pt : points) {
    if (pt.yaw_rate == 0.0)
      throw std::domain_error("steady_test_reduce: zero yaw rate");
    SteadyTestPoint r;
    const double R = pt.speed / pt.yaw_rate;
    r.lateral_accel = pt.speed * pt.yaw_rate;
    r.slip_angle_diff = kRadToDeg * L * (1.0 / R0 - 1.0 / R);
    r.k_estimate = r.slip_angle_diff / (kRadToDeg * r.lateral_accel * L);
    r.speed = pt.speed;
    r.gain = pt.yaw_rate / pt.front_steer;
    out.push_back(r);
  }
  return out;
}

}  // namespace udv
