#pragma once

#include <cmath>
#include <stdexcept>

namespace igame {

/// Discretization quantities derived from the current dispersion.
struct Schedule {
  double alpha_exp = 1.0;  // exponent in h = d^{1/(1+alpha_exp)}
  double d = 1.0;          // dispersion
  double h = 1.0;          // time step
  double kappa = 0.0;      // h - d
  double dilation = 0.0;   // 2d + l h d + M l h^2
  double goal_halo = 0.0;  // M h + d

  /// Per-step discount exp(-kappa).
  double discount() const { return std::exp(-kappa); }
};

/// Builds the schedule for dispersion d. While d >= 1 the nominal step
/// d^{1/(1+alpha)} would not exceed d, so h is clamped to d (1 + 1e-3) to
/// keep kappa positive.
inline Schedule make_schedule(double d, double alpha_exp, double speed_bound, double lipschitz) {
  if (!(d > 0.0)) throw std::domain_error("make_schedule: dispersion must be > 0");
  if (!(alpha_exp > 0.0)) throw std::domain_error("make_schedule: alpha_exp must be > 0");
  Schedule s;
  s.alpha_exp = alpha_exp;
  s.d = d;
  s.h = std::max(std::pow(d, 1.0 / (1.0 + alpha_exp)), d * (1.0 + 1e-3));
  s.kappa = s.h - d;
  s.dilation = 2.0 * d + lipschitz * s.h * d + speed_bound * lipschitz * s.h * s.h;
  s.goal_halo = speed_bound * s.h + d;
  return s;
}

}  // namespace igame
