#pragma once

#include <cmath>
#include <type_traits>

#include "hyperball/barycenter.hpp"
#include "hyperball/distribution.hpp"
#include "hyperball/errors.hpp"
#include "hyperball/geometry.hpp"
#include "hyperball/numerics.hpp"

namespace hyperball {

template <class Model>
struct FitResult {
  MoebParams<Model> params;
  double log_likelihood = 0.0;
  double barycenter_residual = 0.0;
  double s_equation_residual = 0.0;
  int n_obs = 0;
};

/// N log c(s) - s H(a), with H the unnormalized potential of the barycenter
/// module. On the disc this is N log(s-1) - N log pi - s H(a).
template <class Model>
double log_likelihood(const MoebParams<Model>& params,
                      const Configuration<Model>& config) {
  if (params.dim() != config.dim()) {
    throw std::invalid_argument("log_likelihood: model mismatch");
  }
  return config.size() *
             log_normalizer<Model>(params.dim(), params.concentration()) -
         params.concentration() * potential(config, params.location());
}

/// Stationarity residual of the concentration equation at s, given the
/// potential per observation h = H(a)/N:
///   disc     1/(s-1) - h
///   ball     psi(1+s-d/2) - psi(1+s-d) - h
///   bergman  psi(s) - psi(s-m) - h   (= sum_{k=1}^m 1/(s-k) - h)
/// Strictly decreasing in s on the admissible range, from +inf at the lower
/// bound to -h at infinity.
template <class Model>
double s_equation_residual(int dim, double s, double potential_per_obs) {
  detail::check_concentration<Model>(dim, s);
  if constexpr (std::is_same_v<Model, DiscModel>) {
    (void)dim;
    return 1.0 / (s - 1.0) - potential_per_obs;
  } else if constexpr (std::is_same_v<Model, BallModel>) {
    const double d = static_cast<double>(dim);
    return digamma(1.0 + s - 0.5 * d) - digamma(1.0 + s - d) -
           potential_per_obs;
  } else {
    const double m = static_cast<double>(dim);
    return digamma(s) - digamma(s - m) - potential_per_obs;
  }
}

/// Maximum likelihood estimate of (a, s): the location is the barycenter of
/// the observations, and s solves the model's stationarity equation
/// (closed form 1 + N/H on the disc, monotone root solve otherwise).
/// Throws DegenerateDataError when all observations coincide (H = 0 makes
/// the concentration estimate infinite) and NonConvergenceError if the
/// barycenter solver fails.
template <class Model>
FitResult<Model> fit(const Configuration<Model>& config,
                     const SwarmParams& solver = {}) {
  const auto bres = barycenter(config, solver);
  if (!bres.converged) {
    throw NonConvergenceError("fit: barycenter solver did not converge");
  }
  const int n = config.size();
  const int dim = config.dim();
  const double h = bres.potential / n;
  if (!(h > 1e-15)) {
    throw DegenerateDataError(
        "fit: all observations coincide; the concentration estimate diverges");
  }

  double s_hat;
  if constexpr (std::is_same_v<Model, DiscModel>) {
    s_hat = 1.0 + 1.0 / h;
  } else {
    const double bound = concentration_lower_bound<Model>(dim);
    auto f = [&](double s) { return s_equation_residual<Model>(dim, s, h); };
    const double lo = bound + 1e-9;
    const double f_lo = f(lo);
    if (f_lo <= 0.0) {
      s_hat = lo;  // dispersed beyond the solvable range; pole-adjacent root
    } else {
      double offset = 1.0;
      double hi = bound + offset;
      double f_hi = f(hi);
      while (f_hi > 0.0) {
        offset *= 2.0;
        if (offset > 1e12) {
          throw NonConvergenceError("fit: failed to bracket the concentration");
        }
        hi = bound + offset;
        f_hi = f(hi);
      }
      s_hat = find_root(f, Bracket{lo, hi, f_lo, f_hi}, 1e-12, 200);
    }
  }

  MoebParams<Model> params(bres.point, s_hat);
  FitResult<Model> result{params,
                          n * log_normalizer<Model>(dim, s_hat) -
                              s_hat * bres.potential,
                          bres.residual,
                          s_equation_residual<Model>(dim, s_hat, h),
                          n};
  return result;
}

}  // namespace hyperball
