#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "hyperball/geometry.hpp"
#include "hyperball/numerics.hpp"
#include "hyperball/rng.hpp"

namespace hyperball {

/// Admissible concentrations are s > bound: 1 on the disc, d-1 on the
/// d-dimensional ball, m on the m-dimensional Bergman ball.
template <class Model>
double concentration_lower_bound(int dim) {
  if constexpr (std::is_same_v<Model, DiscModel>) {
    (void)dim;
    return 1.0;
  } else if constexpr (std::is_same_v<Model, BallModel>) {
    return static_cast<double>(dim - 1);
  } else {
    return static_cast<double>(dim);
  }
}

namespace detail {

template <class Model>
void check_concentration(int dim, double s) {
  if (!(s > concentration_lower_bound<Model>(dim))) {
    throw std::domain_error("concentration s is out of the admissible range");
  }
}

}  // namespace detail

/// Location/concentration parameters of the isometry-invariant family:
/// Moeb on the disc and real balls, HolNat on Bergman balls. The location is
/// the barycenter of the distribution.
template <class Model>
class MoebParams {
 public:
  MoebParams(typename Model::Point location, double concentration)
      : location_(std::move(location)), concentration_(concentration) {
    detail::check_concentration<Model>(Model::dim(location_), concentration_);
  }

  const typename Model::Point& location() const { return location_; }
  double concentration() const { return concentration_; }
  int dim() const { return Model::dim(location_); }

 private:
  typename Model::Point location_;
  double concentration_;
};

/// log c(s) with c the constant normalizing the density against the
/// hyperbolic measure: (s-1)/pi on the disc,
/// Gamma(1+s-d/2) / (pi^{d/2} Gamma(1+s-d)) on the ball and
/// Gamma(s) / (pi^m Gamma(s-m)) on the Bergman ball.
template <class Model>
double log_normalizer(int dim, double s) {
  detail::check_concentration<Model>(dim, s);
  if constexpr (std::is_same_v<Model, DiscModel>) {
    return std::log(s - 1.0) - std::log(M_PI);
  } else if constexpr (std::is_same_v<Model, BallModel>) {
    const double d = static_cast<double>(dim);
    return log_gamma(1.0 + s - 0.5 * d) - log_gamma(1.0 + s - d) -
           0.5 * d * std::log(M_PI);
  } else {
    const double m = static_cast<double>(dim);
    return log_gamma(s) - log_gamma(s - m) - m * std::log(M_PI);
  }
}

/// Log density with respect to the hyperbolic measure dLambda:
/// log c(s) + s log[(1-|a|^2)(1-|x|^2)/denom].
template <class Model>
double log_density(const MoebParams<Model>& params,
                   const typename Model::Point& x) {
  if (Model::dim(x) != params.dim()) {
    throw std::invalid_argument("log_density: model mismatch");
  }
  const double pushed = Model::one_minus_sq_pushed(
      Model::value(params.location()), Model::value(x));
  return log_normalizer<Model>(params.dim(), params.concentration()) +
         params.concentration() * std::log(pushed);
}

/// P{|x| < b} under the origin-centered law. Closed form 1 - (1-b^2)^{s-1}
/// on the disc; Gauss-hypergeometric radial integrals on the balls.
template <class Model>
double radial_cdf(int dim, double s, double b) {
  detail::check_concentration<Model>(dim, s);
  if (b < 0.0 || b > 1.0) {
    throw std::domain_error("radial_cdf: b must lie in [0, 1]");
  }
  if (b == 0.0) return 0.0;
  if (b == 1.0) return 1.0;
  if constexpr (std::is_same_v<Model, DiscModel>) {
    (void)dim;
    return 1.0 - std::pow(1.0 - b * b, s - 1.0);
  } else if constexpr (std::is_same_v<Model, BallModel>) {
    const double d = static_cast<double>(dim);
    const double log_pre = std::log(2.0) + log_gamma(1.0 + s - 0.5 * d) -
                           log_gamma(1.0 + s - d) - log_gamma(0.5 * d) +
                           d * std::log(b) - std::log(d);
    return std::exp(log_pre) * gauss_2f1(0.5 * d, d - s, 0.5 * d + 1.0, b * b);
  } else {
    const double m = static_cast<double>(dim);
    const double log_pre = log_gamma(s) - log_gamma(m) - log_gamma(s - m) +
                           2.0 * m * std::log(b) - std::log(m);
    return std::exp(log_pre) * gauss_2f1(m, m - s + 1.0, m + 1.0, b * b);
  }
}

/// Inverse of radial_cdf on [0, 1). Closed form on the disc, bracketed
/// root solve elsewhere.
template <class Model>
double radial_quantile(int dim, double s, double kappa) {
  detail::check_concentration<Model>(dim, s);
  if (kappa < 0.0 || kappa >= 1.0) {
    throw std::domain_error("radial_quantile: kappa must lie in [0, 1)");
  }
  if (kappa == 0.0) return 0.0;
  if constexpr (std::is_same_v<Model, DiscModel>) {
    (void)dim;
    return std::sqrt(1.0 - std::pow(1.0 - kappa, 1.0 / (s - 1.0)));
  } else {
    auto f = [&](double b) { return radial_cdf<Model>(dim, s, b) - kappa; };
    // f(0) = -kappa < 0 and f(1) = 1-kappa > 0; no endpoint evaluation needed.
    return find_root(f, Bracket{0.0, 1.0, -kappa, 1.0 - kappa}, 1e-12, 200);
  }
}

/// The radial law of the origin-centered distribution: a strictly increasing
/// cdf on [0, 1] and its inverse.
template <class Model>
struct RadialLaw {
  int dim = 2;
  double s = 2.0;
  double cdf(double b) const { return radial_cdf<Model>(dim, s, b); }
  double quantile(double kappa) const {
    return radial_quantile<Model>(dim, s, kappa);
  }
};

namespace detail {

inline std::complex<double> direction_vector(Rng& rng, const DiscModel&,
                                             int /*dim*/) {
  const Eigen::VectorXd v = uniform_sphere_direction(rng, 2);
  return {v[0], v[1]};
}

inline Eigen::VectorXd direction_vector(Rng& rng, const BallModel&, int dim) {
  return uniform_sphere_direction(rng, dim);
}

inline Eigen::VectorXcd direction_vector(Rng& rng, const BergmanModel&,
                                         int dim) {
  const Eigen::VectorXd v = uniform_sphere_direction(rng, 2 * dim);
  Eigen::VectorXcd u(dim);
  for (int k = 0; k < dim; ++k) u[k] = std::complex<double>(v[2 * k], v[2 * k + 1]);
  return u;
}

}  // namespace detail

/// One draw: a uniform direction on the model's unit sphere, a radius from
/// the inverse radial cdf of a uniform variate, then the push by the
/// involution taking the origin to the location. Draw order per point is
/// fixed (direction first, then the radial uniform).
template <class Model>
typename Model::Point sample(const MoebParams<Model>& params, Rng& rng) {
  const int dim = params.dim();
  const auto u = detail::direction_vector(rng, Model{}, dim);
  const double kappa = rng.uniform();
  const double b =
      radial_quantile<Model>(dim, params.concentration(), kappa);
  const auto origin_centered = Model::make_point(typename Model::Vector(b * u));
  const auto push = Model::isometry_taking_origin_to(params.location());
  return push.apply(origin_centered);
}

template <class Model>
std::vector<typename Model::Point> sample_many(const MoebParams<Model>& params,
                                               int n, Rng& rng) {
  std::vector<typename Model::Point> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(sample(params, rng));
  return out;
}

/// Parameters of the pushforward law: (g(a), s). Sampling then pushing is
/// distributed as sampling from the pushforward parameters.
template <class Model>
MoebParams<Model> pushforward_params(const MoebParams<Model>& params,
                                     const typename Model::Isometry& g) {
  return MoebParams<Model>(g.apply(params.location()), params.concentration());
}

}  // namespace hyperball
