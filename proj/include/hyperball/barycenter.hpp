#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "hyperball/errors.hpp"
#include "hyperball/geometry.hpp"
#include "hyperball/numerics.hpp"

namespace hyperball {

/// Tuning of the swarm/flow integrators. The coupling K must be negative for
/// the dynamics to descend the potential.
struct SwarmParams {
  double coupling = -1.0;
  double step = 0.05;
  double residual_tol = 1e-10;
  long max_steps = 1000000;
  std::optional<Eigen::VectorXd> weights;  // positive, sums to 1, length N
};

template <class Model>
struct BarycenterResult {
  typename Model::Point point;
  double potential = 0.0;
  long iterations = 0;
  double residual = 0.0;  // norm of the (weighted) mean of the pushed points
  bool converged = false;
};

template <class Model>
struct FlowSample {
  double t = 0.0;
  typename Model::Vector a;
  double potential = 0.0;
  double residual = 0.0;
};

template <class Model>
using FlowPath = std::vector<FlowSample<Model>>;

template <class Model>
struct SwarmTrajectory {
  std::vector<double> times;
  std::vector<Configuration<Model>> states;
  std::vector<double> energies;  // potential of the configuration at the origin
};

// ---------------------------------------------------------------------------
// Packed column storage and vectorized kernels (internal).
// ---------------------------------------------------------------------------

namespace detail {

template <class Model>
struct PackedOf;
template <>
struct PackedOf<DiscModel> {
  using type = Eigen::VectorXcd;
};
template <>
struct PackedOf<BallModel> {
  using type = Eigen::MatrixXd;  // d x N
};
template <>
struct PackedOf<BergmanModel> {
  using type = Eigen::MatrixXcd;  // m x N
};
template <class Model>
using Packed = typename PackedOf<Model>::type;

inline Eigen::VectorXcd pack(const Configuration<DiscModel>& c) {
  Eigen::VectorXcd z(c.size());
  for (int i = 0; i < c.size(); ++i) z[i] = c[i].value();
  return z;
}
inline Eigen::MatrixXd pack(const Configuration<BallModel>& c) {
  Eigen::MatrixXd x(c.dim(), c.size());
  for (int i = 0; i < c.size(); ++i) x.col(i) = c[i].value();
  return x;
}
inline Eigen::MatrixXcd pack(const Configuration<BergmanModel>& c) {
  Eigen::MatrixXcd z(c.dim(), c.size());
  for (int i = 0; i < c.size(); ++i) z.col(i) = c[i].value();
  return z;
}

inline Configuration<DiscModel> unpack_disc(const Eigen::VectorXcd& z) {
  std::vector<DiscPoint> pts;
  pts.reserve(static_cast<size_t>(z.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) pts.emplace_back(z[i]);
  return Configuration<DiscModel>(std::move(pts));
}
inline Configuration<BallModel> unpack_ball(const Eigen::MatrixXd& x) {
  std::vector<BallPoint> pts;
  pts.reserve(static_cast<size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.cols(); ++i) pts.emplace_back(x.col(i));
  return Configuration<BallModel>(std::move(pts));
}
inline Configuration<BergmanModel> unpack_bergman(const Eigen::MatrixXcd& z) {
  std::vector<CBallPoint> pts;
  pts.reserve(static_cast<size_t>(z.cols()));
  for (Eigen::Index i = 0; i < z.cols(); ++i) pts.emplace_back(z.col(i));
  return Configuration<BergmanModel>(std::move(pts));
}

template <class Model>
Configuration<Model> unpack(const Packed<Model>& s);
template <>
inline Configuration<DiscModel> unpack<DiscModel>(const Eigen::VectorXcd& s) {
  return unpack_disc(s);
}
template <>
inline Configuration<BallModel> unpack<BallModel>(const Eigen::MatrixXd& s) {
  return unpack_ball(s);
}
template <>
inline Configuration<BergmanModel> unpack<BergmanModel>(
    const Eigen::MatrixXcd& s) {
  return unpack_bergman(s);
}

inline Eigen::ArrayXd point_norms_sq(const Eigen::VectorXcd& z) {
  return z.array().abs2();
}
inline Eigen::ArrayXd point_norms_sq(const Eigen::MatrixXd& x) {
  return x.colwise().squaredNorm().transpose().array();
}
inline Eigen::ArrayXd point_norms_sq(const Eigen::MatrixXcd& z) {
  return z.colwise().squaredNorm().transpose().array();
}

inline void scale_point(Eigen::VectorXcd& z, Eigen::Index i, double f) {
  z[i] *= f;
}
inline void scale_point(Eigen::MatrixXd& x, Eigen::Index i, double f) {
  x.col(i) *= f;
}
inline void scale_point(Eigen::MatrixXcd& z, Eigen::Index i, double f) {
  z.col(i) *= f;
}

// Weighted mean of the pushed configuration, sum_i w_i Phi_a(z_i), where
// Phi_a is the origin-centered involution of the model. This is the flow
// residual vector and, up to the factor (N/2)(1-|a|^2), the hyperbolic
// gradient of the potential.
inline std::complex<double> pushed_mean(const Eigen::VectorXcd& z,
                                        const std::complex<double>& a,
                                        const Eigen::ArrayXd& w) {
  const Eigen::ArrayXcd phi =
      (a - z.array()) / (1.0 - std::conj(a) * z.array());
  return (phi * w.cast<std::complex<double>>()).sum();
}

inline Eigen::VectorXd pushed_mean(const Eigen::MatrixXd& x,
                                   const Eigen::VectorXd& a,
                                   const Eigen::ArrayXd& w) {
  const double oma2 = 1.0 - a.squaredNorm();
  const Eigen::ArrayXd n2 =
      (x.colwise() - a).colwise().squaredNorm().transpose().array();
  const Eigen::ArrayXd x2 = point_norms_sq(x);
  const Eigen::ArrayXd rho = n2 + oma2 * (1.0 - x2);
  const double coeff_a = (w * (n2 + oma2) / rho).sum();
  const Eigen::VectorXd u = (w * oma2 / rho).matrix();
  return coeff_a * a - x * u;
}

inline Eigen::VectorXcd pushed_mean(const Eigen::MatrixXcd& z,
                                    const Eigen::VectorXcd& a,
                                    const Eigen::ArrayXd& w) {
  const double a2 = a.squaredNorm();
  if (a2 == 0.0) {
    return -(z * w.matrix().cast<std::complex<double>>());
  }
  const double s_a = std::sqrt(1.0 - a2);
  const Eigen::ArrayXcd t = (a.adjoint() * z).transpose().array();  // <z_j, a>
  const Eigen::ArrayXcd den = 1.0 - t;
  const std::complex<double> c((1.0 - s_a) / a2, 0.0);
  const std::complex<double> coeff_a =
      (w.cast<std::complex<double>>() * (1.0 - c * t) / den).sum();
  const Eigen::VectorXcd u =
      (w.cast<std::complex<double>>() * s_a / den).matrix();
  return coeff_a * a - z * u;
}

// -sum_i w_i N log((1-|a|^2)(1-|z_i|^2)/denom_i) via the stable pushed
// identity; each log argument lies in (0, 1].
inline double weighted_potential_packed(const Eigen::VectorXcd& z,
                                        const std::complex<double>& a,
                                        const Eigen::ArrayXd& w) {
  const double n = static_cast<double>(z.size());
  const Eigen::ArrayXd omsp = (1.0 - std::norm(a)) * (1.0 - z.array().abs2()) /
                              (1.0 - std::conj(a) * z.array()).abs2();
  return -n * (w * omsp.log()).sum();
}

inline double weighted_potential_packed(const Eigen::MatrixXd& x,
                                        const Eigen::VectorXd& a,
                                        const Eigen::ArrayXd& w) {
  const double n = static_cast<double>(x.cols());
  const double oma2 = 1.0 - a.squaredNorm();
  const Eigen::ArrayXd n2 =
      (x.colwise() - a).colwise().squaredNorm().transpose().array();
  const Eigen::ArrayXd x2 = point_norms_sq(x);
  const Eigen::ArrayXd rho = n2 + oma2 * (1.0 - x2);
  return -n * (w * (oma2 * (1.0 - x2) / rho).log()).sum();
}

inline double weighted_potential_packed(const Eigen::MatrixXcd& z,
                                        const Eigen::VectorXcd& a,
                                        const Eigen::ArrayXd& w) {
  const double n = static_cast<double>(z.cols());
  const double oma2 = 1.0 - a.squaredNorm();
  const Eigen::ArrayXd z2 = point_norms_sq(z);
  const Eigen::ArrayXcd t = (a.adjoint() * z).transpose().array();
  const Eigen::ArrayXd den = (1.0 - t).abs2();
  return -n * (w * (oma2 * (1.0 - z2) / den).log()).sum();
}

// Swarm vector fields. All three are linear combinations of infinitesimal
// isometries, so the exact dynamics moves the configuration rigidly.
inline Eigen::VectorXcd swarm_field(const Eigen::VectorXcd& z, double k) {
  const double n = static_cast<double>(z.size());
  const std::complex<double> s = z.sum();
  return (k / (2.0 * n)) * (s - std::conj(s) * z.array().square()).matrix();
}

inline Eigen::MatrixXd swarm_field(const Eigen::MatrixXd& x, double k) {
  const double n = static_cast<double>(x.cols());
  const Eigen::VectorXd s = x.rowwise().sum();
  const Eigen::ArrayXd ip = (s.transpose() * x).transpose().array();
  const Eigen::ArrayXd x2 = point_norms_sq(x);
  Eigen::MatrixXd out =
      (x.array().rowwise() * (-(k / n) * ip).transpose()).matrix();
  out += s * ((k / (2.0 * n)) * (1.0 + x2)).matrix().transpose();
  return out;
}

inline Eigen::MatrixXcd swarm_field(const Eigen::MatrixXcd& z, double k) {
  const double n = static_cast<double>(z.cols());
  const Eigen::VectorXcd s = z.rowwise().sum();
  const Eigen::ArrayXcd ip = (s.adjoint() * z).transpose().array();  // <z_j, s>
  Eigen::MatrixXcd out =
      (z.array().rowwise() * (-(k / n) * ip).transpose()).matrix();
  out.colwise() += (k / n) * s;
  return out;
}

inline bool all_finite(const Eigen::VectorXcd& z) { return z.allFinite(); }
inline bool all_finite(const Eigen::MatrixXd& x) { return x.allFinite(); }
inline bool all_finite(const Eigen::MatrixXcd& z) { return z.allFinite(); }

inline constexpr double kSafeRadius = 1.0 - 1e-12;

// Advances the packed swarm state by time h. A step whose result leaves the
// ball is retried with halved sub-steps (up to 50 halvings); points that land
// inside but past the safe radius are rescaled back onto it.
template <class State>
State advance_swarm(const State& y, double h, double k, int depth = 0) {
  auto field = [k](const State& s) { return State(swarm_field(s, k)); };
  State y1 = rk4_step(field, y, h);
  const bool finite = all_finite(y1);
  bool exited = !finite;
  if (finite) {
    const Eigen::ArrayXd n2 = point_norms_sq(y1);
    exited = (n2 >= 1.0).any();
  }
  if (exited) {
    if (depth >= 50) {
      throw StepFailureError("swarm step left the unit ball after 50 halvings");
    }
    const State mid = advance_swarm(y, 0.5 * h, k, depth + 1);
    return advance_swarm(mid, 0.5 * h, k, depth + 1);
  }
  const Eigen::ArrayXd n2 = point_norms_sq(y1);
  for (Eigen::Index i = 0; i < n2.size(); ++i) {
    const double norm = std::sqrt(n2[i]);
    if (norm > kSafeRadius) scale_point(y1, i, kSafeRadius / norm);
  }
  return y1;
}

template <class Model>
Eigen::ArrayXd resolve_weights(const SwarmParams& params, int n) {
  if (!params.weights) {
    return Eigen::ArrayXd::Constant(n, 1.0 / static_cast<double>(n));
  }
  const Eigen::VectorXd& w = *params.weights;
  if (w.size() != n) {
    throw std::invalid_argument("weights: length must equal the number of points");
  }
  if (!(w.minCoeff() > 0.0)) {
    throw std::invalid_argument("weights: entries must be positive");
  }
  if (std::abs(w.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("weights: must sum to 1");
  }
  return w.array();
}

inline void check_params(const SwarmParams& params) {
  if (params.coupling == 0.0) {
    throw std::invalid_argument("SwarmParams: coupling K must be nonzero");
  }
  if (!(params.step > 0.0) || !(params.residual_tol > 0.0)) {
    throw std::invalid_argument("SwarmParams: step and residual_tol must be positive");
  }
}

// One safeguarded RK4 step of the barycenter ODE
//   da/dt = (K/2)(1-|a|^2) sum_i w_i Phi_a(z_i).
// Returns the new state and the step size actually taken (halved when the
// trial step left the ball).
template <class Model>
std::pair<typename Model::Vector, double> flow_step(
    const Packed<Model>& pts, const typename Model::Vector& a,
    const Eigen::ArrayXd& w, double k, double h) {
  using Vec = typename Model::Vector;
  auto field = [&](const Vec& p) {
    return Vec((0.5 * k) * (1.0 - Model::norm_sq(p)) * pushed_mean(pts, p, w));
  };
  for (int halvings = 0; halvings <= 50; ++halvings) {
    Vec a1 = rk4_step(field, a, h);
    if (Model::norm_sq(a1) < kSafeRadius * kSafeRadius) return {a1, h};
    h *= 0.5;
  }
  throw StepFailureError("barycenter flow step left the unit ball");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

/// Potential whose unique minimizer is the barycenter:
///   H(a) = -sum_i log[(1-|a|^2)(1-|z_i|^2)/denom_i]  >=  0,
/// with denom the model's squared-distance denominator. Unnormalized sum.
template <class Model>
double potential(const Configuration<Model>& config,
                 const typename Model::Point& a) {
  if (Model::dim(a) != config.dim()) {
    throw std::invalid_argument("potential: point/configuration model mismatch");
  }
  const auto pts = detail::pack(config);
  const Eigen::ArrayXd w =
      Eigen::ArrayXd::Constant(config.size(), 1.0 / config.size());
  return detail::weighted_potential_packed(pts, Model::value(a), w);
}

/// Weighted variant: -N sum_i w_i log(arg_i); uniform weights reduce to
/// `potential`.
template <class Model>
double weighted_potential(const Configuration<Model>& config,
                          const Eigen::VectorXd& weights,
                          const typename Model::Point& a) {
  if (Model::dim(a) != config.dim()) {
    throw std::invalid_argument("weighted_potential: model mismatch");
  }
  SwarmParams p;
  p.weights = weights;
  const Eigen::ArrayXd w = detail::resolve_weights<Model>(p, config.size());
  return detail::weighted_potential_packed(detail::pack(config),
                                           Model::value(a), w);
}

/// Hyperbolic (Riemannian) gradient of the potential at a:
///   grad_hyp H(a) = (1/2)(1-|a|^2) sum_i Phi_a(z_i),
/// which equals (1/4)(1-|a|^2)^2 times the Euclidean gradient. Vanishes
/// exactly at the barycenter.
template <class Model>
typename Model::Vector hyp_gradient(const Configuration<Model>& config,
                                    const typename Model::Point& a) {
  if (Model::dim(a) != config.dim()) {
    throw std::invalid_argument("hyp_gradient: model mismatch");
  }
  const auto pts = detail::pack(config);
  const Eigen::ArrayXd w = Eigen::ArrayXd::Ones(config.size());
  return typename Model::Vector(
      0.5 * (1.0 - Model::norm_sq(Model::value(a))) *
      detail::pushed_mean(pts, Model::value(a), w));
}

/// Whether |sum_i z_i| / N <= tol.
template <class Model>
bool is_balanced(const Configuration<Model>& config, double tol) {
  const auto pts = detail::pack(config);
  const Eigen::ArrayXd w =
      Eigen::ArrayXd::Constant(config.size(), 1.0 / config.size());
  using Vec = typename Model::Vector;
  const Vec origin = Model::value(Model::origin(config.dim()));
  // Phi_0(z) = -z, so the pushed mean at the origin is minus the plain mean.
  return std::sqrt(Model::norm_sq(Vec(detail::pushed_mean(pts, origin, w)))) <=
         tol;
}

/// One integrator step of the model's swarm ODE. The exact dynamics acts by
/// isometries, so pairwise distances are conserved up to integration error.
template <class Model>
Configuration<Model> swarm_step(const Configuration<Model>& config,
                                const SwarmParams& params) {
  detail::check_params(params);
  const auto next =
      detail::advance_swarm(detail::pack(config), params.step, params.coupling);
  return detail::unpack<Model>(next);
}

/// Integrates the swarm over [0, t_end], recording every `record_stride`-th
/// state (and always the endpoint).
template <class Model>
SwarmTrajectory<Model> swarm_integrate(const Configuration<Model>& config,
                                       const SwarmParams& params, double t_end,
                                       long record_stride = 1) {
  detail::check_params(params);
  if (t_end < 0.0) {
    throw std::invalid_argument("swarm_integrate: t_end must be non-negative");
  }
  if (record_stride < 1) record_stride = 1;
  SwarmTrajectory<Model> traj;
  const auto origin = Model::origin(config.dim());
  auto state = detail::pack(config);

  auto record = [&](double t, const decltype(state)& s) {
    traj.times.push_back(t);
    traj.states.push_back(detail::unpack<Model>(s));
    traj.energies.push_back(potential(traj.states.back(), origin));
  };
  record(0.0, state);

  double t = 0.0;
  long step_index = 0;
  while (t < t_end) {
    const double h = std::min(params.step, t_end - t);
    state = detail::advance_swarm(state, h, params.coupling);
    t = std::min(t + h, t_end);
    ++step_index;
    if (step_index % record_stride == 0 || t >= t_end) record(t, state);
  }
  return traj;
}

/// Integrates the barycenter ODE da/dt = (K/2N)(1-|a|^2) sum_i Phi_a(z_i)
/// from a(0) = 0 until the residual |sum_i w_i Phi_a(z_i)| falls below
/// residual_tol or max_steps is hit. The potential decreases monotonically
/// along the path (gradient flow).
template <class Model>
FlowPath<Model> barycenter_flow(const Configuration<Model>& config,
                                const SwarmParams& params,
                                long record_stride = 1) {
  detail::check_params(params);
  if (record_stride < 1) record_stride = 1;
  const auto pts = detail::pack(config);
  const Eigen::ArrayXd w = detail::resolve_weights<Model>(params, config.size());
  using Vec = typename Model::Vector;
  Vec a = Model::value(Model::origin(config.dim()));

  FlowPath<Model> path;
  auto record = [&](double t, const Vec& p, double resid) {
    path.push_back({t, p, detail::weighted_potential_packed(pts, p, w), resid});
  };

  double resid = std::sqrt(Model::norm_sq(Vec(detail::pushed_mean(pts, a, w))));
  record(0.0, a, resid);
  double t = 0.0;
  for (long it = 1; it <= params.max_steps && resid > params.residual_tol;
       ++it) {
    auto [a1, h] =
        detail::flow_step<Model>(pts, a, w, params.coupling, params.step);
    a = a1;
    t += h;
    resid = std::sqrt(Model::norm_sq(Vec(detail::pushed_mean(pts, a, w))));
    if (it % record_stride == 0 || resid <= params.residual_tol) {
      record(t, a, resid);
    }
  }
  return path;
}

/// Barycenter of the configuration: the unique minimizer of the potential,
/// equivalently the point whose involution balances the configuration.
/// Does not fabricate an answer: `converged` reports whether the residual
/// tolerance was met.
template <class Model>
BarycenterResult<Model> barycenter(const Configuration<Model>& config,
                                   const SwarmParams& params = {}) {
  detail::check_params(params);
  using Vec = typename Model::Vector;
  const Eigen::ArrayXd w = detail::resolve_weights<Model>(params, config.size());

  if (config.size() == 1) {
    // Single point: the minimizer is the point itself.
    return {config[0], 0.0, 0, 0.0, true};
  }

  const auto pts = detail::pack(config);
  Vec a = Model::value(Model::origin(config.dim()));

  long it = 0;
  double resid = std::sqrt(Model::norm_sq(Vec(detail::pushed_mean(pts, a, w))));
  while (resid > params.residual_tol && it < params.max_steps) {
    a = detail::flow_step<Model>(pts, a, w, params.coupling, params.step).first;
    resid = std::sqrt(Model::norm_sq(Vec(detail::pushed_mean(pts, a, w))));
    ++it;
  }

  BarycenterResult<Model> res{Model::make_point(a),
                              detail::weighted_potential_packed(pts, a, w), it,
                              resid, resid <= params.residual_tol};
  return res;
}

/// The isometry that balances the configuration (unique up to rotation; the
/// canonical representative is the involution centered at the barycenter),
/// together with the pushed, balanced configuration.
template <class Model>
std::pair<typename Model::Isometry, Configuration<Model>> balance_transform(
    const Configuration<Model>& config, const SwarmParams& params = {}) {
  const auto res = barycenter(config, params);
  if (!res.converged) {
    throw NonConvergenceError("balance_transform: barycenter did not converge");
  }
  const auto iso = Model::isometry_taking_origin_to(res.point);
  std::vector<typename Model::Point> pushed;
  pushed.reserve(static_cast<size_t>(config.size()));
  for (const auto& p : config.points()) pushed.push_back(iso.apply(p));
  return {iso, Configuration<Model>(std::move(pushed))};
}

}  // namespace hyperball
