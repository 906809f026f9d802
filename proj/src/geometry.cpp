#include "hyperball/geometry.hpp"

namespace hyperball {

DiscPoint disc_apply(const DiscIsometry& g, const DiscPoint& z) {
  return g.apply(z);
}

double disc_distance(const DiscPoint& z, const DiscPoint& w) {
  return DiscModel::distance(z.value(), w.value());
}

double rho(const BallPoint& x, const BallPoint& a) {
  if (x.dim() != a.dim()) {
    throw std::invalid_argument("rho: dimension mismatch");
  }
  return kernels::rho(x.value(), a.value());
}

BallPoint ball_apply(const BallIsometry& h, const BallPoint& x) {
  return h.apply(x);
}

double ball_distance(const BallPoint& x, const BallPoint& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("ball_distance: dimension mismatch");
  }
  return BallModel::distance(x.value(), y.value());
}

double one_minus_sq_pushed_ball(const BallPoint& a, const BallPoint& x) {
  if (x.dim() != a.dim()) {
    throw std::invalid_argument("one_minus_sq_pushed_ball: dimension mismatch");
  }
  return kernels::ball_one_minus_sq_pushed(a.value(), x.value());
}

double ball_jacobian(const BallPoint& a, const BallPoint& x) {
  const double ratio = one_minus_sq_pushed_ball(a, x) / (1.0 - x.norm_sq());
  return std::pow(ratio, a.dim());
}

CBallPoint bergman_apply(const BergmanIsometry& q, const CBallPoint& z) {
  return q.apply(z);
}

double bergman_distance(const CBallPoint& z, const CBallPoint& w) {
  if (z.dim() != w.dim()) {
    throw std::invalid_argument("bergman_distance: dimension mismatch");
  }
  return BergmanModel::distance(z.value(), w.value());
}

double one_minus_sq_pushed_bergman(const CBallPoint& a, const CBallPoint& z) {
  if (z.dim() != a.dim()) {
    throw std::invalid_argument(
        "one_minus_sq_pushed_bergman: dimension mismatch");
  }
  return kernels::bergman_one_minus_sq_pushed(a.value(), z.value());
}

double bergman_jacobian(const CBallPoint& a, const CBallPoint& z) {
  const double ratio = one_minus_sq_pushed_bergman(a, z) / (1.0 - z.norm_sq());
  return std::pow(ratio, a.dim() + 1);
}

double hyperbolic_measure_density(const DiscPoint& z) {
  return std::pow(1.0 - z.norm_sq(), -2.0);
}

double hyperbolic_measure_density(const BallPoint& x) {
  return std::pow(1.0 - x.norm_sq(), -static_cast<double>(x.dim()));
}

double hyperbolic_measure_density(const CBallPoint& z) {
  return std::pow(1.0 - z.norm_sq(), -static_cast<double>(z.dim() + 1));
}

}  // namespace hyperball
