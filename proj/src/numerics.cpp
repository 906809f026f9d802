#include "hyperball/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyperball/errors.hpp"

namespace hyperball {

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: requires x > 0");
  }
  return std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("digamma: requires x > 0");
  }
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum_{n>=1} B_{2n} / (2n x^{2n})
  const double inv2 = 1.0 / (x * x);
  const double series =
      inv2 *
      (1.0 / 12.0 -
       inv2 * (1.0 / 120.0 -
               inv2 * (1.0 / 252.0 -
                       inv2 * (1.0 / 240.0 -
                               inv2 * (1.0 / 132.0 -
                                       inv2 * (691.0 / 32760.0 -
                                               inv2 * (1.0 / 12.0)))))));
  return acc + std::log(x) - 0.5 / x - series;
}

double gauss_2f1(double a, double b, double c, double x) {
  if (!(c > 0.0)) {
    throw std::domain_error("gauss_2f1: requires c > 0");
  }
  if (x < 0.0 || x >= 1.0) {
    throw std::domain_error("gauss_2f1: requires 0 <= x < 1");
  }

  const bool terminating = b <= 0.0 && b == std::floor(b);
  const long k_max = terminating ? static_cast<long>(-b) : 100000L;

  double sum = 1.0;
  double term = 1.0;
  double prev_ratio = std::numeric_limits<double>::infinity();
  for (long k = 0; k < k_max; ++k) {
    const double kd = static_cast<double>(k);
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x;
    sum += term;
    if (term == 0.0) return sum;
    if (terminating) continue;
    prev_ratio = std::abs((a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x);
    // Geometric tail bound once the term ratio has fallen below 1.
    const double r = std::max(prev_ratio, x);
    if (r < 1.0 && std::abs(term) * r / (1.0 - r) <= 1e-13 * std::abs(sum)) {
      return sum;
    }
  }
  if (terminating) return sum;
  throw NonConvergenceError("gauss_2f1: series failed to converge in 100000 terms");
}

Bracket make_bracket(const std::function<double(double)>& f, double lo,
                     double hi) {
  Bracket br{lo, hi, f(lo), f(hi)};
  if (!(br.lo < br.hi) || br.f_lo * br.f_hi > 0.0) {
    throw std::invalid_argument("make_bracket: f must change sign on [lo, hi]");
  }
  return br;
}

double find_root(const std::function<double(double)>& f, Bracket br,
                 double tol, int max_iter) {
  if (!(br.lo < br.hi) || br.f_lo * br.f_hi > 0.0) {
    throw std::invalid_argument("find_root: invalid bracket");
  }
  if (br.f_lo == 0.0) return br.lo;
  if (br.f_hi == 0.0) return br.hi;

  double x = 0.5 * (br.lo + br.hi);
  for (int it = 0; it < max_iter; ++it) {
    const double width = br.hi - br.lo;
    if (width <= tol) break;
    // Secant proposal on odd iterations, plain bisection on even ones; the
    // alternation guarantees geometric bracket shrinkage.
    x = 0.5 * (br.lo + br.hi);
    if (it % 2 == 1) {
      const double denom = br.f_hi - br.f_lo;
      if (denom != 0.0) {
        const double xs = br.lo - br.f_lo * width / denom;
        if (xs > br.lo + 1e-3 * width && xs < br.hi - 1e-3 * width) x = xs;
      }
    }
    const double fx = f(x);
    if (std::abs(fx) <= tol) return x;
    if (fx * br.f_lo < 0.0) {
      br.hi = x;
      br.f_hi = fx;
    } else {
      br.lo = x;
      br.f_lo = fx;
    }
  }
  return 0.5 * (br.lo + br.hi);
}

namespace {

Eigen::VectorXd rk4_ode_step(const OdeField& field, double t,
                             const Eigen::VectorXd& y, double h) {
  const Eigen::VectorXd k1 = field(t, y);
  const Eigen::VectorXd k2 = field(t + 0.5 * h, y + (0.5 * h) * k1);
  const Eigen::VectorXd k3 = field(t + 0.5 * h, y + (0.5 * h) * k2);
  const Eigen::VectorXd k4 = field(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

OdeTrajectory integrate_ode(const OdeField& field, const Eigen::VectorXd& y0,
                            double t_end, const StepControl& control) {
  if (!(control.step > 0.0)) {
    throw std::invalid_argument("integrate_ode: step must be positive");
  }
  if (t_end < 0.0) {
    throw std::invalid_argument("integrate_ode: t_end must be non-negative");
  }
  OdeTrajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  double t = 0.0;
  double h = control.step;
  Eigen::VectorXd y = y0;
  while (t < t_end) {
    h = std::min(h, t_end - t);
    double h_taken = h;
    Eigen::VectorXd y_next;
    if (control.tol > 0.0) {
      int halvings = 0;
      for (;;) {
        const Eigen::VectorXd full = rk4_ode_step(field, t, y, h);
        const Eigen::VectorXd half =
            rk4_ode_step(field, t + 0.5 * h,
                         rk4_ode_step(field, t, y, 0.5 * h), 0.5 * h);
        const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;
        if (err <= control.tol || halvings >= 60) {
          y_next = half;
          h_taken = h;
          if (err < control.tol / 32.0) {
            h = std::min(2.0 * h, control.step);
          }
          break;
        }
        h *= 0.5;
        ++halvings;
      }
    } else {
      y_next = rk4_ode_step(field, t, y, h);
    }
    if (!y_next.allFinite()) {
      throw StepFailureError("integrate_ode: state blew up");
    }
    if (control.post_step && !control.post_step(y_next)) {
      throw StepFailureError("integrate_ode: state left the admissible region");
    }
    t = std::min(t + h_taken, t_end);
    y = y_next;
    traj.times.push_back(t);
    traj.states.push_back(y);
  }
  return traj;
}

Eigen::VectorXd uniform_sphere_direction(Rng& rng, int dim) {
  if (dim < 1) {
    throw std::invalid_argument("uniform_sphere_direction: dim must be >= 1");
  }
  Eigen::VectorXd v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
    const double n = v.norm();
    if (n > 0.0) return v / n;
  }
}

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) {
    return left + right + err;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double lo, double hi, double tol,
                                  int max_depth) {
  if (lo == hi) return 0.0;
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  const double whole = simpson(fa, fm, fb, lo, hi);
  return adaptive_simpson_rec(f, lo, hi, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace hyperball
