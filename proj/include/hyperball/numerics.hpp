#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "hyperball/rng.hpp"

namespace hyperball {

inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

/// Natural log of Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Digamma psi(x) = d/dx log Gamma(x) for x > 0, absolute error <= 1e-12.
/// Upward recurrence shifts the argument above 10, then a Bernoulli
/// asymptotic series through the x^-14 term.
double digamma(double x);

/// Gauss hypergeometric series 2F1(a, b; c; x) by direct summation.
///
/// Supported regime: c > 0, 0 <= x < 1, and either c - a - b > 0 or b a
/// non-positive integer (the series then terminates and is summed exactly).
/// Truncation at relative tail <= 1e-13; throws NonConvergenceError if the
/// 100000-term cap is hit first.
double gauss_2f1(double a, double b, double c, double x);

/// Sign-change bracket for root finding: f(lo) and f(hi) must not agree in
/// sign and lo < hi.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

/// Evaluates f at both ends and validates the sign change.
Bracket make_bracket(const std::function<double(double)>& f, double lo,
                     double hi);

/// Root of f inside the bracket: stops when |f(x)| <= tol or the bracket
/// width falls below tol. Bisection with secant acceleration; the bracket
/// shrinks monotonically. Throws std::invalid_argument on a sign-matched
/// bracket.
double find_root(const std::function<double(double)>& f, Bracket bracket,
                 double tol = 1e-12, int max_iter = 200);

/// Step-size policy for integrate_ode. tol == 0 disables error control and
/// the solver takes fixed steps of size `step`. With tol > 0 each step is
/// compared against two half steps and halved until the Richardson local
/// error estimate is <= tol (the step may regrow afterwards, capped at
/// `step`). `post_step` may project a state back into an admissible region;
/// returning false aborts with StepFailureError.
struct StepControl {
  double step = 1e-3;
  double tol = 0.0;
  std::function<bool(Eigen::VectorXd&)> post_step;
};

struct OdeTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
};

using OdeField =
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

/// Classical 4th order Runge-Kutta integration of y' = field(t, y) from 0 to
/// t_end. The returned trajectory includes the initial state and lands
/// exactly on t_end.
OdeTrajectory integrate_ode(const OdeField& field, const Eigen::VectorXd& y0,
                            double t_end, const StepControl& control);

/// Uniform direction on the unit sphere S^{dim-1}: dim standard normals,
/// normalized (the measure-zero all-zeros draw is resampled).
Eigen::VectorXd uniform_sphere_direction(Rng& rng, int dim);

/// Adaptive Simpson quadrature of f on [lo, hi] to absolute tolerance tol.
double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double lo, double hi, double tol = 1e-10,
                                  int max_depth = 60);

/// One classical RK4 step of size h for any state with +, scalar * and copy.
template <class State, class Field>
State rk4_step(const Field& field, const State& y, double h) {
  const State k1 = field(y);
  const State k2 = field(State(y + (0.5 * h) * k1));
  const State k3 = field(State(y + (0.5 * h) * k2));
  const State k4 = field(State(y + h * k3));
  return State(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace hyperball
