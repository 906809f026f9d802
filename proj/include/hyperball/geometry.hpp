#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperball {

// Smallest admissible 1 - |x|^2 for a point of a hyperbolic ball. Constructors
// reject anything closer to the boundary; nothing clamps silently.
inline constexpr double kBoundaryMargin = 1e-15;

namespace detail {

inline void check_interior(double norm_sq, const char* type_name) {
  if (!(1.0 - norm_sq >= kBoundaryMargin)) {
    throw std::domain_error(std::string(type_name) +
                            ": point must lie strictly inside the unit ball");
  }
}

}  // namespace detail

/// Point of the Poincare disc, stored as a complex number z with |z| < 1.
class DiscPoint {
 public:
  DiscPoint() : z_(0.0, 0.0) {}
  explicit DiscPoint(std::complex<double> z) : z_(z) {
    detail::check_interior(std::norm(z_), "DiscPoint");
  }
  DiscPoint(double re, double im) : DiscPoint(std::complex<double>(re, im)) {}

  const std::complex<double>& value() const { return z_; }
  double norm_sq() const { return std::norm(z_); }

 private:
  std::complex<double> z_;
};

/// Point of the d-dimensional Poincare ball (d >= 2), a real vector |x| < 1.
class BallPoint {
 public:
  explicit BallPoint(Eigen::VectorXd x) : x_(std::move(x)) {
    if (x_.size() < 2) {
      throw std::invalid_argument("BallPoint: dimension must be >= 2");
    }
    detail::check_interior(x_.squaredNorm(), "BallPoint");
  }
  static BallPoint origin(int dim) { return BallPoint(Eigen::VectorXd::Zero(dim)); }

  const Eigen::VectorXd& value() const { return x_; }
  int dim() const { return static_cast<int>(x_.size()); }
  double norm_sq() const { return x_.squaredNorm(); }

 private:
  Eigen::VectorXd x_;
};

/// Point of the m-dimensional Bergman ball (m >= 1), a complex vector |z| < 1.
class CBallPoint {
 public:
  explicit CBallPoint(Eigen::VectorXcd z) : z_(std::move(z)) {
    if (z_.size() < 1) {
      throw std::invalid_argument("CBallPoint: dimension must be >= 1");
    }
    detail::check_interior(z_.squaredNorm(), "CBallPoint");
  }
  static CBallPoint origin(int dim) { return CBallPoint(Eigen::VectorXcd::Zero(dim)); }

  const Eigen::VectorXcd& value() const { return z_; }
  int dim() const { return static_cast<int>(z_.size()); }
  double norm_sq() const { return z_.squaredNorm(); }

 private:
  Eigen::VectorXcd z_;
};

// ---------------------------------------------------------------------------
// Raw coordinate kernels. These operate on unvalidated ambient coordinates;
// the validated point API below routes through them.
// ---------------------------------------------------------------------------

namespace kernels {

// Disc involution g_a(z) = (a - z) / (1 - conj(a) z): swaps a and 0.
inline std::complex<double> disc_involution(std::complex<double> a,
                                            std::complex<double> z) {
  return (a - z) / (1.0 - std::conj(a) * z);
}

// Stable form of 1 - |g_a(z)|^2.
inline double disc_one_minus_sq_pushed(std::complex<double> a,
                                       std::complex<double> z) {
  return (1.0 - std::norm(a)) * (1.0 - std::norm(z)) /
         std::norm(1.0 - std::conj(a) * z);
}

// rho(x, a) = |x - a|^2 + (1 - |a|^2)(1 - |x|^2), strictly positive inside.
inline double rho(const Eigen::VectorXd& x, const Eigen::VectorXd& a) {
  return (x - a).squaredNorm() +
         (1.0 - a.squaredNorm()) * (1.0 - x.squaredNorm());
}

// Ball involution h_a(x) = (a |x-a|^2 + (1-|a|^2)(a - x)) / rho(x, a).
inline Eigen::VectorXd ball_involution(const Eigen::VectorXd& a,
                                       const Eigen::VectorXd& x) {
  const double r = rho(x, a);
  const double one_minus_a2 = 1.0 - a.squaredNorm();
  return (a * (x - a).squaredNorm() + one_minus_a2 * (a - x)) / r;
}

inline double ball_one_minus_sq_pushed(const Eigen::VectorXd& a,
                                       const Eigen::VectorXd& x) {
  return (1.0 - a.squaredNorm()) * (1.0 - x.squaredNorm()) / rho(x, a);
}

// Hermitian inner product <z, w> = sum z_k conj(w_k).
inline std::complex<double> cdot(const Eigen::VectorXcd& z,
                                 const Eigen::VectorXcd& w) {
  return w.dot(z);  // Eigen conjugates its first argument
}

// Bergman involution m_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>).
inline Eigen::VectorXcd bergman_involution(const Eigen::VectorXcd& a,
                                           const Eigen::VectorXcd& z) {
  const double a2 = a.squaredNorm();
  if (a2 == 0.0) return -z;
  const double s_a = std::sqrt(1.0 - a2);
  const std::complex<double> za = cdot(z, a);
  const Eigen::VectorXcd p = (za / a2) * a;  // projection onto span(a)
  return (a - p - s_a * (z - p)) / (1.0 - za);
}

inline double bergman_one_minus_sq_pushed(const Eigen::VectorXcd& a,
                                          const Eigen::VectorXcd& z) {
  return (1.0 - z.squaredNorm()) * (1.0 - a.squaredNorm()) /
         std::norm(1.0 - cdot(a, z));
}

// d = (1/2) log((1+R)/(1-R)) = atanh(R) from the pushed squared norm.
inline double distance_from_pushed(double one_minus_sq) {
  const double r = std::sqrt(std::max(0.0, 1.0 - one_minus_sq));
  return std::atanh(std::min(r, 1.0 - 1e-17));
}

}  // namespace kernels

// ---------------------------------------------------------------------------
// Isometries, stored in factored form (rotation/unitary part, center).
// ---------------------------------------------------------------------------

/// g(z) = e^{i theta} (a - z) / (1 - conj(a) z). With theta = 0 this is the
/// involution swapping a and the origin.
class DiscIsometry {
 public:
  DiscIsometry(double theta, DiscPoint a) : theta_(theta), a_(a) {}

  double theta() const { return theta_; }
  const DiscPoint& center() const { return a_; }

  DiscPoint apply(const DiscPoint& z) const {
    const std::complex<double> w =
        std::polar(1.0, theta_) * kernels::disc_involution(a_.value(), z.value());
    return DiscPoint(w);
  }

  DiscIsometry inverse() const {
    // g^{-1}(w) = e^{-i theta} (a' - w)/(1 - conj(a') w) with a' = e^{i theta} a
    const std::complex<double> a2 = std::polar(1.0, theta_) * a_.value();
    return DiscIsometry(std::fmod(-theta_ + 4.0 * M_PI, 2.0 * M_PI), DiscPoint(a2));
  }

 private:
  double theta_;
  DiscPoint a_;
};

/// h(x) = A h_a(x) with A orthogonal and h_a the involution of the ball.
class BallIsometry {
 public:
  BallIsometry(Eigen::MatrixXd rotation, BallPoint a)
      : rotation_(std::move(rotation)), a_(std::move(a)) {
    if (rotation_.rows() != a_.dim() || rotation_.cols() != a_.dim()) {
      throw std::invalid_argument("BallIsometry: rotation size mismatch");
    }
    if (!((rotation_.transpose() * rotation_ -
           Eigen::MatrixXd::Identity(a_.dim(), a_.dim()))
              .cwiseAbs()
              .maxCoeff() < 1e-12)) {
      throw std::invalid_argument("BallIsometry: matrix is not orthogonal");
    }
  }
  static BallIsometry involution(BallPoint a) {
    const int d = a.dim();
    return BallIsometry(Eigen::MatrixXd::Identity(d, d), std::move(a));
  }

  const Eigen::MatrixXd& rotation() const { return rotation_; }
  const BallPoint& center() const { return a_; }

  BallPoint apply(const BallPoint& x) const {
    return BallPoint(rotation_ * kernels::ball_involution(a_.value(), x.value()));
  }

  BallIsometry inverse() const {
    // (A h_a)^{-1} = A^T h_{A a} since A h_a(x) = h_{A a}(A x).
    return BallIsometry(rotation_.transpose(), BallPoint(rotation_ * a_.value()));
  }

 private:
  Eigen::MatrixXd rotation_;
  BallPoint a_;
};

/// q(z) = U m_a(z) with U unitary and m_a the involution of the Bergman ball.
class BergmanIsometry {
 public:
  BergmanIsometry(Eigen::MatrixXcd unitary, CBallPoint a)
      : unitary_(std::move(unitary)), a_(std::move(a)) {
    if (unitary_.rows() != a_.dim() || unitary_.cols() != a_.dim()) {
      throw std::invalid_argument("BergmanIsometry: unitary size mismatch");
    }
    if (!((unitary_.adjoint() * unitary_ -
           Eigen::MatrixXcd::Identity(a_.dim(), a_.dim()))
              .cwiseAbs()
              .maxCoeff() < 1e-12)) {
      throw std::invalid_argument("BergmanIsometry: matrix is not unitary");
    }
  }
  static BergmanIsometry involution(CBallPoint a) {
    const int m = a.dim();
    return BergmanIsometry(Eigen::MatrixXcd::Identity(m, m), std::move(a));
  }

  const Eigen::MatrixXcd& unitary() const { return unitary_; }
  const CBallPoint& center() const { return a_; }

  CBallPoint apply(const CBallPoint& z) const {
    return CBallPoint(unitary_ *
                      kernels::bergman_involution(a_.value(), z.value()));
  }

  BergmanIsometry inverse() const {
    return BergmanIsometry(unitary_.adjoint(), CBallPoint(unitary_ * a_.value()));
  }

 private:
  Eigen::MatrixXcd unitary_;
  CBallPoint a_;
};

// ---------------------------------------------------------------------------
// Named operations on validated points.
// ---------------------------------------------------------------------------

DiscPoint disc_apply(const DiscIsometry& g, const DiscPoint& z);
double disc_distance(const DiscPoint& z, const DiscPoint& w);

double rho(const BallPoint& x, const BallPoint& a);
BallPoint ball_apply(const BallIsometry& h, const BallPoint& x);
double ball_distance(const BallPoint& x, const BallPoint& y);
double one_minus_sq_pushed_ball(const BallPoint& a, const BallPoint& x);
/// ((1-|h_a(x)|^2)/(1-|x|^2))^d, the Jacobian determinant of y = h_a(x).
double ball_jacobian(const BallPoint& a, const BallPoint& x);

CBallPoint bergman_apply(const BergmanIsometry& q, const CBallPoint& z);
double bergman_distance(const CBallPoint& z, const CBallPoint& w);
double one_minus_sq_pushed_bergman(const CBallPoint& a, const CBallPoint& z);
/// ((1-|m_a(z)|^2)/(1-|z|^2))^{m+1}, the real Jacobian determinant of m_a.
double bergman_jacobian(const CBallPoint& a, const CBallPoint& z);

/// Density of the hyperbolic measure with respect to Lebesgue measure:
/// (1-|z|^2)^{-2} on the disc, (1-|x|^2)^{-d} on the ball and
/// (1-|z|^2)^{-(m+1)} on the Bergman ball.
double hyperbolic_measure_density(const DiscPoint& z);
double hyperbolic_measure_density(const BallPoint& x);
double hyperbolic_measure_density(const CBallPoint& z);

// ---------------------------------------------------------------------------
// Model traits: the shared compile-time interface of the three ball models.
// Generic algorithms (potential, flows, sampling, estimation) are written
// once against this interface. The disc has its own complex-arithmetic
// specialization rather than delegating to ball(d = 2).
// ---------------------------------------------------------------------------

struct DiscModel {
  using Point = DiscPoint;
  using Vector = std::complex<double>;
  using Isometry = DiscIsometry;

  static const char* name() { return "disc"; }
  /// Model dimension label (d for balls, m for Bergman); the disc is 2.
  static int dim(const Point&) { return 2; }
  static int ambient_real_dim(int /*dim*/) { return 2; }

  static double norm_sq(const Vector& v) { return std::norm(v); }
  static Vector value(const Point& p) { return p.value(); }
  static Point make_point(const Vector& v) { return Point(v); }
  static Point origin(int /*dim*/) { return Point(); }

  static Vector involution(const Vector& a, const Vector& z) {
    return kernels::disc_involution(a, z);
  }
  static double one_minus_sq_pushed(const Vector& a, const Vector& z) {
    return kernels::disc_one_minus_sq_pushed(a, z);
  }
  static double distance(const Vector& z, const Vector& w) {
    return kernels::distance_from_pushed(kernels::disc_one_minus_sq_pushed(w, z));
  }
  static Isometry isometry_taking_origin_to(const Point& a) {
    return DiscIsometry(0.0, a);
  }
};

struct BallModel {
  using Point = BallPoint;
  using Vector = Eigen::VectorXd;
  using Isometry = BallIsometry;

  static const char* name() { return "ball"; }
  static int dim(const Point& p) { return p.dim(); }
  static int ambient_real_dim(int dim) { return dim; }

  static double norm_sq(const Vector& v) { return v.squaredNorm(); }
  static Vector value(const Point& p) { return p.value(); }
  static Point make_point(const Vector& v) { return Point(v); }
  static Point origin(int dim) { return BallPoint::origin(dim); }

  static Vector involution(const Vector& a, const Vector& x) {
    return kernels::ball_involution(a, x);
  }
  static double one_minus_sq_pushed(const Vector& a, const Vector& x) {
    return kernels::ball_one_minus_sq_pushed(a, x);
  }
  static double distance(const Vector& x, const Vector& y) {
    return kernels::distance_from_pushed(kernels::ball_one_minus_sq_pushed(y, x));
  }
  static Isometry isometry_taking_origin_to(const Point& a) {
    return BallIsometry::involution(a);
  }
};

struct BergmanModel {
  using Point = CBallPoint;
  using Vector = Eigen::VectorXcd;
  using Isometry = BergmanIsometry;

  static const char* name() { return "bergman"; }
  static int dim(const Point& p) { return p.dim(); }
  static int ambient_real_dim(int dim) { return 2 * dim; }

  static double norm_sq(const Vector& v) { return v.squaredNorm(); }
  static Vector value(const Point& p) { return p.value(); }
  static Point make_point(const Vector& v) { return Point(v); }
  static Point origin(int dim) { return CBallPoint::origin(dim); }

  static Vector involution(const Vector& a, const Vector& z) {
    return kernels::bergman_involution(a, z);
  }
  static double one_minus_sq_pushed(const Vector& a, const Vector& z) {
    return kernels::bergman_one_minus_sq_pushed(a, z);
  }
  static double distance(const Vector& z, const Vector& w) {
    return kernels::distance_from_pushed(
        kernels::bergman_one_minus_sq_pushed(w, z));
  }
  static Isometry isometry_taking_origin_to(const Point& a) {
    return BergmanIsometry::involution(a);
  }
};

/// Finite ordered list of points of one model, N >= 1, uniform dimension.
template <class Model>
class Configuration {
 public:
  using Point = typename Model::Point;

  explicit Configuration(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) {
      throw std::invalid_argument("Configuration: needs at least one point");
    }
    const int d = Model::dim(points_.front());
    for (const auto& p : points_) {
      if (Model::dim(p) != d) {
        throw std::invalid_argument("Configuration: mixed point dimensions");
      }
    }
  }

  int size() const { return static_cast<int>(points_.size()); }
  int dim() const { return Model::dim(points_.front()); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](int i) const { return points_[static_cast<size_t>(i)]; }

 private:
  std::vector<Point> points_;
};

using DiscConfiguration = Configuration<DiscModel>;
using BallConfiguration = Configuration<BallModel>;
using BergmanConfiguration = Configuration<BergmanModel>;

/// Symmetric matrix of pairwise model distances; zero diagonal.
template <class Model>
Eigen::MatrixXd pairwise_distance_matrix(const Configuration<Model>& config) {
  const int n = config.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dist =
          Model::distance(Model::value(config[i]), Model::value(config[j]));
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

}  // namespace hyperball
