#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <vector>

#include "hyperball/barycenter.hpp"
#include "hyperball/distribution.hpp"
#include "hyperball/estimation.hpp"
#include "hyperball/geometry.hpp"
#include "hyperball/rng.hpp"

namespace py = pybind11;
using namespace hyperball;

namespace {

// Points cross the boundary as plain coordinates: complex scalars on the
// disc, rows of an (N, d) real matrix on the ball, rows of an (N, m) complex
// matrix on the Bergman ball.

DiscConfiguration disc_config(const std::vector<std::complex<double>>& zs) {
  std::vector<DiscPoint> pts;
  pts.reserve(zs.size());
  for (const auto& z : zs) pts.emplace_back(z);
  return DiscConfiguration(std::move(pts));
}

BallConfiguration ball_config(const Eigen::MatrixXd& rows) {
  std::vector<BallPoint> pts;
  pts.reserve(static_cast<size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    pts.emplace_back(rows.row(i).transpose());
  }
  return BallConfiguration(std::move(pts));
}

BergmanConfiguration bergman_config(const Eigen::MatrixXcd& rows) {
  std::vector<CBallPoint> pts;
  pts.reserve(static_cast<size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    pts.emplace_back(rows.row(i).transpose());
  }
  return BergmanConfiguration(std::move(pts));
}

SwarmParams solver_from_kwargs(double coupling, double step, double tol,
                               long max_steps) {
  SwarmParams p;
  p.coupling = coupling;
  p.step = step;
  p.residual_tol = tol;
  p.max_steps = max_steps;
  return p;
}

template <class Model, class Raw>
py::dict barycenter_dict(const BarycenterResult<Model>& r, Raw&& raw_point) {
  py::dict d;
  d["point"] = raw_point(r.point);
  d["potential"] = r.potential;
  d["iterations"] = r.iterations;
  d["residual"] = r.residual;
  d["converged"] = r.converged;
  return d;
}

template <class Model, class Raw>
py::dict fit_dict(const FitResult<Model>& r, Raw&& raw_point) {
  py::dict d;
  d["a"] = raw_point(r.params.location());
  d["s"] = r.params.concentration();
  d["loglik"] = r.log_likelihood;
  d["barycenter_residual"] = r.barycenter_residual;
  d["s_equation_residual"] = r.s_equation_residual;
  d["n_obs"] = r.n_obs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hyperball, m) {
  m.doc() =
      "Barycenters, isometry-invariant distributions and maximum likelihood "
      "estimation on hyperbolic balls. Densities are with respect to the "
      "hyperbolic measure.";

  // ---- disc ----
  auto disc = m.def_submodule("disc", "Poincare disc (complex coordinates)");
  disc.def("distance", [](std::complex<double> z, std::complex<double> w) {
    return disc_distance(DiscPoint(z), DiscPoint(w));
  });
  disc.def("involution", [](std::complex<double> a, std::complex<double> z) {
    return kernels::disc_involution(a, z);
  });
  disc.def("potential",
           [](const std::vector<std::complex<double>>& zs,
              std::complex<double> a) {
             return potential(disc_config(zs), DiscPoint(a));
           });
  disc.def(
      "barycenter",
      [](const std::vector<std::complex<double>>& zs, double coupling,
         double step, double tol, long max_steps) {
        const auto r = barycenter(disc_config(zs),
                                  solver_from_kwargs(coupling, step, tol, max_steps));
        return barycenter_dict(r, [](const DiscPoint& p) { return p.value(); });
      },
      py::arg("points"), py::arg("coupling") = -1.0, py::arg("step") = 0.05,
      py::arg("tol") = 1e-10, py::arg("max_steps") = 1000000L);
  disc.def(
      "sample",
      [](std::complex<double> a, double s, int n, std::uint64_t seed) {
        MoebParams<DiscModel> params(DiscPoint(a), s);
        Rng rng(seed);
        std::vector<std::complex<double>> out;
        out.reserve(static_cast<size_t>(n));
        for (const auto& p : sample_many(params, n, rng)) {
          out.push_back(p.value());
        }
        return out;
      },
      py::arg("a"), py::arg("s"), py::arg("n"), py::arg("seed") = 0);
  disc.def(
      "fit",
      [](const std::vector<std::complex<double>>& zs) {
        const auto r = fit(disc_config(zs));
        return fit_dict(r, [](const DiscPoint& p) { return p.value(); });
      },
      py::arg("points"));
  disc.def("log_density",
           [](std::complex<double> a, double s, std::complex<double> z) {
             return log_density(MoebParams<DiscModel>(DiscPoint(a), s),
                                DiscPoint(z));
           });
  disc.def("radial_cdf",
           [](double s, double b) { return radial_cdf<DiscModel>(2, s, b); });
  disc.def("radial_quantile", [](double s, double kappa) {
    return radial_quantile<DiscModel>(2, s, kappa);
  });

  // ---- ball ----
  auto ball = m.def_submodule("ball", "Poincare ball (rows of real vectors)");
  ball.def("distance", [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return ball_distance(BallPoint(x), BallPoint(y));
  });
  ball.def("involution", [](const Eigen::VectorXd& a, const Eigen::VectorXd& x) {
    return Eigen::VectorXd(kernels::ball_involution(a, x));
  });
  ball.def("potential", [](const Eigen::MatrixXd& rows, const Eigen::VectorXd& a) {
    return potential(ball_config(rows), BallPoint(a));
  });
  ball.def(
      "barycenter",
      [](const Eigen::MatrixXd& rows, double coupling, double step, double tol,
         long max_steps) {
        const auto r = barycenter(ball_config(rows),
                                  solver_from_kwargs(coupling, step, tol, max_steps));
        return barycenter_dict(
            r, [](const BallPoint& p) { return Eigen::VectorXd(p.value()); });
      },
      py::arg("points"), py::arg("coupling") = -1.0, py::arg("step") = 0.05,
      py::arg("tol") = 1e-10, py::arg("max_steps") = 1000000L);
  ball.def(
      "sample",
      [](const Eigen::VectorXd& a, double s, int n, std::uint64_t seed) {
        MoebParams<BallModel> params(BallPoint(a), s);
        Rng rng(seed);
        Eigen::MatrixXd out(n, a.size());
        for (int i = 0; i < n; ++i) {
          out.row(i) = sample(params, rng).value().transpose();
        }
        return out;
      },
      py::arg("a"), py::arg("s"), py::arg("n"), py::arg("seed") = 0);
  ball.def(
      "fit",
      [](const Eigen::MatrixXd& rows) {
        const auto r = fit(ball_config(rows));
        return fit_dict(
            r, [](const BallPoint& p) { return Eigen::VectorXd(p.value()); });
      },
      py::arg("points"));
  ball.def("log_density", [](const Eigen::VectorXd& a, double s,
                             const Eigen::VectorXd& x) {
    return log_density(MoebParams<BallModel>(BallPoint(a), s), BallPoint(x));
  });
  ball.def("radial_cdf", [](int dim, double s, double b) {
    return radial_cdf<BallModel>(dim, s, b);
  });
  ball.def("radial_quantile", [](int dim, double s, double kappa) {
    return radial_quantile<BallModel>(dim, s, kappa);
  });

  // ---- bergman ----
  auto bergman =
      m.def_submodule("bergman", "Bergman ball (rows of complex vectors)");
  bergman.def("distance",
              [](const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) {
                return bergman_distance(CBallPoint(z), CBallPoint(w));
              });
  bergman.def("involution",
              [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& z) {
                return Eigen::VectorXcd(kernels::bergman_involution(a, z));
              });
  bergman.def("potential",
              [](const Eigen::MatrixXcd& rows, const Eigen::VectorXcd& a) {
                return potential(bergman_config(rows), CBallPoint(a));
              });
  bergman.def(
      "barycenter",
      [](const Eigen::MatrixXcd& rows, double coupling, double step,
         double tol, long max_steps) {
        const auto r = barycenter(bergman_config(rows),
                                  solver_from_kwargs(coupling, step, tol, max_steps));
        return barycenter_dict(
            r, [](const CBallPoint& p) { return Eigen::VectorXcd(p.value()); });
      },
      py::arg("points"), py::arg("coupling") = -1.0, py::arg("step") = 0.05,
      py::arg("tol") = 1e-10, py::arg("max_steps") = 1000000L);
  bergman.def(
      "sample",
      [](const Eigen::VectorXcd& a, double s, int n, std::uint64_t seed) {
        MoebParams<BergmanModel> params(CBallPoint(a), s);
        Rng rng(seed);
        Eigen::MatrixXcd out(n, a.size());
        for (int i = 0; i < n; ++i) {
          out.row(i) = sample(params, rng).value().transpose();
        }
        return out;
      },
      py::arg("a"), py::arg("s"), py::arg("n"), py::arg("seed") = 0);
  bergman.def(
      "fit",
      [](const Eigen::MatrixXcd& rows) {
        const auto r = fit(bergman_config(rows));
        return fit_dict(
            r, [](const CBallPoint& p) { return Eigen::VectorXcd(p.value()); });
      },
      py::arg("points"));
  bergman.def("log_density", [](const Eigen::VectorXcd& a, double s,
                                const Eigen::VectorXcd& z) {
    return log_density(MoebParams<BergmanModel>(CBallPoint(a), s),
                       CBallPoint(z));
  });
  bergman.def("radial_cdf", [](int dim, double s, double b) {
    return radial_cdf<BergmanModel>(dim, s, b);
  });
  bergman.def("radial_quantile", [](int dim, double s, double kappa) {
    return radial_quantile<BergmanModel>(dim, s, kappa);
  });

  // Shared special functions, handy for cross-checking.
  m.def("log_gamma", &log_gamma);
  m.def("digamma", &digamma);
  m.def("gauss_2f1", &gauss_2f1);
}
