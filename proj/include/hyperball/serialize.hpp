#pragma once

#include <iostream>
#include <string>
#include <vector>

#include "hyperball/barycenter.hpp"
#include "hyperball/distribution.hpp"
#include "hyperball/estimation.hpp"
#include "hyperball/geometry.hpp"

namespace hyperball {

enum class FileFormat { JsonLines, Csv };

/// Accepts "jsonl" or "csv".
FileFormat parse_format(const std::string& name);

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

/// One parsed input row: the model tag (empty for CSV rows) and the
/// flattened real coordinates (complex entries as re, im pairs).
struct PointRecord {
  std::string model;
  std::vector<double> coords;
};

std::vector<PointRecord> read_point_records(std::istream& in, FileFormat fmt);

namespace detail {

inline std::vector<double> flat_coords(const DiscPoint& p) {
  return {p.value().real(), p.value().imag()};
}
inline std::vector<double> flat_coords(const BallPoint& p) {
  return {p.value().data(), p.value().data() + p.value().size()};
}
inline std::vector<double> flat_coords(const CBallPoint& p) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(2 * p.dim()));
  for (int k = 0; k < p.dim(); ++k) {
    out.push_back(p.value()[k].real());
    out.push_back(p.value()[k].imag());
  }
  return out;
}

template <class Model>
int flat_coord_count(int dim) {
  return Model::ambient_real_dim(dim);
}

template <class Model>
typename Model::Point point_from_coords(const std::vector<double>& coords,
                                        int dim) {
  if (static_cast<int>(coords.size()) != flat_coord_count<Model>(dim)) {
    throw std::invalid_argument("point record has the wrong coordinate count");
  }
  if constexpr (std::is_same_v<Model, DiscModel>) {
    return DiscPoint(coords[0], coords[1]);
  } else if constexpr (std::is_same_v<Model, BallModel>) {
    Eigen::VectorXd x(dim);
    for (int k = 0; k < dim; ++k) x[k] = coords[static_cast<size_t>(k)];
    return BallPoint(x);
  } else {
    Eigen::VectorXcd z(dim);
    for (int k = 0; k < dim; ++k) {
      z[k] = std::complex<double>(coords[static_cast<size_t>(2 * k)],
                                  coords[static_cast<size_t>(2 * k + 1)]);
    }
    return CBallPoint(z);
  }
}

std::string point_json_line(const char* model,
                            const std::vector<double>& coords);
std::string point_csv_line(const std::vector<double>& coords);

}  // namespace detail

/// Builds a typed configuration from parsed records, enforcing the model tag
/// (when present) and the coordinate count.
template <class Model>
Configuration<Model> configuration_from_records(
    const std::vector<PointRecord>& records, int dim) {
  std::vector<typename Model::Point> pts;
  pts.reserve(records.size());
  for (const auto& rec : records) {
    if (!rec.model.empty() && rec.model != Model::name()) {
      throw std::invalid_argument("input point tagged with model '" +
                                  rec.model + "', expected '" + Model::name() +
                                  "'");
    }
    pts.push_back(detail::point_from_coords<Model>(rec.coords, dim));
  }
  return Configuration<Model>(std::move(pts));
}

template <class Model>
void write_points(std::ostream& out,
                  const std::vector<typename Model::Point>& points,
                  FileFormat fmt) {
  for (const auto& p : points) {
    const auto coords = detail::flat_coords(p);
    if (fmt == FileFormat::JsonLines) {
      out << detail::point_json_line(Model::name(), coords) << '\n';
    } else {
      out << detail::point_csv_line(coords) << '\n';
    }
  }
}

/// Flow trajectory: one row per sample, columns t, point coordinates,
/// potential, residual.
template <class Model>
void write_flow_csv(std::ostream& out, const FlowPath<Model>& path, int dim) {
  const int k = detail::flat_coord_count<Model>(dim);
  out << "t";
  for (int c = 0; c < k; ++c) out << ",a_" << c;
  out << ",potential,residual\n";
  for (const auto& s : path) {
    out << format_double(s.t);
    const auto coords = detail::flat_coords(Model::make_point(s.a));
    for (double v : coords) out << ',' << format_double(v);
    out << ',' << format_double(s.potential) << ',' << format_double(s.residual)
        << '\n';
  }
}

/// Swarm trajectory: one row per recorded time, all point coordinates, the
/// potential at the origin, the balance residual |mean z| and the maximal
/// pairwise hyperbolic distance drift from the initial configuration.
template <class Model>
void write_swarm_csv(std::ostream& out, const SwarmTrajectory<Model>& traj) {
  if (traj.states.empty()) return;
  const int n = traj.states.front().size();
  const int dim = traj.states.front().dim();
  const int k = detail::flat_coord_count<Model>(dim);

  out << "t";
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < k; ++c) out << ",p" << i << "_" << c;
  }
  out << ",potential,residual,distance_drift\n";

  const Eigen::MatrixXd d0 = pairwise_distance_matrix(traj.states.front());
  for (size_t row = 0; row < traj.states.size(); ++row) {
    const auto& config = traj.states[row];
    out << format_double(traj.times[row]);
    for (const auto& p : config.points()) {
      for (double v : detail::flat_coords(p)) out << ',' << format_double(v);
    }
    const Eigen::MatrixXd d = pairwise_distance_matrix(config);
    const double drift = (d - d0).cwiseAbs().maxCoeff();
    double mean_norm = 0.0;
    {
      const auto pts = detail::pack(config);
      const Eigen::ArrayXd w = Eigen::ArrayXd::Constant(n, 1.0 / n);
      using Vec = typename Model::Vector;
      const Vec origin = Model::value(Model::origin(dim));
      mean_norm =
          std::sqrt(Model::norm_sq(Vec(detail::pushed_mean(pts, origin, w))));
    }
    out << ',' << format_double(traj.energies[row]) << ','
        << format_double(mean_norm) << ',' << format_double(drift) << '\n';
  }
}

/// Density on the 2-D slice spanned by the first two real coordinates:
/// rows x,y,density with the density field left empty outside the ball.
template <class Model>
void write_density_grid_csv(std::ostream& out, const MoebParams<Model>& params,
                            int resolution) {
  if (resolution < 2) {
    throw std::invalid_argument("density grid resolution must be >= 2");
  }
  out << "x,y,density\n";
  const int dim = params.dim();
  const double cell = 2.0 / resolution;
  for (int i = 0; i < resolution; ++i) {
    const double x = -1.0 + (i + 0.5) * cell;
    for (int j = 0; j < resolution; ++j) {
      const double y = -1.0 + (j + 0.5) * cell;
      out << format_double(x) << ',' << format_double(y) << ',';
      if (x * x + y * y < 1.0 - 1e-12) {
        typename Model::Vector v;
        if constexpr (std::is_same_v<Model, DiscModel>) {
          v = std::complex<double>(x, y);
        } else if constexpr (std::is_same_v<Model, BallModel>) {
          Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
          p[0] = x;
          p[1] = y;
          v = p;
        } else {
          Eigen::VectorXcd p = Eigen::VectorXcd::Zero(dim);
          p[0] = std::complex<double>(x, y);
          v = p;
        }
        out << format_double(
            std::exp(log_density(params, Model::make_point(v))));
      }
      out << '\n';
    }
  }
}

/// {model, d_or_m, a, s, loglik, residuals, n_obs}
template <class Model>
std::string fit_result_json(const FitResult<Model>& result);

/// {model, d_or_m, point, potential, residual, iterations, converged}
template <class Model>
std::string barycenter_result_json(const BarycenterResult<Model>& result,
                                   int dim);

}  // namespace hyperball
