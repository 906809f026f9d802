// Command-line front end: sampling, fitting, barycenters, swarm traces and
// density grids on the Poincare disc, Poincare balls and Bergman balls.
//
// Exit codes: 0 success, 2 usage/invalid parameters, 3 I/O failure,
// 4 non-convergence, 5 degenerate data.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperball/barycenter.hpp"
#include "hyperball/distribution.hpp"
#include "hyperball/errors.hpp"
#include "hyperball/estimation.hpp"
#include "hyperball/geometry.hpp"
#include "hyperball/rng.hpp"
#include "hyperball/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNonConvergence = 4;
constexpr int kExitDegenerate = 5;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool log_enabled() {
  static const bool enabled = [] {
    const char* v = std::getenv("HYPERBALL_LOG");
    return v != nullptr && std::string(v) != "" && std::string(v) != "0";
  }();
  return enabled;
}

void log_info(const std::string& msg) {
  if (log_enabled()) std::cerr << "[hyperball] " << msg << "\n";
}

struct Options {
  std::string model = "disc";
  int dim = 0;  // 0 = infer
  std::vector<double> a;
  double s = 2.0;
  int n = 1;
  std::uint64_t seed = 0;
  std::string in_path;
  std::string out_path;
  std::string format = "jsonl";
  double coupling = -1.0;
  double step = 0.05;
  double tol = 1e-10;
  long max_steps = 1000000;
  double t_end = 10.0;
  int resolution = 100;
};

hyperball::SwarmParams solver_params(const Options& opt) {
  hyperball::SwarmParams p;
  p.coupling = opt.coupling;
  p.step = opt.step;
  p.residual_tol = opt.tol;
  p.max_steps = opt.max_steps;
  return p;
}

// Output sink: file or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoFailure("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    if (file_.is_open()) {
      file_.flush();
      if (!file_) throw IoFailure("failed writing output file");
    }
  }

 private:
  std::ofstream file_;
};

std::vector<hyperball::PointRecord> read_records(const Options& opt) {
  const auto fmt = hyperball::parse_format(opt.format);
  if (opt.in_path.empty() || opt.in_path == "-") {
    return hyperball::read_point_records(std::cin, fmt);
  }
  std::ifstream in(opt.in_path, std::ios::binary);
  if (!in) throw IoFailure("cannot open input file: " + opt.in_path);
  return hyperball::read_point_records(in, fmt);
}

// Model dimension: explicit flag, else inferred from --a or the first input
// record.
template <class Model>
int resolve_dim(const Options& opt, const std::vector<hyperball::PointRecord>* records) {
  if constexpr (std::is_same_v<Model, hyperball::DiscModel>) {
    if (opt.dim != 0 && opt.dim != 2) {
      throw std::invalid_argument("disc model has dimension 2");
    }
    return 2;
  } else {
    constexpr int per = std::is_same_v<Model, hyperball::BergmanModel> ? 2 : 1;
    if (opt.dim > 0) return opt.dim;
    if (!opt.a.empty()) return static_cast<int>(opt.a.size()) / per;
    if (records && !records->empty()) {
      return static_cast<int>(records->front().coords.size()) / per;
    }
    throw std::invalid_argument("--dim is required for this model");
  }
}

template <class Model>
typename Model::Point location_from_flag(const Options& opt, int dim) {
  if (opt.a.empty()) return Model::origin(dim);
  return hyperball::detail::point_from_coords<Model>(opt.a, dim);
}

template <class Model>
int run_sample(const Options& opt) {
  const int dim = resolve_dim<Model>(opt, nullptr);
  const auto a = location_from_flag<Model>(opt, dim);
  hyperball::MoebParams<Model> params(a, opt.s);
  hyperball::Rng rng(opt.seed);
  const auto points = hyperball::sample_many(params, opt.n, rng);
  Sink sink(opt.out_path);
  hyperball::write_points<Model>(sink.stream(), points,
                                 hyperball::parse_format(opt.format));
  sink.finish();
  log_info("sampled " + std::to_string(opt.n) + " points (model " +
           Model::name() + ", seed " + std::to_string(opt.seed) + ")");
  return kExitOk;
}

template <class Model>
int run_barycenter(const Options& opt) {
  const auto records = read_records(opt);
  const int dim = resolve_dim<Model>(opt, &records);
  const auto config =
      hyperball::configuration_from_records<Model>(records, dim);
  const auto result = hyperball::barycenter(config, solver_params(opt));
  Sink sink(opt.out_path);
  sink.stream() << hyperball::barycenter_result_json(result, dim) << '\n';
  sink.finish();
  log_info("barycenter: " + std::to_string(result.iterations) +
           " steps, residual " + hyperball::format_double(result.residual));
  return result.converged ? kExitOk : kExitNonConvergence;
}

template <class Model>
int run_fit(const Options& opt) {
  const auto records = read_records(opt);
  const int dim = resolve_dim<Model>(opt, &records);
  const auto config =
      hyperball::configuration_from_records<Model>(records, dim);
  const auto result = hyperball::fit(config, solver_params(opt));
  Sink sink(opt.out_path);
  sink.stream() << hyperball::fit_result_json(result) << '\n';
  sink.finish();
  log_info("fit: s = " +
           hyperball::format_double(result.params.concentration()));
  return kExitOk;
}

template <class Model>
int run_swarm_trace(const Options& opt) {
  const auto records = read_records(opt);
  const int dim = resolve_dim<Model>(opt, &records);
  const auto config =
      hyperball::configuration_from_records<Model>(records, dim);
  const auto traj =
      hyperball::swarm_integrate(config, solver_params(opt), opt.t_end);
  Sink sink(opt.out_path);
  hyperball::write_swarm_csv(sink.stream(), traj);
  sink.finish();
  return kExitOk;
}

template <class Model>
int run_density_grid(const Options& opt) {
  const int dim = resolve_dim<Model>(opt, nullptr);
  const auto a = location_from_flag<Model>(opt, dim);
  hyperball::MoebParams<Model> params(a, opt.s);
  Sink sink(opt.out_path);
  hyperball::write_density_grid_csv(sink.stream(), params, opt.resolution);
  sink.finish();
  return kExitOk;
}

int dispatch(const std::string& model, const Options& opt,
             int (*disc)(const Options&), int (*ball)(const Options&),
             int (*bergman)(const Options&)) {
  if (model == "disc") return disc(opt);
  if (model == "ball") return ball(opt);
  if (model == "bergman") return bergman(opt);
  throw std::invalid_argument("unknown model '" + model +
                              "' (expected disc, ball or bergman)");
}

void add_model_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--model", opt.model, "Model: disc, ball or bergman")
      ->required();
  cmd->add_option("--dim", opt.dim,
                  "Model dimension (d for ball, m for bergman)");
}

void add_solver_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--K", opt.coupling, "Swarm coupling (negative descends)");
  cmd->add_option("--step", opt.step, "Integrator step size");
  cmd->add_option("--tol", opt.tol, "Residual tolerance");
  cmd->add_option("--max-steps", opt.max_steps, "Step budget");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hyperball: barycenters, isometry-invariant distributions and maximum\n"
      "likelihood estimation on hyperbolic balls (Poincare disc, Poincare\n"
      "ball, Bergman ball). Densities are taken with respect to the\n"
      "hyperbolic measure dLambda, not Lebesgue measure."};
  app.require_subcommand(1);

  Options opt;

  auto* sample = app.add_subcommand("sample", "Draw points from Moeb/HolNat(a, s)");
  add_model_flags(sample, opt);
  sample->add_option("--a", opt.a, "Location (complex entries as re,im pairs)")
      ->delimiter(',');
  sample->add_option("--s", opt.s, "Concentration")->required();
  sample->add_option("--n", opt.n, "Number of samples");
  sample->add_option("--seed", opt.seed, "RNG seed");
  sample->add_option("--out", opt.out_path, "Output path (default stdout)");
  sample->add_option("--format", opt.format, "jsonl or csv");

  auto* bary = app.add_subcommand("barycenter", "Barycenter of a configuration");
  add_model_flags(bary, opt);
  bary->add_option("--in", opt.in_path, "Input points (default stdin)");
  bary->add_option("--format", opt.format, "jsonl or csv");
  bary->add_option("--out", opt.out_path, "Output path (default stdout)");
  add_solver_flags(bary, opt);

  auto* fit = app.add_subcommand("fit", "Maximum likelihood fit of (a, s)");
  add_model_flags(fit, opt);
  fit->add_option("--in", opt.in_path, "Input samples (default stdin)");
  fit->add_option("--format", opt.format, "jsonl or csv");
  fit->add_option("--out", opt.out_path, "Output path (default stdout)");
  add_solver_flags(fit, opt);

  auto* trace = app.add_subcommand("swarm-trace", "Integrate the swarm ODE");
  add_model_flags(trace, opt);
  trace->add_option("--in", opt.in_path, "Input configuration (default stdin)");
  trace->add_option("--format", opt.format, "jsonl or csv");
  trace->add_option("--out", opt.out_path, "Output CSV path (default stdout)");
  trace->add_option("--t-end", opt.t_end, "Integration horizon");
  add_solver_flags(trace, opt);

  auto* grid = app.add_subcommand("density-grid", "Density on a coordinate grid");
  add_model_flags(grid, opt);
  grid->add_option("--a", opt.a, "Location (complex entries as re,im pairs)")
      ->delimiter(',');
  grid->add_option("--s", opt.s, "Concentration")->required();
  grid->add_option("--resolution", opt.resolution, "Grid cells per axis");
  grid->add_option("--out", opt.out_path, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sample->parsed()) {
      return dispatch(opt.model, opt, run_sample<hyperball::DiscModel>,
                      run_sample<hyperball::BallModel>,
                      run_sample<hyperball::BergmanModel>);
    }
    if (bary->parsed()) {
      return dispatch(opt.model, opt, run_barycenter<hyperball::DiscModel>,
                      run_barycenter<hyperball::BallModel>,
                      run_barycenter<hyperball::BergmanModel>);
    }
    if (fit->parsed()) {
      return dispatch(opt.model, opt, run_fit<hyperball::DiscModel>,
                      run_fit<hyperball::BallModel>,
                      run_fit<hyperball::BergmanModel>);
    }
    if (trace->parsed()) {
      return dispatch(opt.model, opt, run_swarm_trace<hyperball::DiscModel>,
                      run_swarm_trace<hyperball::BallModel>,
                      run_swarm_trace<hyperball::BergmanModel>);
    }
    if (grid->parsed()) {
      return dispatch(opt.model, opt, run_density_grid<hyperball::DiscModel>,
                      run_density_grid<hyperball::BallModel>,
                      run_density_grid<hyperball::BergmanModel>);
    }
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const hyperball::DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const hyperball::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const hyperball::StepFailureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
