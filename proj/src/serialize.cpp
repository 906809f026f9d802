#include "hyperball/serialize.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace hyperball {

FileFormat parse_format(const std::string& name) {
  if (name == "jsonl") return FileFormat::JsonLines;
  if (name == "csv") return FileFormat::Csv;
  throw std::invalid_argument("unknown format '" + name +
                              "' (expected jsonl or csv)");
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<double> parse_csv_doubles(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    size_t pos = 0;
    const double v = std::stod(field, &pos);
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<PointRecord> read_point_records(std::istream& in, FileFormat fmt) {
  std::vector<PointRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    PointRecord rec;
    if (fmt == FileFormat::JsonLines) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("bad JSON line: ") + e.what());
      }
      if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array()) {
        throw std::invalid_argument(
            "point line must be an object with a 'coords' array");
      }
      if (j.contains("model")) rec.model = j["model"].get<std::string>();
      for (const auto& c : j["coords"]) rec.coords.push_back(c.get<double>());
    } else {
      try {
        rec.coords = parse_csv_doubles(line);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad CSV point line: " + line);
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

namespace detail {

std::string point_json_line(const char* model,
                            const std::vector<double>& coords) {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["coords"] = coords;
  return j.dump();
}

std::string point_csv_line(const std::vector<double>& coords) {
  std::string line;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) line += ',';
    line += format_double(coords[i]);
  }
  return line;
}

}  // namespace detail

namespace {

template <class Model>
nlohmann::ordered_json result_header(int dim) {
  nlohmann::ordered_json j;
  j["model"] = Model::name();
  j["d_or_m"] = dim;
  return j;
}

}  // namespace

template <class Model>
std::string fit_result_json(const FitResult<Model>& result) {
  auto j = result_header<Model>(result.params.dim());
  j["a"] = detail::flat_coords(result.params.location());
  j["s"] = result.params.concentration();
  j["loglik"] = result.log_likelihood;
  j["residuals"] = {{"barycenter", result.barycenter_residual},
                    {"s_equation", result.s_equation_residual}};
  j["n_obs"] = result.n_obs;
  return j.dump();
}

template <class Model>
std::string barycenter_result_json(const BarycenterResult<Model>& result,
                                   int dim) {
  auto j = result_header<Model>(dim);
  j["point"] = detail::flat_coords(result.point);
  j["potential"] = result.potential;
  j["residual"] = result.residual;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  return j.dump();
}

template std::string fit_result_json<DiscModel>(const FitResult<DiscModel>&);
template std::string fit_result_json<BallModel>(const FitResult<BallModel>&);
template std::string fit_result_json<BergmanModel>(
    const FitResult<BergmanModel>&);
template std::string barycenter_result_json<DiscModel>(
    const BarycenterResult<DiscModel>&, int);
template std::string barycenter_result_json<BallModel>(
    const BarycenterResult<BallModel>&, int);
template std::string barycenter_result_json<BergmanModel>(
    const BarycenterResult<BergmanModel>&, int);

}  // namespace hyperball
