#include "fnf/state_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace fnf {

using nlohmann::json;

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw FormatError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw FormatError("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw FormatError("matrix entries must be [re, im] pairs");
      }
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("non-finite matrix entry");
      m(i, c) = Complex(re, im);
    }
  }
  return m;
}

BipartiteState read_state(std::istream& in, const Tolerances& tol) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("k") || !j.contains("m") || !j.contains("matrix")) {
    throw FormatError("state file needs k, m and matrix");
  }
  if (!j["k"].is_number_integer() || !j["m"].is_number_integer()) {
    throw FormatError("k and m must be integers");
  }
  const auto k = j["k"].get<long long>();
  const auto m = j["m"].get<long long>();
  if (k <= 0 || m <= 0) throw FormatError("k and m must be positive");
  const ComplexMatrix rho = matrix_from_json(j["matrix"]);
  if (rho.rows() != k * m || rho.cols() != k * m) throw FormatError("matrix order must be k*m");
  const double scale = std::max(max_abs(rho), 1e-300);
  if (max_abs(ComplexMatrix(rho - rho.adjoint())) > 1e-12 * scale) {
    throw FormatError("matrix is not Hermitian");
  }
  return BipartiteState(k, m, HermitianMatrix(rho), tol);
}

BipartiteState read_state_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_state(in, tol);
}

json state_json(const BipartiteState& a) {
  return json{{"k", a.k()}, {"m", a.m()}, {"matrix", matrix_json(a.matrix())}};
}

void write_state(std::ostream& out, const BipartiteState& a) { out << state_json(a).dump() << '\n'; }

void write_state_file(const std::string& path, const BipartiteState& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_state(out, a);
}

json verdict_json(const Verdict& v) {
  json blocks = json::array();
  for (const auto& b : v.blocks) blocks.push_back({{"rank", b.v.rank()}, {"lambda", b.lambda}});
  json out{{"outcome", to_string(v.outcome)},
           {"blocks", blocks},
           {"min_f", nullptr},
           {"gram_min_eig", nullptr},
           {"iterations", v.iterations},
           {"flags", v.flags}};
  if (v.witness) {
    out["stage"] = to_string(v.witness->stage);
    if (v.witness->min_f) out["min_f"] = *v.witness->min_f;
    if (v.witness->gram_min_eig) out["gram_min_eig"] = *v.witness->gram_min_eig;
    if (v.witness->stage != Stage::NoFullRankVector) out["witness_rank"] = v.witness->v.rank();
  }
  return out;
}

}  // namespace fnf
