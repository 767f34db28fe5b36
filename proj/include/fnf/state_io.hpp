#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fnf/algorithms.hpp"
#include "fnf/states.hpp"

namespace fnf {

/// Malformed state file (bad JSON, shapes, or a non-Hermitian matrix).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Parses {"k", "m", "matrix": rows of [re, im]}. Throws FormatError or NotPsdError.
BipartiteState read_state(std::istream& in, const Tolerances& tol = {});
BipartiteState read_state_file(const std::string& path, const Tolerances& tol = {});

nlohmann::json state_json(const BipartiteState& a);
void write_state(std::ostream& out, const BipartiteState& a);
void write_state_file(const std::string& path, const BipartiteState& a);

nlohmann::json matrix_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json verdict_json(const Verdict& v);

}  // namespace fnf
