#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttstokes/linalg.hpp"

namespace ttstokes::cli {

enum ExitCode { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Sorted keys, two-space indent, floats as %.12g, non-finite floats as null.
std::string dump_json(const nlohmann::json& j);

nlohmann::json complex_json(Complex z);
nlohmann::json complex_vector_json(const ComplexVector& v);
nlohmann::json complex_matrix_json(const ComplexMatrix& m);
nlohmann::json real_matrix_json(const RealMatrix& m);

// Empty when the envelope has every field its command requires, with the right JSON types.
std::vector<std::string> validate_envelope(const nlohmann::json& envelope);

}  // namespace ttstokes::cli
