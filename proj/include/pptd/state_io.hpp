#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pptd/hermitian.hpp"

namespace pptd {

/// JSON operator format:
///
///   {"dims": [dA, dB], "re": [[...], ...], "im": [[...], ...]}
///
/// Rows are listed in order, row-major. "im" may be omitted for real
/// operators. Shapes with more than two subsystems must also give
/// "side_b": the list of subsystem indices forming side B.
nlohmann::json operator_to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const nlohmann::json& doc);

/// Parses text and validates as a state. Malformed JSON is reported with its
/// line and column.
DensityMatrix parse_state(std::string_view text);
HermitianOperator parse_operator(std::string_view text);
DensityMatrix read_state_file(const std::string& path);

/// {"re": [[...]], "im": [[...]]} for a k x k correlation matrix.
CorrelationMatrix parse_correlation_matrix(std::string_view text);
CorrelationMatrix read_correlation_file(const std::string& path);

std::string write_state(const HermitianOperator& op);

}  // namespace pptd
