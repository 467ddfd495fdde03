#pragma once

#include <string>

#include <json.hpp>

#include "specflow/lattice_operator.hpp"
#include "specflow/spectral_flow.hpp"

namespace specflow {

using Json = nlohmann::json;

Json to_json(const LaurentSymbol& symbol);
Json to_json(const LatticeOperator& op);
LatticeOperator operator_from_json(const Json& j);

Json to_json(const FlowReport& report);

/// Columns s, lambda_1, ..., lambda_k; shorter rows are padded with empty
/// cells.
std::string curves_csv(const FlowReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace specflow
