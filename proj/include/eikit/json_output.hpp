#pragma once

#include <string>

#include <json.hpp>

namespace eikit {

/// Like json::dump, but floating-point values are written with 17 significant
/// digits (exact round trip for binary64) and non-finite values as null.
std::string dump_json(const nlohmann::ordered_json& value, int indent = 2);

/// "%.17g"
std::string format_real(double value);

}  // namespace eikit
