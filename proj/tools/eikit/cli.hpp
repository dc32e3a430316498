#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace eikit::cli {

// Exit statuses. Nothing else is ever returned.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;  // also domain errors
inline constexpr int kExitNonConvergence = 3;

/// Entry point behind `eikit <command> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Plain decimal or scientific notation ("-1.5", "2e-3", ".5"); rejects hex,
/// inf, nan and anything with trailing characters.
std::optional<double> parse_real(std::string_view text);

/// RFC 4180 field: quoted only when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

}  // namespace eikit::cli
