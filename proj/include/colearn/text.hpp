#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace colearn {

/// Shortest decimal that parses back to the same double.
std::string format_real(double x);
/// 17 significant digits.
std::string format_real17(double x);

std::optional<double> try_parse_real(std::string_view s);
std::optional<std::int64_t> try_parse_int(std::string_view s);
/// Throw PreconditionError naming `what` on malformed input.
double parse_real(std::string_view s, std::string_view what);
std::int64_t parse_int(std::string_view s, std::string_view what);
std::uint64_t parse_u64(std::string_view s, std::string_view what);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace colearn
