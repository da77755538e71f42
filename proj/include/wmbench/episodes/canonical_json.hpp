#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace wmbench {

using Json = nlohmann::json;

/// Deterministic JSON text: object keys sorted, one member per line,
/// arrays of scalars on a single line, reals via format_real.
std::string dump_canonical(const Json& value);

/// Parses JSON text; throws FormatError with the parser message on failure.
Json parse_json(const std::string& text, const std::string& origin);

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Typed accessors that raise FormatError naming the missing/bad key.
const Json& require(const Json& object, const char* key);
double require_real(const Json& object, const char* key);

}  // namespace wmbench
