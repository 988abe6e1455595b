#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "ovigo/error.hpp"

namespace ovigo {

using Json = nlohmann::json;

// Strict parse; failures become ParseError naming the source and byte offset.
Json parse_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, const std::string& context);

// Field fetch with a JSON-path-style error message.
const Json& require_field(const Json& j, const char* key, const std::string& context);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace ovigo
