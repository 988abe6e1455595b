#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ovigo {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Distance rendered for prompts: rounded to 0.1 m, integral values without a
// decimal part ("3", "2.5").
std::string format_meters(double meters);

// Fixed-point "x.y" with one decimal, used for bbox centers in prompts.
std::string format_coord(double v);

// Cosine similarity between character-trigram count vectors of the two
// strings (lowercased, whitespace-collapsed, with boundary padding). Returns
// a value in [0, 1]; 1 iff the normalized strings are equal and non-empty.
double trigram_cosine(std::string_view a, std::string_view b);

// Replaces "{key}" placeholders; unknown placeholders are left untouched.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values);

uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

}  // namespace ovigo
