#include "ovigo/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

namespace ovigo {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string format_meters(double meters) {
  const long long tenths = std::llround(meters * 10.0);
  if (tenths % 10 == 0) return std::to_string(tenths / 10);
  std::string s = std::to_string(tenths / 10);
  s += '.';
  s += static_cast<char>('0' + std::llabs(tenths % 10));
  return s;
}

std::string format_coord(double v) {
  long long tenths = std::llround(v * 10.0);
  std::string s;
  if (tenths < 0) {
    s += '-';
    tenths = -tenths;
  }
  s += std::to_string(tenths / 10);
  s += '.';
  s += static_cast<char>('0' + tenths % 10);
  return s;
}

namespace {

// Lowercase, collapse runs of whitespace to single spaces.
std::string normalize_for_trigrams(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char raw : s) {
    const unsigned char c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

std::unordered_map<std::string, int> trigram_counts(const std::string& s) {
  // Boundary padding so one- and two-character tags still produce trigrams.
  const std::string padded = "\x02\x02" + s + "\x03\x03";
  std::unordered_map<std::string, int> counts;
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    ++counts[padded.substr(i, 3)];
  }
  return counts;
}

}  // namespace

double trigram_cosine(std::string_view a, std::string_view b) {
  const std::string na = normalize_for_trigrams(a);
  const std::string nb = normalize_for_trigrams(b);
  if (na.empty() || nb.empty()) return 0.0;
  const auto ca = trigram_counts(na);
  const auto cb = trigram_counts(nb);
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (const auto& [gram, n] : ca) {
    norm_a += static_cast<double>(n) * n;
    auto it = cb.find(gram);
    if (it != cb.end()) dot += static_cast<double>(n) * it->second;
  }
  for (const auto& [gram, n] : cb) norm_b += static_cast<double>(n) * n;
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const std::size_t close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        const std::string key(tmpl.substr(i + 1, close - i - 1));
        auto it = values.find(key);
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i];
    ++i;
  }
  return out;
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view data) {
  static const char* digits = "0123456789abcdef";
  uint64_t h = fnv1a64(data);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace ovigo
