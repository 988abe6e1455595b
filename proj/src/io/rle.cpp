#include "ovigo/io.hpp"

namespace ovigo {

std::vector<int64_t> rle_encode(const std::vector<uint8_t>& bits) {
  std::vector<int64_t> runs;
  std::size_t i = 0;
  while (i < bits.size()) {
    const uint8_t value = bits[i] ? 1 : 0;
    std::size_t j = i;
    while (j < bits.size() && (bits[j] ? 1 : 0) == value) ++j;
    runs.push_back(value);
    runs.push_back(static_cast<int64_t>(i));
    runs.push_back(static_cast<int64_t>(j - i));
    i = j;
  }
  return runs;
}

std::vector<uint8_t> rle_decode(const std::vector<int64_t>& runs,
                                std::size_t expected_cells) {
  if (runs.size() % 3 != 0) {
    throw Error(Errc::ParseError, "RLE length is not a multiple of 3");
  }
  std::vector<uint8_t> bits(expected_cells, 0);
  int64_t cursor = 0;
  for (std::size_t i = 0; i < runs.size(); i += 3) {
    const int64_t value = runs[i];
    const int64_t start = runs[i + 1];
    const int64_t length = runs[i + 2];
    if (value != 0 && value != 1) {
      throw Error(Errc::ParseError, "RLE value must be 0 or 1");
    }
    if (start != cursor || length <= 0) {
      throw Error(Errc::ParseError, "RLE runs must be contiguous from 0");
    }
    if (start + length > static_cast<int64_t>(expected_cells)) {
      throw Error(Errc::ParseError, "RLE runs exceed the grid size");
    }
    if (value == 1) {
      for (int64_t k = start; k < start + length; ++k) {
        bits[static_cast<std::size_t>(k)] = 1;
      }
    }
    cursor = start + length;
  }
  if (cursor != static_cast<int64_t>(expected_cells)) {
    throw Error(Errc::ParseError, "RLE runs do not cover the grid");
  }
  return bits;
}

}  // namespace ovigo
