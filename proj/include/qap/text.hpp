#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qap {

using Tokens = std::vector<std::string>;

// Lowercased word tokens. Punctuation separates tokens and is dropped; an
// apostrophe between two word characters stays inside the word ("isn't").
// U+2019 is normalized to an ASCII apostrophe.
Tokens tokenize(std::string_view text);

std::string_view trim(std::string_view s);

// Number of Unicode code points in a UTF-8 string. Invalid lead bytes count
// as one code point each.
std::size_t codepoint_count(std::string_view text);

// Byte view of the code-point interval [start, end). Out-of-range bounds are
// clamped; callers validate spans separately.
std::string_view slice_codepoints(std::string_view text, std::size_t start, std::size_t end);

}  // namespace qap
