#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 <-> scalar conversion and the character classes the preprocessing
// and analyzers rely on. Text is stored as UTF-8 std::string everywhere;
// scalar-level work happens on std::u32string.
namespace adi::unicode {

// Returns false if `bytes` is not well-formed UTF-8 (overlongs, surrogates
// and scalars above U+10FFFF are rejected).
bool is_valid_utf8(std::string_view bytes);

// Throws Error(InvalidEncoding) on malformed input.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view scalars);
void append_utf8(std::string& out, char32_t scalar);

std::size_t scalar_count(std::string_view utf8);

bool is_whitespace(char32_t c);
bool is_arabic(char32_t c);
bool is_punctuation(char32_t c);  // general category P*
bool is_emoji(char32_t c);

// Maximal runs of non-whitespace scalars.
std::vector<std::u32string_view> split_whitespace(std::u32string_view text);
std::vector<std::string> split_whitespace(std::string_view utf8);

std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ");

}  // namespace adi::unicode
