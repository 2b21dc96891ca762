#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace namebias::text {

// Decodes the UTF-8 codepoint starting at `pos` and advances `pos` past it.
// A malformed byte decodes as itself so scanning always makes progress.
char32_t decode_at(std::string_view s, std::size_t& pos);

// Letters for word-boundary purposes: ASCII plus the Latin, Greek and
// Cyrillic blocks that cover the bundled name pools. Digits, punctuation
// (including U+2019), and whitespace are non-letters.
bool is_letter(char32_t cp);

// A match starting at `pos` is boundary-valid when the codepoint ending at
// `pos` is absent or not a letter.
bool boundary_before(std::string_view s, std::size_t pos);
// A match ending at `end` is boundary-valid when the codepoint starting at
// `end` is absent or not a letter.
bool boundary_after(std::string_view s, std::size_t end);

// Number of maximal whitespace-separated tokens.
std::size_t word_count(std::string_view s);

// Word-boundary occurrences of `term` in `s`. With `fold_case`, both sides
// are ASCII-lowered before comparison.
std::size_t count_occurrences(std::string_view s, std::string_view term,
                              bool fold_case = false);
bool contains_word(std::string_view s, std::string_view term);

std::string ascii_lower(std::string_view s);
std::string trim(std::string_view s);

// Byte length of a possessive marker ("'s" or U+2019 "s") at `pos`, or 0.
std::size_t possessive_length(std::string_view s, std::size_t pos);

}  // namespace namebias::text
