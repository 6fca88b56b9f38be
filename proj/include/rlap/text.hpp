#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rlap {

// Trims both ends and collapses internal whitespace runs to a single space.
std::string canonical_text(std::string_view s);

std::string lower_ascii(std::string_view s);

// Byte equality after canonical_text on both sides.
bool canonical_eq(std::string_view a, std::string_view b);

// Same, but ASCII case-insensitive.
bool canonical_eq_folded(std::string_view a, std::string_view b);

// Maximal runs of [A-Za-z0-9] plus any byte >= 0x80. Views into the input.
std::vector<std::string_view> tokenize(std::string_view s);

// Executor output contract: the payload sits on a line prefixed "Answer:".
// Returns the trimmed text after the last such prefix (to end of line), or
// the whole trimmed text when no prefix is present.
std::string parse_payload(std::string_view executor_text);

std::optional<int> first_integer(std::string_view s);
std::optional<char> first_letter_upper(std::string_view s);

// Sentence split on . ? ! and their fullwidth/CJK forms; a closing quote or
// bracket immediately after the terminator stays with its sentence.
std::vector<std::string> split_sentences(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace rlap
