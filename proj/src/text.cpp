#include "rlap/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace rlap {

namespace {

bool is_space_byte(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

// Decodes one UTF-8 code point starting at i; advances i. Invalid bytes are
// passed through as-is so malformed input still round-trips.
std::uint32_t next_codepoint(std::string_view s, std::size_t& i) {
  const unsigned char b0 = s[i];
  std::size_t len = 1;
  std::uint32_t cp = b0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  }
  if (i + len > s.size()) len = 1, cp = b0;
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char bk = s[i + k];
    if ((bk & 0xC0) != 0x80) {
      len = 1;
      cp = b0;
      break;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

bool is_sentence_terminal(std::uint32_t cp) {
  return cp == '.' || cp == '?' || cp == '!' || cp == 0x3002 /* 。 */ ||
         cp == 0xFF1F /* ？ */ || cp == 0xFF01 /* ！ */;
}

bool is_trailing_quote(std::uint32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == 0x201D /* ” */ ||
         cp == 0x2019 /* ’ */ || cp == 0x300D /* 」 */ || cp == 0x300F /* 』 */ ||
         cp == 0xFF09 /* ） */;
}

}  // namespace

std::string canonical_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (const char ch : s) {
    if (is_space_byte(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(ch);
  }
  return out;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool canonical_eq(std::string_view a, std::string_view b) {
  return canonical_text(a) == canonical_text(b);
}

bool canonical_eq_folded(std::string_view a, std::string_view b) {
  return lower_ascii(canonical_text(a)) == lower_ascii(canonical_text(b));
}

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !is_word_byte(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && is_word_byte(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) tokens.push_back(s.substr(start, i - start));
  }
  return tokens;
}

std::string parse_payload(std::string_view executor_text) {
  static constexpr std::string_view kPrefix = "Answer:";
  const std::size_t pos = executor_text.rfind(kPrefix);
  std::string_view payload = executor_text;
  if (pos != std::string_view::npos) {
    payload = executor_text.substr(pos + kPrefix.size());
    const std::size_t eol = payload.find('\n');
    if (eol != std::string_view::npos) payload = payload.substr(0, eol);
  }
  return canonical_text(payload);
}

std::optional<int> first_integer(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && !std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == s.size()) return std::nullopt;
  long value = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    value = value * 10 + (s[i] - '0');
    if (value > 1'000'000) return std::nullopt;  // nonsense index
    ++i;
  }
  return static_cast<int>(value);
}

std::optional<char> first_letter_upper(std::string_view s) {
  for (const char ch : s) {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      return static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
  }
  return std::nullopt;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const std::uint32_t cp = next_codepoint(text, i);
    current.append(text.substr(start, i - start));
    if (!is_sentence_terminal(cp)) continue;
    // absorb closing quotes/brackets that follow the terminator
    while (i < text.size()) {
      std::size_t peek = i;
      const std::uint32_t nxt = next_codepoint(text, peek);
      if (!is_trailing_quote(nxt)) break;
      current.append(text.substr(i, peek - i));
      i = peek;
    }
    std::string trimmed = canonical_text(current);
    if (!trimmed.empty()) sentences.push_back(std::move(trimmed));
    current.clear();
  }
  std::string tail = canonical_text(current);
  if (!tail.empty()) sentences.push_back(std::move(tail));
  return sentences;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace rlap
