#pragma once

// Byte-level text helpers shared by every stage of the pipeline.
//
// Internally all offsets are UTF-8 byte offsets. Anything that leaves the
// process (wire protocol, JSON reports, span listings) speaks code-point
// offsets, converted with the helpers at the bottom of this header.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexqa {

inline bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// ASCII alphanumerics and every non-ASCII byte count as word characters.
inline bool is_word_char(char c) noexcept {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
}

std::string_view trim(std::string_view s) noexcept;

/// Maximal whitespace-delimited runs, in order.
std::vector<std::string_view> whitespace_tokens(std::string_view s);

/// Byte ranges [first, second) of the whitespace-delimited runs.
std::vector<std::pair<std::size_t, std::size_t>> whitespace_token_ranges(std::string_view s);

/// Lowercased, punctuation-stripped word terms: maximal runs of word
/// characters. "Art 33(1)" -> {"art", "33", "1"}.
std::vector<std::string> terms(std::string_view s);

std::string to_lower_ascii(std::string_view s);

std::string sha256_hex(std::string_view data);

// UTF-8 offset conversion. Decoding is lenient: every byte that is not a
// continuation byte (10xxxxxx) starts a code point.

inline bool is_utf8_continuation(char c) noexcept {
    return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

/// Strict UTF-8 well-formedness (no overlongs, surrogates, or > U+10FFFF).
bool valid_utf8(std::string_view s) noexcept;

std::size_t codepoint_count(std::string_view s) noexcept;

/// Code-point index of byte offset `byte` (clamped to s.size()).
std::size_t byte_to_codepoint(std::string_view s, std::size_t byte) noexcept;

/// Byte offset of code point `cp`; nullopt when cp > codepoint_count(s).
std::optional<std::size_t> codepoint_to_byte(std::string_view s, std::size_t cp) noexcept;

/// True when `byte` is 0, s.size(), or the start of a code point.
bool on_codepoint_boundary(std::string_view s, std::size_t byte) noexcept;

}  // namespace lexqa
