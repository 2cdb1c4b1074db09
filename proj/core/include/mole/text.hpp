#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mole {

/// ASCII lower-casing. Option literals and gold values in this domain are
/// ASCII; full Unicode folding is intentionally out of scope.
std::string fold_case(std::string_view s);

std::string trim(std::string_view s);

/// Whitespace-separated tokens. Used for answer word counts.
std::vector<std::string> split_words(std::string_view s);

std::size_t word_count(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

/// Lightweight well-formedness check: scheme://host with a non-empty host
/// and no whitespace.
bool looks_like_url(std::string_view s);

/// Levenshtein distance over bytes.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// levenshtein(a, b) / max(|a|, |b|); 0 when both strings are empty.
double normalized_edit_distance(std::string_view a, std::string_view b);

/// Number of Unicode code points (UTF-8 lead bytes).
std::size_t utf8_length(std::string_view s);

/// First n code points of s, never splitting a multi-byte sequence.
std::string utf8_prefix(std::string_view s, std::size_t n);

struct NormalizeResult {
    std::string text;
    bool had_invalid_utf8 = false;
};

/// Canonical text form: CRLF/CR become "\n", NUL bytes are dropped, and
/// invalid UTF-8 sequences are replaced with U+FFFD.
NormalizeResult normalize_text(std::string_view raw);

} // namespace mole
