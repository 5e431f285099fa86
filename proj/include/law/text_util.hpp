#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace law {

std::string to_lower(std::string_view text);
std::string trim(std::string_view text);
bool is_alnum(char c);
bool starts_with_ci(std::string_view text, std::string_view prefix);

/// Lowercase alphanumeric runs. Tokens shorter than `min_length` are dropped.
std::vector<std::string> alnum_tokens(std::string_view text, size_t min_length = 1);

struct TokenSpan {
    std::string token;
    size_t start = 0;
    size_t end = 0;
};
std::vector<TokenSpan> alnum_token_spans(std::string_view text);

/// Party-name normal form: lowercase, '.' and apostrophes deleted, other
/// punctuation turned into spaces, whitespace collapsed, trailing corporate
/// suffixes (inc, llc, na, ltd, corp, lp) removed.
std::string normalize_name(std::string_view name);

/// Same character rules as normalize_name but keeps suffixes; used on text
/// tokens so that offsets can be mapped back.
std::string normalize_token(std::string_view token);

size_t levenshtein(std::string_view a, std::string_view b);
/// Edit distance if it is <= `bound`, otherwise bound + 1.
size_t levenshtein_bounded(std::string_view a, std::string_view b, size_t bound);
/// 1 - editdistance / max(len); 1.0 for two empty strings.
double similarity(std::string_view a, std::string_view b);

/// Sentences with their source offsets; boundaries after [.!?] followed by
/// whitespace unless the word before is a known abbreviation.
struct SentenceSpan {
    size_t start = 0;
    size_t end = 0;  // exclusive, excludes trailing whitespace
};
std::vector<SentenceSpan> split_sentences(std::string_view text);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace law
