#include "law/text_util.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

namespace law {

namespace {

constexpr std::array<std::string_view, 6> kNameSuffixes = {"inc", "llc", "na", "ltd", "corp", "lp"};

constexpr std::array<std::string_view, 24> kAbbreviations = {
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
    "inc", "no", "co", "corp", "ltd", "mr", "ms", "dr", "st", "n.a", "u.s", "sec"};

std::string normalize_chars(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (c == '.' || c == '\'') continue;
        if (is_alnum(c)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else {
            pending_space = true;
        }
    }
    return out;
}

}  // namespace

std::string to_lower(std::string_view text) {
    std::string out(text);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::string(text.substr(b, e - b));
}

bool is_alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool starts_with_ci(std::string_view text, std::string_view prefix) {
    if (text.size() < prefix.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i])))
            return false;
    }
    return true;
}

std::vector<std::string> alnum_tokens(std::string_view text, size_t min_length) {
    std::vector<std::string> out;
    for (auto& span : alnum_token_spans(text)) {
        if (span.token.size() >= min_length) out.push_back(std::move(span.token));
    }
    return out;
}

std::vector<TokenSpan> alnum_token_spans(std::string_view text) {
    std::vector<TokenSpan> out;
    size_t i = 0;
    while (i < text.size()) {
        if (!is_alnum(text[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < text.size() && is_alnum(text[j])) ++j;
        out.push_back({to_lower(text.substr(i, j - i)), i, j});
        i = j;
    }
    return out;
}

std::string normalize_token(std::string_view token) {
    return normalize_chars(token);
}

std::string normalize_name(std::string_view name) {
    std::string base = normalize_chars(name);
    // strip trailing suffix tokens, repeatedly ("corp inc")
    for (;;) {
        auto pos = base.rfind(' ');
        if (pos == std::string::npos) break;
        std::string_view last = std::string_view(base).substr(pos + 1);
        if (std::find(kNameSuffixes.begin(), kNameSuffixes.end(), last) == kNameSuffixes.end()) break;
        base.erase(pos);
    }
    return base;
}

size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

size_t levenshtein_bounded(std::string_view a, std::string_view b, size_t bound) {
    const size_t n = a.size(), m = b.size();
    const size_t diff = n > m ? n - m : m - n;
    if (diff > bound) return bound + 1;
    const size_t inf = bound + 1;
    std::vector<size_t> prev(m + 1, inf), cur(m + 1, inf);
    for (size_t j = 0; j <= std::min(m, bound); ++j) prev[j] = j;
    for (size_t i = 1; i <= n; ++i) {
        const size_t lo = i > bound ? i - bound : 1;
        const size_t hi = std::min(m, i + bound);
        std::fill(cur.begin(), cur.end(), inf);
        if (i <= bound) cur[0] = i;
        size_t row_min = cur[0];
        for (size_t j = lo; j <= hi; ++j) {
            size_t best = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            best = std::min(best, prev[j] + 1);
            best = std::min(best, cur[j - 1] + 1);
            cur[j] = std::min(best, inf);
            row_min = std::min(row_min, cur[j]);
        }
        if (row_min > bound) return inf;
        std::swap(prev, cur);
    }
    return std::min(prev[m], inf);
}

double similarity(std::string_view a, std::string_view b) {
    const size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

std::vector<SentenceSpan> split_sentences(std::string_view text) {
    std::vector<SentenceSpan> out;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    auto flush = [&](size_t end) {
        size_t e = end;
        while (e > start && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
        if (e > start) out.push_back({start, e});
    };
    for (; i < n; ++i) {
        char c = text[i];
        bool boundary = false;
        if (c == '\n' && i + 1 < n && text[i + 1] == '\n') {
            boundary = true;
        } else if ((c == '.' || c == '!' || c == '?') && (i + 1 == n || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
            boundary = true;
            if (c == '.') {
                size_t w = i;
                while (w > start && !std::isspace(static_cast<unsigned char>(text[w - 1]))) --w;
                std::string word = to_lower(text.substr(w, i - w));
                while (!word.empty() && !is_alnum(word.front()) ) word.erase(word.begin());
                if (std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end())
                    boundary = false;
                if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) boundary = false;
            }
        }
        if (boundary) {
            flush(i + 1);
            size_t j = i + 1;
            while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
            start = j;
            i = j - 1;
        }
    }
    if (start < n) flush(n);
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

}  // namespace law
