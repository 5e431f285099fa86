#include "law/extraction.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>

#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law {

std::string_view to_string(DateKind kind) {
    switch (kind) {
        case DateKind::effective: return "effective";
        case DateKind::master: return "master";
        case DateKind::dated: return "dated";
    }
    return "effective";
}

// ---------------------------------------------------------------------------
// date literals

namespace {

struct Word {
    std::string lower;
    size_t start;
    size_t end;
};

int month_from_word(std::string_view w) {
    static const std::unordered_map<std::string_view, int> months = {
        {"january", 1}, {"february", 2}, {"march", 3},     {"april", 4},    {"may", 5},
        {"june", 6},    {"july", 7},     {"august", 8},    {"september", 9}, {"october", 10},
        {"november", 11}, {"december", 12}, {"jan", 1},    {"feb", 2},      {"mar", 3},
        {"apr", 4},     {"jun", 6},      {"jul", 7},       {"aug", 8},      {"sep", 9},
        {"sept", 9},    {"oct", 10},     {"nov", 11},      {"dec", 12}};
    auto it = months.find(w);
    return it == months.end() ? 0 : it->second;
}

bool all_digits(std::string_view w) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

int to_int(std::string_view w) {
    int v = 0;
    for (char c : w) v = v * 10 + (c - '0');
    return v;
}

/// "13", "13th", "1st" -> day number, 0 otherwise.
int day_from_word(std::string_view w) {
    size_t i = 0;
    while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
    if (i == 0 || i > 2) return 0;
    std::string_view suffix = w.substr(i);
    if (!suffix.empty() && suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") return 0;
    int d = to_int(w.substr(0, i));
    return d >= 1 && d <= 31 ? d : 0;
}

int year_from_word(std::string_view w) {
    if (w.size() != 4 || !all_digits(w)) return 0;
    int y = to_int(w);
    return y >= kMinYear && y <= kMaxYear ? y : 0;
}

/// Gap between words may only hold whitespace, commas and a period.
bool soft_gap(std::string_view gap) {
    if (gap.size() > 4) return false;
    return std::all_of(gap.begin(), gap.end(), [](char c) { return c == ' ' || c == ',' || c == '.' || c == '\n'; });
}

std::optional<CalendarDate> checked(int d, int m, int y) {
    CalendarDate c{d, m, y};
    if (!is_valid(c)) return std::nullopt;
    return c;
}

}  // namespace

std::vector<DateLiteral> find_date_literals(std::string_view text) {
    std::vector<Word> words;
    for (auto& t : alnum_token_spans(text)) words.push_back({std::move(t.token), t.start, t.end});
    auto gap = [&](size_t i) { return text.substr(words[i].end, words[i + 1].start - words[i].end); };

    std::vector<DateLiteral> out;
    size_t i = 0;
    while (i < words.size()) {
        // Month D, YYYY
        if (int m = month_from_word(words[i].lower); m && i + 2 < words.size()) {
            int d = day_from_word(words[i + 1].lower);
            int y = year_from_word(words[i + 2].lower);
            if (d && y && soft_gap(gap(i)) && soft_gap(gap(i + 1))) {
                if (auto date = checked(d, m, y)) {
                    out.push_back({words[i].start, words[i + 2].end, date});
                    i += 3;
                    continue;
                }
            }
        }
        if (int d = day_from_word(words[i].lower)) {
            // D(th) day of Month, YYYY
            if (i + 4 < words.size() && words[i + 1].lower == "day" && words[i + 2].lower == "of") {
                int m = month_from_word(words[i + 3].lower);
                int y = year_from_word(words[i + 4].lower);
                if (m && y && soft_gap(gap(i + 3))) {
                    if (auto date = checked(d, m, y)) {
                        out.push_back({words[i].start, words[i + 4].end, date});
                        i += 5;
                        continue;
                    }
                }
            }
            // D Month YYYY
            if (i + 2 < words.size()) {
                int m = month_from_word(words[i + 1].lower);
                int y = year_from_word(words[i + 2].lower);
                if (m && y && soft_gap(gap(i)) && soft_gap(gap(i + 1))) {
                    if (auto date = checked(d, m, y)) {
                        out.push_back({words[i].start, words[i + 2].end, date});
                        i += 3;
                        continue;
                    }
                }
            }
            // numeric a/b/YYYY
            if (i + 2 < words.size() && all_digits(words[i].lower) && words[i].lower.size() <= 2 &&
                all_digits(words[i + 1].lower) && words[i + 1].lower.size() <= 2 && gap(i) == "/" &&
                gap(i + 1) == "/" && year_from_word(words[i + 2].lower)) {
                int a = to_int(words[i].lower), b = to_int(words[i + 1].lower);
                int y = year_from_word(words[i + 2].lower);
                std::optional<CalendarDate> date;
                bool ambiguous = a <= 12 && b <= 12 && a != b;
                if (!ambiguous) {
                    if (a > 12) date = checked(a, b, y);       // DD/MM
                    else date = checked(b, a, y);              // MM/DD
                }
                if (date || ambiguous) {
                    out.push_back({words[i].start, words[i + 2].end, date});
                    i += 3;
                    continue;
                }
            }
        }
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// date kinds

namespace {

bool is_agreement_word(std::string_view w) {
    return w == "agreement" || w == "contract";
}

bool is_determiner(std::string_view w) {
    return w == "this" || w == "the" || w == "that" || w == "such" || w == "said" || w == "certain";
}

/// "<...> Agreement dated [as of]" at the end of the window, naming another
/// agreement (not "this Agreement").
std::optional<std::string> master_reference(std::string_view window) {
    auto toks = alnum_token_spans(window);
    if (toks.empty()) return std::nullopt;
    // only whitespace may follow the last token
    for (size_t k = toks.back().end; k < window.size(); ++k) {
        if (!std::isspace(static_cast<unsigned char>(window[k]))) return std::nullopt;
    }
    size_t n = toks.size();
    if (n >= 2 && toks[n - 1].token == "the") --n;  // "dated the 11th day of ..."
    size_t dated_at;
    if (n >= 3 && toks[n - 1].token == "of" && toks[n - 2].token == "as" && toks[n - 3].token == "dated") {
        dated_at = n - 3;
    } else if (toks[n - 1].token == "dated") {
        dated_at = n - 1;
    } else {
        return std::nullopt;
    }
    if (dated_at == 0 || !is_agreement_word(toks[dated_at - 1].token)) return std::nullopt;
    // nearest determiner within four words before the agreement type
    size_t lo = dated_at >= 5 ? dated_at - 5 : 0;
    for (size_t k = dated_at - 1; k-- > lo;) {
        if (is_determiner(toks[k].token)) {
            if (toks[k].token == "this") return std::nullopt;
            break;
        }
    }
    return std::string(window.substr(toks[dated_at - 1].start));
}

struct CueHit {
    size_t end = 0;
    DateKind kind;
    std::string phrase;
};

std::optional<CueHit> nearest_cue(std::string_view window) {
    std::string lower = to_lower(window);
    std::optional<CueHit> best;
    auto consider = [&](std::string_view phrase, DateKind kind) {
        size_t pos = lower.rfind(phrase);
        if (pos == std::string::npos) return;
        size_t end = pos + phrase.size();
        if (!best || end > best->end) best = CueHit{end, kind, std::string(phrase)};
    };
    consider("effective as of", DateKind::effective);
    consider("shall become effective", DateKind::effective);
    consider("dated as of", DateKind::dated);
    // "made ... this"
    size_t this_pos = lower.rfind("this");
    while (this_pos != std::string::npos) {
        bool word_start = this_pos == 0 || !is_alnum(lower[this_pos - 1]);
        bool word_end = this_pos + 4 >= lower.size() || !is_alnum(lower[this_pos + 4]);
        if (word_start && word_end) {
            size_t lo = this_pos > 80 ? this_pos - 80 : 0;
            size_t made = lower.rfind("made", this_pos);
            if (made != std::string::npos && made >= lo && (made == 0 || !is_alnum(lower[made - 1]))) {
                size_t end = this_pos + 4;
                if (!best || end > best->end) best = CueHit{end, DateKind::dated, "made ... this"};
            }
            break;
        }
        if (this_pos == 0) break;
        this_pos = lower.rfind("this", this_pos - 1);
    }
    return best;
}

}  // namespace

std::vector<DateMention> CueWindowDateSpotter::spot(std::string_view text, bool& any_literal) const {
    std::vector<DateMention> out;
    any_literal = false;
    size_t prev_end = 0;
    for (const auto& lit : find_date_literals(text)) {
        if (!lit.date) continue;
        any_literal = true;
        size_t lo = lit.start > window_ ? lit.start - window_ : 0;
        lo = std::max(lo, prev_end);
        std::string_view window = text.substr(lo, lit.start - lo);
        prev_end = lit.end;
        if (auto ref = master_reference(window)) {
            out.push_back({lit, DateKind::master, *ref});
            continue;
        }
        if (auto cue = nearest_cue(window)) out.push_back({lit, cue->kind, cue->phrase});
    }
    return out;
}

DateBundle extract_dates(const ContractDoc& doc, const DateSpotter& spotter) {
    bool any_literal = false;
    auto mentions = spotter.spot(doc.plain_text, any_literal);
    if (!any_literal) throw Error("E_NO_DATE", "no date literal found", doc.contract_id);
    DateBundle b;
    for (const auto& m : mentions) {
        DateEvidence ev{m.literal.start, m.literal.end, m.cue};
        switch (m.kind) {
            case DateKind::effective:
                if (!b.effective) {
                    b.effective = m.literal.date;
                    b.effective_evidence = ev;
                }
                break;
            case DateKind::master:
                if (!b.master) {
                    b.master = m.literal.date;
                    b.master_evidence = ev;
                }
                break;
            case DateKind::dated:
                if (!b.dated) {
                    b.dated = m.literal.date;
                    b.dated_evidence = ev;
                }
                break;
        }
    }
    if (b.effective && !b.master) {
        b.master = b.effective;
        b.master_evidence = DateEvidence{b.effective_evidence->start, b.effective_evidence->end,
                                         "no master reference; master := effective"};
    }
    return b;
}

DateBundle extract_dates(const ContractDoc& doc) {
    static const CueWindowDateSpotter spotter;
    return extract_dates(doc, spotter);
}

// ---------------------------------------------------------------------------
// parties

namespace {

struct NormWord {
    std::string norm;
    size_t src_start;
    size_t src_end;
    size_t pos;  // offset in the normalized text
};

std::vector<NormWord> normalized_words(std::string_view text) {
    std::vector<NormWord> out;
    size_t i = 0;
    size_t pos = 0;
    auto word_char = [](char c) { return is_alnum(c) || c == '.' || c == '\''; };
    while (i < text.size()) {
        if (!word_char(text[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < text.size() && word_char(text[j])) ++j;
        std::string norm = normalize_token(text.substr(i, j - i));
        if (!norm.empty()) {
            // trim sentence punctuation from the source span
            size_t e = j;
            while (e > i && !is_alnum(text[e - 1])) --e;
            size_t s = i;
            while (s < e && !is_alnum(text[s])) ++s;
            out.push_back({std::move(norm), s, e, pos});
            pos += out.back().norm.size() + 1;
        }
        i = j;
    }
    return out;
}

struct Window {
    size_t first;
    size_t last;  // exclusive
    double score;
};

}  // namespace

std::vector<PartyRecord> extract_parties(std::string_view text, const std::vector<RegistryEntry>& registry,
                                         const PartyMatchOptions& options) {
    std::vector<PartyRecord> out;
    auto words = normalized_words(text);
    if (words.empty()) return out;

    std::string joined;
    for (size_t k = 0; k < words.size(); ++k) {
        if (k) joined.push_back(' ');
        joined += words[k].norm;
    }
    std::vector<bool> masked(words.size(), false);

    struct Target {
        std::string norm;
        const RegistryEntry* entry;
    };
    std::vector<Target> targets;
    std::set<std::string> seen;
    for (const auto& e : registry) {
        std::string n = normalize_name(e.name);
        if (n.empty() || !seen.insert(n).second) continue;
        targets.push_back({std::move(n), &e});
    }
    std::sort(targets.begin(), targets.end(), [](const Target& a, const Target& b) {
        if (a.norm.size() != b.norm.size()) return a.norm.size() > b.norm.size();
        return a.norm < b.norm;
    });

    std::vector<size_t> word_pos;
    word_pos.reserve(words.size());
    for (const auto& w : words) word_pos.push_back(w.pos);

    for (const auto& target : targets) {
        const double L = static_cast<double>(target.norm.size());
        const double min_len = std::ceil(L * (1.0 - options.length_tolerance) - 1e-9);
        const double max_len = std::floor(L * (1.0 + options.length_tolerance) + 1e-9);
        const size_t kmax = static_cast<size_t>(std::floor((1.0 - options.threshold) * max_len + 1e-9));

        // Pigeonhole filter: a window within kmax edits contains one of the
        // kmax + 1 target pieces verbatim.
        std::set<size_t> start_words;
        const size_t pieces = kmax + 1;
        const size_t piece_len = std::max<size_t>(1, target.norm.size() / pieces);
        for (size_t p = 0; p < pieces; ++p) {
            size_t off = p * piece_len;
            if (off >= target.norm.size()) break;
            size_t len = p + 1 == pieces ? target.norm.size() - off : piece_len;
            std::string_view piece = std::string_view(target.norm).substr(off, len);
            for (size_t hit = joined.find(piece); hit != std::string::npos; hit = joined.find(piece, hit + 1)) {
                long lo = static_cast<long>(hit) - static_cast<long>(off) - static_cast<long>(kmax);
                long hi = static_cast<long>(hit) - static_cast<long>(off) + static_cast<long>(kmax);
                auto it = std::lower_bound(word_pos.begin(), word_pos.end(), static_cast<size_t>(std::max(0L, lo)));
                for (; it != word_pos.end() && static_cast<long>(*it) <= hi; ++it) {
                    start_words.insert(static_cast<size_t>(it - word_pos.begin()));
                }
            }
        }

        std::vector<Window> accepted;
        for (size_t a : start_words) {
            if (masked[a]) continue;
            for (size_t b = a + 1; b <= words.size(); ++b) {
                if (masked[b - 1]) break;
                double W = static_cast<double>(words[b - 1].pos + words[b - 1].norm.size() - words[a].pos);
                if (W > max_len) break;
                if (W < min_len) continue;
                std::string_view window = std::string_view(joined).substr(words[a].pos, static_cast<size_t>(W));
                size_t longest = std::max(window.size(), target.norm.size());
                size_t bound = static_cast<size_t>(std::floor((1.0 - options.threshold) * static_cast<double>(longest) + 1e-9));
                size_t dist = levenshtein_bounded(window, target.norm, bound);
                if (dist > bound) continue;
                double score = 1.0 - static_cast<double>(dist) / static_cast<double>(longest);
                if (score + 1e-12 >= options.threshold) accepted.push_back({a, b, score});
            }
        }
        if (accepted.empty()) continue;
        std::sort(accepted.begin(), accepted.end(), [](const Window& x, const Window& y) {
            if (x.score != y.score) return x.score > y.score;
            if (x.first != y.first) return x.first < y.first;
            return x.last < y.last;
        });
        std::optional<Window> best;
        for (const auto& w : accepted) {
            bool free = true;
            for (size_t k = w.first; k < w.last; ++k) free = free && !masked[k];
            if (!free) continue;
            for (size_t k = w.first; k < w.last; ++k) masked[k] = true;
            if (!best) best = w;
        }
        PartyRecord rec;
        rec.name = target.entry->name;
        rec.role = target.entry->role;
        rec.match_score = best->score;
        rec.start = words[best->first].src_start;
        rec.end = words[best->last - 1].src_end;
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(), [](const PartyRecord& a, const PartyRecord& b) { return a.start < b.start; });
    return out;
}

std::vector<PartyRecord> extract_parties(const ContractDoc& doc, const std::vector<RegistryEntry>& registry,
                                         const PartyMatchOptions& options) {
    return extract_parties(std::string_view(doc.plain_text), registry, options);
}

std::optional<RegistryEntry> match_entity(std::string_view query, const std::vector<RegistryEntry>& registry,
                                          std::optional<PartyRole> role, double threshold) {
    std::string q = normalize_name(query);
    if (q.empty()) return std::nullopt;
    const RegistryEntry* best = nullptr;
    double best_score = -1.0;
    for (const auto& e : registry) {
        if (role && e.role != *role) continue;
        std::string n = normalize_name(e.name);
        if (n == q) return e;
        double s = similarity(n, q);
        if (s >= threshold && s > best_score) {
            best = &e;
            best_score = s;
        }
    }
    if (!best) return std::nullopt;
    return *best;
}

}  // namespace law
