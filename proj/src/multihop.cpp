#include "law/multihop.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "law/error.hpp"
#include "law/labels.hpp"
#include "law/text_util.hpp"

namespace law {

namespace {

const std::map<std::string_view, int>& unit_words() {
    static const std::map<std::string_view, int> m = {
        {"one", 1},      {"two", 2},        {"three", 3},     {"four", 4},     {"five", 5},
        {"six", 6},      {"seven", 7},      {"eight", 8},     {"nine", 9},     {"ten", 10},
        {"eleven", 11},  {"twelve", 12},    {"thirteen", 13}, {"fourteen", 14}, {"fifteen", 15},
        {"sixteen", 16}, {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19}, {"twenty", 20},
    };
    return m;
}

const std::map<std::string_view, int>& tens_words() {
    static const std::map<std::string_view, int> m = {
        {"twenty", 20}, {"thirty", 30}, {"forty", 40},  {"fifty", 50},
        {"sixty", 60},  {"seventy", 70}, {"eighty", 80}, {"ninety", 90},
    };
    return m;
}

bool all_digits(std::string_view s) {
    return !s.empty() && s.size() <= 4 &&
           std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool gap_is(std::string_view text, size_t from, size_t to, std::string_view allowed) {
    if (from > to) return false;
    for (size_t i = from; i < to; ++i) {
        if (allowed.find(text[i]) == std::string_view::npos) return false;
    }
    return true;
}

bool gap_contains(std::string_view text, size_t from, size_t to, char c) {
    return from <= to && text.substr(from, to - from).find(c) != std::string_view::npos;
}

const std::set<std::string_view> kRejectBefore = {"within", "upon", "after", "least", "than",
                                                   "following", "before", "prior", "business", "calendar"};
const std::set<std::string_view> kRejectAfter = {"after", "following", "prior", "before", "notice",
                                                  "written", "advance"};

struct NumberPhrase {
    int value = 0;
    size_t first_token = 0;
};

// Number phrase ending at token index `last` (inclusive).
std::optional<NumberPhrase> number_ending_at(std::string_view text, const std::vector<TokenSpan>& toks, size_t last) {
    const auto& t = toks[last].token;
    if (all_digits(t)) return NumberPhrase{std::stoi(t), last};
    if (last > 0) {
        auto tens = tens_words().find(toks[last - 1].token);
        auto unit = unit_words().find(t);
        if (tens != tens_words().end() && unit != unit_words().end() && unit->second < 10 &&
            gap_is(text, toks[last - 1].end, toks[last].start, "- ")) {
            return NumberPhrase{tens->second + unit->second, last - 1};
        }
    }
    if (auto v = number_word_value(t)) return NumberPhrase{*v, last};
    return std::nullopt;
}

}  // namespace

std::optional<int> number_word_value(std::string_view word) {
    std::string w = to_lower(word);
    if (auto it = unit_words().find(w); it != unit_words().end()) return it->second;
    if (auto it = tens_words().find(w); it != tens_words().end()) return it->second;
    auto dash = w.find('-');
    if (dash != std::string::npos) {
        auto tens = tens_words().find(std::string_view(w).substr(0, dash));
        auto unit = unit_words().find(std::string_view(w).substr(dash + 1));
        if (tens != tens_words().end() && unit != unit_words().end() && unit->second < 10) {
            return tens->second + unit->second;
        }
    }
    return std::nullopt;
}

std::optional<DurationMatch> find_duration(std::string_view text) {
    std::string lower = to_lower(text);
    auto toks = alnum_token_spans(lower);
    for (size_t i = 1; i < toks.size(); ++i) {
        auto unit = parse_unit(toks[i].token);
        if (!unit) continue;

        std::optional<NumberPhrase> phrase;
        // "three (3) years": the digit in parentheses is authoritative.
        if (all_digits(toks[i - 1].token) && gap_contains(lower, toks[i - 1].end, toks[i].start, ')') &&
            i >= 2 && gap_contains(lower, toks[i - 2].end, toks[i - 1].start, '(')) {
            int digit = std::stoi(toks[i - 1].token);
            auto word = number_ending_at(lower, toks, i - 2);
            phrase = NumberPhrase{digit, word ? word->first_token : i - 1};
        } else if (gap_is(lower, toks[i - 1].end, toks[i].start, " -")) {
            phrase = number_ending_at(lower, toks, i - 1);
        }
        if (!phrase || phrase->value <= 0) continue;

        if (phrase->first_token > 0 && kRejectBefore.count(toks[phrase->first_token - 1].token)) continue;
        bool reject = false;
        for (size_t j = i + 1; j < toks.size() && j <= i + 4; ++j) {
            if (toks[j].token == "notice" || (j == i + 1 && kRejectAfter.count(toks[j].token))) {
                reject = true;
                break;
            }
        }
        // "days'" written-notice style possessives.
        if (toks[i].end < lower.size() && lower[toks[i].end] == '\'') reject = true;
        if (reject) continue;

        return DurationMatch{Duration{phrase->value, *unit}, toks[phrase->first_token].start, toks[i].end};
    }
    return std::nullopt;
}

std::optional<Duration> parse_duration(std::string_view text) {
    if (auto m = find_duration(text)) return m->duration;
    return std::nullopt;
}

std::string_view to_string(LifecycleBasis basis) {
    switch (basis) {
        case LifecycleBasis::explicit_termination_date: return "explicit_termination_date";
        case LifecycleBasis::effective_plus_duration: return "effective_plus_duration";
        case LifecycleBasis::evergreen: return "evergreen";
    }
    return "evergreen";
}

std::string_view to_string(DurationScope scope) {
    switch (scope) {
        case DurationScope::none: return "none";
        case DurationScope::termination: return "termination";
        case DurationScope::recitals: return "recitals";
        case DurationScope::whole_text: return "whole_text";
    }
    return "none";
}

std::string_view to_string(LinkKind kind) { return kind == LinkKind::master ? "master" : "amendment"; }

namespace {

// Section body offset inside plain_text, falling back to a search.
size_t body_offset(const ContractDoc& doc, const SectionSpan& s) {
    if (s.end_offset <= doc.plain_text.size()) {
        auto pos = doc.plain_text.find(s.body_text, s.start_offset);
        if (pos != std::string::npos && pos < s.end_offset) return pos;
    }
    auto pos = doc.plain_text.find(s.body_text);
    return pos == std::string::npos ? 0 : pos;
}

std::optional<std::pair<CalendarDate, DateEvidence>> explicit_end_date(std::string_view body, const CalendarDate& effective) {
    static const std::string_view cues[] = {"terminate on", "terminates on", "expire on", "expires on",
                                            "remain in effect until", "continue in effect until",
                                            "remain in full force and effect until", "through and including"};
    std::string lower = to_lower(body);
    for (const auto& lit : find_date_literals(body)) {
        if (!lit.date) continue;
        size_t from = lit.start > 80 ? lit.start - 80 : 0;
        std::string_view window = std::string_view(lower).substr(from, lit.start - from);
        // The cue must be the last clause before the literal.
        for (auto cue : cues) {
            auto pos = window.rfind(cue);
            if (pos == std::string_view::npos) continue;
            auto tail = window.substr(pos + cue.size());
            if (tail.find_first_of(".;") != std::string_view::npos) continue;
            if (*lit.date < effective) continue;
            return std::make_pair(*lit.date, DateEvidence{lit.start, lit.end, std::string(cue)});
        }
    }
    return std::nullopt;
}

}  // namespace

LifecycleResult compute_lifecycle(const ContractDoc& doc, const DateBundle& dates, const std::vector<SectionSpan>& sections) {
    if (!dates.effective) {
        throw Error("E_NO_EFFECTIVE", "no effective date for lifecycle", doc.contract_id);
    }
    const CalendarDate effective = *dates.effective;
    LifecycleResult out;

    std::vector<const SectionSpan*> termination;
    std::vector<const SectionSpan*> recitals;
    for (const auto& s : sections) {
        if (s.title_label == "termination") termination.push_back(&s);
        if (s.title_label == "recitals") recitals.push_back(&s);
    }

    for (const auto* s : termination) {
        if (auto hit = explicit_end_date(s->body_text, effective)) {
            size_t base = body_offset(doc, *s);
            out.termination = hit->first;
            out.basis = LifecycleBasis::explicit_termination_date;
            out.scope = DurationScope::termination;
            out.evidence = DateEvidence{base + hit->second.start, base + hit->second.end, hit->second.cue};
            return out;
        }
    }

    auto try_scope = [&](const std::vector<const SectionSpan*>& scope, DurationScope kind) {
        for (const auto* s : scope) {
            if (auto m = find_duration(s->body_text)) {
                size_t base = body_offset(doc, *s);
                out.duration_term = m->duration;
                out.scope = kind;
                out.evidence = DateEvidence{base + m->start, base + m->end, "duration"};
                return true;
            }
        }
        return false;
    };

    bool found = try_scope(termination, DurationScope::termination) || try_scope(recitals, DurationScope::recitals);
    if (!found) {
        if (auto m = find_duration(doc.plain_text)) {
            out.duration_term = m->duration;
            out.scope = DurationScope::whole_text;
            out.evidence = DateEvidence{m->start, m->end, "duration"};
            found = true;
        }
    }
    if (found) {
        try {
            out.termination = add(effective, *out.duration_term);
            out.basis = LifecycleBasis::effective_plus_duration;
            return out;
        } catch (const Error&) {
            // Out of calendar range; treat as no usable term.
        }
    }
    out = LifecycleResult{};
    out.basis = LifecycleBasis::evergreen;
    return out;
}

bool is_master(const DateBundle& dates) {
    return dates.effective && dates.master && *dates.effective == *dates.master;
}

MasterDirectory::Entry MasterDirectory::make_entry(const ContractFacts& facts) {
    Entry e;
    e.contract_id = facts.contract_id;
    for (const auto& p : facts.parties) {
        std::string n = normalize_name(p.name);
        if (p.role == PartyRole::custodian) e.custodians.push_back(n);
        if (p.role == PartyRole::fund || p.role == PartyRole::trust) e.principals.push_back(n);
        e.all_names.push_back(n);
    }
    for (auto* v : {&e.custodians, &e.principals, &e.all_names}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return e;
}

MasterDirectory::MasterDirectory(const std::vector<ContractFacts>& corpus) {
    for (const auto& f : corpus) {
        if (!is_master(f.dates)) continue;
        by_date_[day_number(*f.dates.effective)].push_back(make_entry(f));
    }
    for (auto& [_, v] : by_date_) {
        std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.contract_id < b.contract_id; });
    }
}

namespace {

size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out.size();
}

}  // namespace

MasterLink MasterDirectory::resolve(const ContractFacts& doc) const {
    MasterLink link;
    link.contract_id = doc.contract_id;
    if (is_master(doc.dates)) {
        link.kind = LinkKind::master;
        link.master_id = doc.contract_id;
        return link;
    }
    link.kind = LinkKind::amendment;
    link.error_code = "E_UNRESOLVED_MASTER";
    if (!doc.dates.master) return link;
    auto it = by_date_.find(day_number(*doc.dates.master));
    if (it == by_date_.end()) return link;

    Entry self = make_entry(doc);
    double best = -1.0;
    std::vector<const Entry*> winners;
    for (const auto& cand : it->second) {
        if (cand.contract_id == doc.contract_id) continue;
        if (intersection_size(cand.custodians, self.custodians) == 0) continue;
        if (intersection_size(cand.principals, self.principals) == 0) continue;
        size_t inter = intersection_size(cand.all_names, self.all_names);
        size_t uni = cand.all_names.size() + self.all_names.size() - inter;
        double jaccard = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
        if (jaccard > best) {
            best = jaccard;
            winners = {&cand};
        } else if (jaccard == best) {
            winners.push_back(&cand);
        }
    }
    if (winners.size() == 1) {
        link.master_id = winners.front()->contract_id;
        link.error_code.clear();
    }
    return link;
}

MasterLink resolve_master(const ContractFacts& doc, const MasterDirectory& directory) { return directory.resolve(doc); }

}  // namespace law
