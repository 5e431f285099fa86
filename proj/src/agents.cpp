#include "law/agents.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "json.hpp"

#include "law/embedded_data.hpp"
#include "law/error.hpp"
#include "law/extraction.hpp"
#include "law/multihop.hpp"
#include "law/parallel.hpp"
#include "law/text_util.hpp"

namespace law {

namespace {

bool word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

size_t count_tokens(std::string_view text) {
    size_t n = 0;
    bool in_word = false;
    for (char ch : text) {
        auto c = static_cast<unsigned char>(ch);
        if (word_byte(c)) {
            if (!in_word) ++n;
            in_word = true;
        } else {
            in_word = false;
            if (!std::isspace(c)) ++n;
        }
    }
    return n;
}

namespace {

// Paragraph pieces: each piece ends after the newline run that follows a
// blank line.
std::vector<std::string_view> paragraph_pieces(std::string_view text) {
    std::vector<std::string_view> out;
    size_t start = 0;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '\n' && i + 1 < text.size() && text[i + 1] == '\n') {
            size_t j = i;
            while (j < text.size() && text[j] == '\n') ++j;
            out.push_back(text.substr(start, j - start));
            start = i = j;
        } else {
            ++i;
        }
    }
    if (start < text.size()) out.push_back(text.substr(start));
    return out;
}

std::vector<std::string_view> sentence_pieces(std::string_view text) {
    std::vector<size_t> cuts;
    for (const auto& s : split_sentences(text)) {
        if (s.start > 0) cuts.push_back(s.start);
    }
    std::vector<std::string_view> out;
    size_t prev = 0;
    for (size_t c : cuts) {
        if (c > prev) out.push_back(text.substr(prev, c - prev));
        prev = c;
    }
    if (prev < text.size()) out.push_back(text.substr(prev));
    return out;
}

void hard_split(std::string_view s, const TokenBudget& budget, std::vector<std::string_view>& out) {
    const size_t limit = std::max<size_t>(budget.chunk_size, 1);
    while (!s.empty() && budget.count(s) > limit) {
        size_t lo = 1, hi = s.size();
        while (lo < hi) {
            size_t mid = lo + (hi - lo + 1) / 2;
            if (budget.count(s.substr(0, mid)) <= limit) lo = mid;
            else hi = mid - 1;
        }
        size_t cut = lo;
        size_t space = s.find_last_of(" \t\n", cut - 1);
        if (space != std::string_view::npos && space + 1 < cut && space > 0) cut = space + 1;
        while (cut > 1 && cut < s.size() && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
        out.push_back(s.substr(0, cut));
        s.remove_prefix(cut);
    }
    if (!s.empty()) out.push_back(s);
}

}  // namespace

std::vector<std::string> chunk_text(std::string_view text, const TokenBudget& budget) {
    const size_t limit = std::max<size_t>(budget.chunk_size, 1);
    std::vector<std::string_view> pieces;
    for (auto para : paragraph_pieces(text)) {
        if (budget.count(para) <= limit) {
            pieces.push_back(para);
            continue;
        }
        for (auto sent : sentence_pieces(para)) {
            if (budget.count(sent) <= limit) pieces.push_back(sent);
            else hard_split(sent, budget, pieces);
        }
    }
    // Token counts are subadditive under concatenation, so summing piece
    // counts bounds the chunk count from above.
    std::vector<std::string> chunks;
    std::string current;
    size_t current_tokens = 0;
    for (auto p : pieces) {
        size_t t = budget.count(p);
        if (!current.empty() && current_tokens + t > limit) {
            chunks.push_back(std::move(current));
            current.clear();
            current_tokens = 0;
        }
        current.append(p);
        current_tokens += t;
    }
    if (!current.empty()) chunks.push_back(std::move(current));
    return chunks;
}

std::string render_prompt(std::string_view name, const std::map<std::string, std::string>& vars) {
    auto file = embedded_file("prompts/" + std::string(name) + ".txt");
    if (!file) throw Error("E_CONFIG", "no prompt template " + std::string(name));
    std::string_view tpl = *file;
    if (!tpl.empty() && tpl.front() == '#') {
        auto nl = tpl.find('\n');
        tpl.remove_prefix(nl == std::string_view::npos ? tpl.size() : nl + 1);
    }
    std::string out;
    size_t i = 0;
    while (i < tpl.size()) {
        auto open = tpl.find("{{", i);
        if (open == std::string_view::npos) {
            out.append(tpl.substr(i));
            break;
        }
        auto close = tpl.find("}}", open);
        if (close == std::string_view::npos) {
            out.append(tpl.substr(i));
            break;
        }
        out.append(tpl.substr(i, open - i));
        auto it = vars.find(std::string(tpl.substr(open + 2, close - open - 2)));
        if (it != vars.end()) out.append(it->second);
        i = close + 2;
    }
    return out;
}

namespace {

std::optional<std::string_view> between(std::string_view prompt, std::string_view open, std::string_view close) {
    auto a = prompt.find(open);
    if (a == std::string_view::npos) return std::nullopt;
    a += open.size();
    auto b = prompt.rfind(close);
    if (b == std::string_view::npos || b < a) return std::nullopt;
    return prompt.substr(a, b - a);
}

std::vector<std::string> sentences_of(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& s : split_sentences(text)) out.emplace_back(text.substr(s.start, s.end - s.start));
    return out;
}

std::string sentence_key(std::string_view s) { return join(alnum_tokens(s), " "); }

double token_jaccard(std::string_view a, std::string_view b) {
    auto ta = alnum_tokens(a), tb = alnum_tokens(b);
    std::set<std::string> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
    size_t inter = 0;
    for (const auto& t : sa) inter += sb.count(t);
    size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Date literals and numbers in order, as they appear in the sentence.
std::vector<std::string> literals_of(std::string_view s) {
    std::vector<std::pair<size_t, std::string>> found;
    std::vector<std::pair<size_t, size_t>> taken;
    for (const auto& d : find_date_literals(s)) {
        found.emplace_back(d.start, std::string(s.substr(d.start, d.end - d.start)));
        taken.emplace_back(d.start, d.end);
    }
    for (const auto& t : alnum_token_spans(s)) {
        if (std::none_of(t.token.begin(), t.token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            continue;
        bool inside = std::any_of(taken.begin(), taken.end(), [&](auto r) { return t.start >= r.first && t.end <= r.second; });
        if (inside) continue;
        size_t start = t.start;
        if (start > 0 && s[start - 1] == '$') --start;
        found.emplace_back(start, std::string(s.substr(start, t.end - start)));
    }
    std::sort(found.begin(), found.end());
    std::vector<std::string> out;
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

}  // namespace

MockLlmClient::MockLlmClient(std::vector<std::string> party_names) {
    for (auto& n : party_names) {
        if (!n.empty()) party_names_.push_back(to_lower(n));
    }
}

std::string MockLlmClient::summarize_text(std::string_view text) const {
    std::vector<std::string> kept;
    for (auto para : paragraph_pieces(text)) {
        auto sents = sentences_of(para);
        for (size_t i = 0; i < sents.size(); ++i) {
            const auto& s = sents[i];
            bool keep = i == 0 || !find_date_literals(s).empty() || find_duration(s).has_value();
            if (!keep) {
                std::string lower = to_lower(s);
                keep = std::any_of(party_names_.begin(), party_names_.end(),
                                   [&](const std::string& n) { return lower.find(n) != std::string::npos; });
            }
            if (keep) kept.push_back(s);
        }
    }
    return join(kept, "\n");
}

std::string MockLlmClient::compare_texts(std::string_view left, std::string_view right) const {
    auto ls = sentences_of(left), rs = sentences_of(right);
    std::set<std::string> lkeys, rkeys;
    for (const auto& s : ls) lkeys.insert(sentence_key(s));
    for (const auto& s : rs) rkeys.insert(sentence_key(s));
    std::vector<std::string> only_l, only_r;
    std::set<std::string> seen;
    for (const auto& s : ls) {
        auto k = sentence_key(s);
        if (!rkeys.count(k) && seen.insert("l" + k).second) only_l.push_back(s);
    }
    for (const auto& s : rs) {
        auto k = sentence_key(s);
        if (!lkeys.count(k) && seen.insert("r" + k).second) only_r.push_back(s);
    }

    nlohmann::json changes = nlohmann::json::array();
    std::vector<bool> l_used(only_l.size()), r_used(only_r.size());
    for (size_t i = 0; i < only_l.size(); ++i) {
        double best = 0.5;
        size_t pick = only_r.size();
        for (size_t j = 0; j < only_r.size(); ++j) {
            if (r_used[j]) continue;
            double sim = token_jaccard(only_l[i], only_r[j]);
            if (sim >= best && (pick == only_r.size() || sim > best)) {
                best = sim;
                pick = j;
            }
        }
        if (pick == only_r.size()) continue;
        auto a = literals_of(only_l[i]), b = literals_of(only_r[pick]);
        if (a == b) continue;
        l_used[i] = r_used[pick] = true;
        auto record = [&](const std::string& from, const std::string& to) {
            changes.push_back({{"left", only_l[i]}, {"right", only_r[pick]}, {"from", from}, {"to", to}});
        };
        if (a.size() == b.size()) {
            for (size_t k = 0; k < a.size(); ++k) {
                if (a[k] != b[k]) record(a[k], b[k]);
            }
        } else {
            record(join(a, ", "), join(b, ", "));
        }
    }
    nlohmann::json out;
    out["only_left"] = nlohmann::json::array();
    out["only_right"] = nlohmann::json::array();
    for (size_t i = 0; i < only_l.size(); ++i) {
        if (!l_used[i]) out["only_left"].push_back(only_l[i]);
    }
    for (size_t j = 0; j < only_r.size(); ++j) {
        if (!r_used[j]) out["only_right"].push_back(only_r[j]);
    }
    out["changes"] = changes;
    return out.dump();
}

std::string MockLlmClient::generate(const std::string& prompt, size_t) {
    if (auto left = between(prompt, "<<<LEFT\n", "\nLEFT>>>")) {
        auto right = between(prompt, "<<<RIGHT\n", "\nRIGHT>>>");
        return compare_texts(*left, right.value_or(""));
    }
    if (auto text = between(prompt, "<<<TEXT\n", "\nTEXT>>>")) return summarize_text(*text);
    return {};
}

std::string summarize(const std::vector<std::string>& section_texts, const TokenBudget& budget, LlmClient& client,
                      const SummarizeOptions& options) {
    if (section_texts.empty()) return {};
    const std::string joined = join(section_texts, "\n\n");
    auto call = [&](const std::string& text, size_t chunk) {
        std::string prompt = render_prompt("summarize", {{"text", text}, {"hint", options.hint}});
        size_t used = budget.count(prompt);
        size_t max_out = budget.context_limit > used + 256 ? budget.context_limit - used : 256;
        try {
            return client.generate(prompt, max_out);
        } catch (const std::exception& e) {
            throw Error("E_LLM_FAILURE", e.what(), "chunk " + std::to_string(chunk));
        }
    };
    std::string whole = render_prompt("summarize", {{"text", joined}, {"hint", options.hint}});
    if (budget.count(whole) <= budget.context_limit) return call(joined, 0);

    auto chunks = chunk_text(joined, budget);
    std::vector<std::string> outputs(chunks.size());
    size_t workers = client.concurrent() ? std::min<size_t>(chunks.size(), std::max<size_t>(options.max_parallel, 1)) : 1;
    parallel_for(chunks.size(), workers, [&](size_t i) { outputs[i] = call(chunks[i], i); });
    return join(outputs, "\n");
}

std::string render_narrative(const ClauseDelta& d) {
    std::ostringstream out;
    out << d.left_contract << " -> " << d.right_contract << ": ";
    if (d.no_change()) {
        out << "no substantive change.";
        return out.str();
    }
    out << d.changes.size() << " changed literal(s), " << d.only_left.size() << " removed, " << d.only_right.size()
        << " added.";
    for (const auto& c : d.changes) out << "\n  changed " << c.from << " -> " << c.to << ": " << c.right_sentence;
    for (const auto& s : d.only_left) out << "\n  removed: " << s;
    for (const auto& s : d.only_right) out << "\n  added: " << s;
    return out.str();
}

namespace {

std::string fit_side(std::string text, size_t limit, const TokenBudget& budget, LlmClient& client, const std::string& hint) {
    for (int round = 0; round < 3 && budget.count(text) > limit; ++round) {
        text = summarize({text}, budget, client, {8, hint});
    }
    if (budget.count(text) > limit) {
        TokenBudget tight = budget;
        tight.chunk_size = limit;
        text = chunk_text(text, tight).front();
    }
    return text;
}

ClauseDelta parse_delta(const std::string& reply) {
    ClauseDelta d;
    auto a = reply.find('{');
    auto b = reply.rfind('}');
    if (a != std::string::npos && b != std::string::npos && b > a) {
        auto j = nlohmann::json::parse(reply.substr(a, b - a + 1), nullptr, false);
        if (j.is_object()) {
            try {
                for (const auto& s : j.value("only_left", nlohmann::json::array())) d.only_left.push_back(s.get<std::string>());
                for (const auto& s : j.value("only_right", nlohmann::json::array())) d.only_right.push_back(s.get<std::string>());
                for (const auto& c : j.value("changes", nlohmann::json::array())) {
                    d.changes.push_back({c.value("left", ""), c.value("right", ""), c.value("from", ""), c.value("to", "")});
                }
                d.structured = true;
                return d;
            } catch (const nlohmann::json::exception&) {
                d = ClauseDelta{};
            }
        }
    }
    d.narrative = reply;
    return d;
}

}  // namespace

ComparisonChain compare_clauses(std::vector<ClauseSource> sections, const TokenBudget& budget, LlmClient& client,
                                const std::string& hint) {
    std::sort(sections.begin(), sections.end(), [](const ClauseSource& a, const ClauseSource& b) {
        if (a.effective.has_value() != b.effective.has_value()) return a.effective.has_value();
        if (a.effective && *a.effective != *b.effective) return *a.effective < *b.effective;
        if (a.contract_id != b.contract_id) return a.contract_id < b.contract_id;
        return a.section_ordinal < b.section_ordinal;
    });
    ComparisonChain chain;
    chain.sections = sections;
    if (sections.size() < 2) return chain;

    const size_t overhead = budget.count(render_prompt("compare", {{"hint", hint}}));
    const size_t room = budget.context_limit > overhead ? (budget.context_limit - overhead) / 2 : 1;
    const size_t limit = std::max<size_t>(1, std::min(budget.chunk_size, room));
    std::vector<std::string> fitted(sections.size());
    for (size_t i = 0; i < sections.size(); ++i) fitted[i] = fit_side(sections[i].text, limit, budget, client, hint);

    for (size_t i = 0; i + 1 < sections.size(); ++i) {
        std::string prompt = render_prompt("compare", {{"left", fitted[i]}, {"right", fitted[i + 1]}, {"hint", hint}});
        std::string reply;
        try {
            reply = client.generate(prompt, 2048);
        } catch (const std::exception& e) {
            throw Error("E_LLM_FAILURE", e.what(), "pair " + std::to_string(i));
        }
        ClauseDelta d = parse_delta(reply);
        d.left_contract = sections[i].contract_id;
        d.right_contract = sections[i + 1].contract_id;
        if (d.structured) d.narrative = render_narrative(d);
        chain.deltas.push_back(std::move(d));
    }
    return chain;
}

}  // namespace law
