#include "law/labels.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "law/embedded_data.hpp"
#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law {

bool is_clause_label(std::string_view label) {
    return std::find(kClauseLabels.begin(), kClauseLabels.end(), label) != kClauseLabels.end();
}

namespace {

bool roman_or_number(std::string_view w) {
    if (w.empty()) return false;
    bool roman = std::all_of(w.begin(), w.end(), [](char c) { return std::string_view("ivxlc").find(c) != std::string_view::npos; });
    bool number = std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    return roman || number;
}

std::string lexicon_file_name(std::string_view label) {
    std::string name(label);
    std::replace(name.begin(), name.end(), ' ', '_');
    return "lexicons/" + name + ".txt";
}

}  // namespace

std::string normalize_heading(std::string_view heading) {
    auto toks = alnum_tokens(heading);
    size_t i = 0;
    if (i < toks.size() && (toks[i] == "article" || toks[i] == "section")) {
        ++i;
    }
    while (i < toks.size() && roman_or_number(toks[i])) ++i;
    std::vector<std::string> rest(toks.begin() + static_cast<long>(i), toks.end());
    return join(rest, " ");
}

double Lexicon::total() const {
    double t = 0;
    for (const auto& [_, w] : weights) t += w;
    return t;
}

Lexicon parse_lexicon(std::string_view text) {
    Lexicon lex;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string term;
        double w = 1.0;
        if (!(ls >> term)) continue;
        if (!(ls >> w)) w = 1.0;
        lex.weights[to_lower(term)] = w;
    }
    return lex;
}

const std::map<std::string, std::string>& KeywordSectionLabeler::aliases() {
    static const std::map<std::string, std::string> table = [] {
        std::map<std::string, std::string> t;
        for (auto label : kClauseLabels) t[std::string(label)] = std::string(label);
        const std::pair<const char*, const char*> extra[] = {
            {"accounts", "account transactions"},
            {"custody account", "account transactions"},
            {"custody accounts", "account transactions"},
            {"authorized persons and signatures", "authorized persons"},
            {"authorized signatories", "authorized persons"},
            {"defined terms", "definitions"},
            {"duties of the custodian", "duties and responsibilities"},
            {"custodian duties", "duties and responsibilities"},
            {"proof of authority", "evidence of authority"},
            {"certified resolutions", "evidence of authority"},
            {"schedule of fees", "fee schedule"},
            {"fees", "fees and expenses"},
            {"compensation", "fees and expenses"},
            {"compensation and expenses", "fees and expenses"},
            {"foreign custody", "foreign custodian and subcustodian"},
            {"foreign custody manager", "foreign custodian and subcustodian"},
            {"governing law jurisdiction", "governing law"},
            {"applicable law", "governing law"},
            {"choice of law", "governing law"},
            {"indemnity", "indemnification"},
            {"indemnities", "indemnification"},
            {"proper instructions", "instructions"},
            {"limitation of liability", "limitations and scope of use or liability"},
            {"limitations of liability", "limitations and scope of use or liability"},
            {"general provisions", "miscellaneous"},
            {"general", "miscellaneous"},
            {"registration in nominee name", "nominees"},
            {"nominee name", "nominees"},
            {"confidentiality", "proprietary information"},
            {"confidential information", "proprietary information"},
            {"background", "recitals"},
            {"witnesseth", "recitals"},
            {"standard of care", "standard of care liabilities"},
            {"responsibility of custodian", "standard of care liabilities"},
            {"securities depositories", "subcustodians and securities depositories"},
            {"use of securities depositories", "subcustodians and securities depositories"},
            {"successor custodians", "successor custodian"},
            {"term and termination", "termination"},
            {"term", "termination"},
            {"duration and termination", "termination"},
        };
        for (auto [k, v] : extra) t[normalize_heading(k)] = v;
        return t;
    }();
    return table;
}

KeywordSectionLabeler::KeywordSectionLabeler(double threshold) : threshold_(threshold) {
    for (auto label : kClauseLabels) {
        auto file = embedded_file(lexicon_file_name(label));
        if (!file) throw Error("E_CONFIG", "missing lexicon for label " + std::string(label));
        lexicons_[std::string(label)] = parse_lexicon(*file);
    }
}

KeywordSectionLabeler::KeywordSectionLabeler(std::map<std::string, Lexicon> lexicons, double threshold)
    : lexicons_(std::move(lexicons)), threshold_(threshold) {}

std::map<std::string, double> KeywordSectionLabeler::scores(const SectionSpan& section) const {
    std::set<std::string> present;
    for (auto& t : alnum_tokens(section.heading_text)) present.insert(std::move(t));
    for (auto& t : alnum_tokens(section.body_text)) present.insert(std::move(t));
    std::map<std::string, double> out;
    for (const auto& [label, lex] : lexicons_) {
        double total = lex.total();
        double hit = 0;
        for (const auto& [term, w] : lex.weights) {
            if (present.count(term)) hit += w;
        }
        out[label] = total > 0 ? hit / total : 0.0;
    }
    return out;
}

LabeledSection KeywordSectionLabeler::label(const SectionSpan& section) const {
    LabeledSection out{section, 0.0};
    std::string key = normalize_heading(section.heading_text);
    if (!key.empty()) {
        auto it = aliases().find(key);
        if (it != aliases().end()) {
            out.section.title_label = it->second;
            out.label_score = 1.0;
            return out;
        }
    }
    // std::map iterates labels alphabetically, so strict '>' keeps the lower
    // label on ties.
    std::string best = std::string(kUnknownLabel);
    double best_score = 0.0;
    for (const auto& [label, score] : scores(section)) {
        if (score > best_score) {
            best = label;
            best_score = score;
        }
    }
    if (best_score >= threshold_ && best_score > 0.0) {
        out.section.title_label = best;
        out.label_score = best_score;
    } else {
        out.section.title_label = std::string(kUnknownLabel);
        out.label_score = 0.0;
    }
    return out;
}

std::vector<LabeledSection> label_sections(const std::vector<SectionSpan>& sections, const SectionLabeler& labeler) {
    std::vector<LabeledSection> out;
    out.reserve(sections.size());
    for (const auto& s : sections) out.push_back(labeler.label(s));
    return out;
}

}  // namespace law
