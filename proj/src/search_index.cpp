#include "law/search_index.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law {

std::vector<std::string> index_tokens(std::string_view text) { return alnum_tokens(text, 2); }

namespace {

std::string title_field(const LabeledSection& s) {
    std::string t;
    if (s.section.title_label != kUnknownLabel) t = s.section.title_label;
    if (!s.section.heading_text.empty()) t += " " + s.section.heading_text;
    return t;
}

}  // namespace

SearchIndex::SearchIndex(std::vector<LabeledSection> sections, Bm25Params params)
    : sections_(std::move(sections)), params_(params) {
    std::stable_sort(sections_.begin(), sections_.end(), [](const LabeledSection& a, const LabeledSection& b) {
        if (a.section.contract_id != b.section.contract_id) return a.section.contract_id < b.section.contract_id;
        return a.section.ordinal < b.section.ordinal;
    });
    lengths_.resize(sections_.size());
    double total = 0;
    for (size_t doc = 0; doc < sections_.size(); ++doc) {
        std::map<std::string, Posting> tf;
        auto body = index_tokens(sections_[doc].section.body_text);
        lengths_[doc] = body.size();
        total += static_cast<double>(body.size());
        for (auto& t : body) tf[t].body_tf++;
        for (auto& t : index_tokens(title_field(sections_[doc]))) tf[t].title_tf++;
        for (auto& [term, p] : tf) {
            p.doc = doc;
            postings_[term].push_back(p);
        }
    }
    avgdl_ = sections_.empty() ? 0.0 : total / static_cast<double>(sections_.size());
}

const std::vector<Posting>* SearchIndex::postings(std::string_view term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
}

std::pair<size_t, size_t> SearchIndex::contract_range(std::string_view contract_id) const {
    auto lo = std::lower_bound(sections_.begin(), sections_.end(), contract_id,
                               [](const LabeledSection& s, std::string_view id) { return s.section.contract_id < id; });
    auto hi = std::upper_bound(sections_.begin(), sections_.end(), contract_id,
                               [](std::string_view id, const LabeledSection& s) { return id < s.section.contract_id; });
    return {static_cast<size_t>(lo - sections_.begin()), static_cast<size_t>(hi - sections_.begin())};
}

std::vector<const LabeledSection*> SearchIndex::contract_sections(std::string_view contract_id) const {
    auto [lo, hi] = contract_range(contract_id);
    std::vector<const LabeledSection*> out;
    for (size_t i = lo; i < hi; ++i) out.push_back(&sections_[i]);
    return out;
}

std::vector<SearchHit> SearchIndex::search(std::string_view contract_id, std::string_view query, size_t k) const {
    auto [lo, hi] = contract_range(contract_id);
    if (lo == hi || k == 0) return {};
    auto terms = index_tokens(query);
    std::set<std::string> unique(terms.begin(), terms.end());

    const double n_docs = static_cast<double>(sections_.size());
    std::map<size_t, double> scores;
    for (const auto& term : unique) {
        const auto* plist = postings(term);
        if (!plist) continue;
        const double df = static_cast<double>(plist->size());
        const double idf = std::log(1.0 + (n_docs - df + 0.5) / (df + 0.5));
        auto it = std::lower_bound(plist->begin(), plist->end(), lo,
                                   [](const Posting& p, size_t doc) { return p.doc < doc; });
        for (; it != plist->end() && it->doc < hi; ++it) {
            const double tf = it->body_tf + params_.title_weight * it->title_tf;
            const double ratio = avgdl_ > 0 ? static_cast<double>(lengths_[it->doc]) / avgdl_ : 0.0;
            const double norm = params_.k1 * (1.0 - params_.b + params_.b * ratio);
            scores[it->doc] += idf * tf * (params_.k1 + 1.0) / (tf + norm);
        }
    }
    std::vector<SearchHit> hits;
    for (auto [doc, score] : scores) hits.push_back({doc, score});
    // Docs within a contract are in ordinal order, so doc id breaks ties.
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc < b.doc;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

void SearchIndex::save(const std::filesystem::path& path) const {
    nlohmann::json j;
    j["magic"] = kIndexMagic;
    j["version"] = kIndexVersion;
    j["params"] = {{"k1", params_.k1}, {"b", params_.b}, {"title_weight", params_.title_weight}};
    j["stats"] = {{"sections", sections_.size()}, {"terms", postings_.size()}, {"avgdl", avgdl_}};
    auto& arr = j["sections"] = nlohmann::json::array();
    for (const auto& s : sections_) {
        nlohmann::json sj = s.section;
        sj["label_score"] = s.label_score;
        arr.push_back(sj);
    }
    store::write_file_atomic(path, j.dump(1) + "\n");
}

SearchIndex SearchIndex::load(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(store::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error("E_IO", std::string("index parse failed: ") + e.what(), path.string());
    }
    if (j.value("magic", "") != kIndexMagic || j.value("version", 0) != kIndexVersion) {
        throw Error("E_IO", "not a version 1 LAWIDX index", path.string());
    }
    Bm25Params p;
    p.k1 = j.at("params").at("k1").get<double>();
    p.b = j.at("params").at("b").get<double>();
    p.title_weight = j.at("params").at("title_weight").get<double>();
    std::vector<LabeledSection> sections;
    for (const auto& sj : j.at("sections")) {
        sections.push_back({sj.get<SectionSpan>(), sj.value("label_score", 0.0)});
    }
    return SearchIndex(std::move(sections), p);
}

}  // namespace law
