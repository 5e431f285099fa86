#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "law/labels.hpp"

namespace law {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
    double title_weight = 2.0;
};

/// Lowercase alphanumeric runs of length >= 2.
std::vector<std::string> index_tokens(std::string_view text);

struct Posting {
    size_t doc = 0;
    int body_tf = 0;
    int title_tf = 0;
};

struct SearchHit {
    size_t doc = 0;
    double score = 0.0;
};

/// Immutable per-section BM25 index over body and title (label + heading)
/// fields. Sections are stored ordered by (contract_id, ordinal) so a
/// contract's sections form a contiguous doc range.
class SearchIndex {
public:
    SearchIndex() = default;
    explicit SearchIndex(std::vector<LabeledSection> sections, Bm25Params params = {});

    /// Top-k sections of one contract; ties by ordinal. Sections with no
    /// query term are not returned. Unknown contract → empty.
    std::vector<SearchHit> search(std::string_view contract_id, std::string_view query, size_t k = 20) const;

    const LabeledSection& section(size_t doc) const { return sections_.at(doc); }
    const std::vector<LabeledSection>& sections() const { return sections_; }
    /// Sections of a contract in ordinal order.
    std::vector<const LabeledSection*> contract_sections(std::string_view contract_id) const;

    size_t size() const { return sections_.size(); }
    double average_length() const { return avgdl_; }
    size_t length(size_t doc) const { return lengths_.at(doc); }
    const Bm25Params& params() const { return params_; }
    const std::vector<Posting>* postings(std::string_view term) const;
    size_t term_count() const { return postings_.size(); }

    /// Documented header: {"magic": "LAWIDX", "version": 1, ...}. Postings are
    /// rebuilt from the stored sections on load.
    void save(const std::filesystem::path& path) const;
    static SearchIndex load(const std::filesystem::path& path);

private:
    std::pair<size_t, size_t> contract_range(std::string_view contract_id) const;

    std::vector<LabeledSection> sections_;
    std::vector<size_t> lengths_;
    std::map<std::string, std::vector<Posting>, std::less<>> postings_;
    double avgdl_ = 0.0;
    Bm25Params params_;
};

inline constexpr std::string_view kIndexMagic = "LAWIDX";
inline constexpr int kIndexVersion = 1;

}  // namespace law
