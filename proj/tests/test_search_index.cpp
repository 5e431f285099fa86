#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "law/search_index.hpp"
#include "oracles.hpp"

using namespace law;

namespace {

LabeledSection ls(std::string contract, size_t ordinal, std::string label, std::string heading, std::string body) {
    LabeledSection s;
    s.section.contract_id = std::move(contract);
    s.section.ordinal = static_cast<int>(ordinal);
    s.section.title_label = std::move(label);
    s.section.heading_text = std::move(heading);
    s.section.body_text = std::move(body);
    s.label_score = s.section.title_label == "unknown" ? 0.0 : 1.0;
    return s;
}

oracle::Bm25Doc as_doc(const LabeledSection& s) {
    std::string title = s.section.title_label == "unknown" ? "" : s.section.title_label;
    return {s.section.contract_id, static_cast<size_t>(s.section.ordinal), title + " " + s.section.heading_text, s.section.body_text};
}

}  // namespace

TEST_CASE("empty index") {
    SearchIndex idx(std::vector<LabeledSection>{});
    CHECK(idx.size() == 0);
    CHECK(idx.search("c", "fees").empty());
}

TEST_CASE("postings equal hand counts") {
    SearchIndex idx({ls("c", 0, "unknown", "", "fees fees a custody"),
                     ls("c", 1, "fees and expenses", "Fees", "the custodian fees"),
                     ls("d", 0, "unknown", "", "custody custody")});
    const auto* fees = idx.postings("fees");
    REQUIRE(fees);
    REQUIRE(fees->size() == 2);
    CHECK(fees->at(0).body_tf == 2);
    CHECK(fees->at(0).title_tf == 0);
    CHECK(fees->at(1).body_tf == 1);
    CHECK(fees->at(1).title_tf == 2);  // label word + heading word
    CHECK(idx.postings("a") == nullptr);  // single-char tokens dropped
    CHECK(idx.length(0) == 3);
    CHECK(idx.average_length() == doctest::Approx((3.0 + 3.0 + 2.0) / 3.0));
    CHECK(idx.postings("custody")->size() == 2);
}

TEST_CASE("unique term with title boost ranks first; truncation; unknown contract") {
    std::vector<LabeledSection> v;
    for (size_t i = 0; i < 7; ++i) v.push_back(ls("c", i, "unknown", "", "the custodian shall hold assets"));
    v[4] = ls("c", 4, "indemnification", "INDEMNIFICATION", "the fund shall indemnify the custodian");
    SearchIndex idx(v);
    auto hits = idx.search("c", "indemnification");
    REQUIRE(!hits.empty());
    CHECK(idx.section(hits[0].doc).section.ordinal == 4);
    CHECK(idx.search("c", "custodian", 20).size() <= 7);
    CHECK(idx.search("c", "custodian", 3).size() == 3);
    CHECK(idx.search("zzz", "custodian").empty());
}

TEST_CASE("ties are broken by ordinal") {
    SearchIndex idx({ls("c", 2, "unknown", "", "same words"), ls("c", 0, "unknown", "", "same words"),
                     ls("c", 1, "unknown", "", "same words")});
    auto hits = idx.search("c", "same");
    REQUIRE(hits.size() == 3);
    CHECK(idx.section(hits[0].doc).section.ordinal == 0);
    CHECK(idx.section(hits[2].doc).section.ordinal == 2);
}

TEST_CASE("toy index matches brute force on fees and expenses") {
    std::vector<LabeledSection> v = {
        ls("c", 0, "recitals", "", "whereas the fund desires to retain the custodian"),
        ls("c", 1, "fees and expenses", "Compensation", "the fund shall pay fees and out of pocket expenses"),
        ls("c", 2, "fee schedule", "Schedule of Fees", "annual fee of basis points"),
        ls("c", 3, "unknown", "", "expenses incurred by the custodian"),
        ls("c", 4, "governing law", "", "laws of the state of new york"),
    };
    SearchIndex idx(v);
    std::vector<oracle::Bm25Doc> docs;
    for (const auto& s : idx.sections()) docs.push_back(as_doc(s));
    auto expect = oracle::bm25_rank(docs, "c", "fees and expenses", 20);
    auto got = idx.search("c", "fees and expenses");
    REQUIRE(got.size() == expect.size());
    for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].doc == expect[i].first);
        CHECK(std::abs(got[i].score - expect[i].second) < 1e-9);
    }
    CHECK(idx.section(got[0].doc).section.ordinal == 1);
}

TEST_CASE("title boost monotonicity") {
    std::vector<LabeledSection> v = {ls("c", 0, "unknown", "", "custodian shall pay fees"),
                                     ls("c", 1, "unknown", "", "other text here")};
    double before = SearchIndex(v).search("c", "fees")[0].score;
    v[0].section.heading_text = "Fees";
    double after = SearchIndex(v).search("c", "fees")[0].score;
    CHECK(after >= before);
}

TEST_CASE("persist and reload") {
    auto path = std::filesystem::temp_directory_path() / "law_test_index.json";
    SearchIndex idx({ls("c", 0, "termination", "Term", "this agreement may be terminated"),
                     ls("c", 1, "unknown", "", "other")});
    idx.save(path);
    auto back = SearchIndex::load(path);
    CHECK(back.size() == idx.size());
    CHECK(back.term_count() == idx.term_count());
    CHECK(back.average_length() == idx.average_length());
    CHECK(back.search("c", "terminated")[0].score == idx.search("c", "terminated")[0].score);
    std::filesystem::remove(path);
}

TEST_CASE("random corpus agrees with brute force") {
    std::mt19937_64 rng(5);
    const char* vocab[] = {"fees", "custodian", "fund", "terminate", "notice", "law", "indemnify",
                           "securities", "assets", "account", "trust", "agreement", "the", "of"};
    std::vector<LabeledSection> v;
    for (int c = 0; c < 10; ++c) {
        for (size_t o = 0; o < 20; ++o) {
            std::string body;
            size_t n = rng() % 30;
            for (size_t w = 0; w < n; ++w) body += std::string(vocab[rng() % 14]) + " ";
            std::string label = rng() % 3 == 0 ? std::string(kClauseLabels[rng() % 20]) : "unknown";
            v.push_back(ls("k" + std::to_string(c), o, label, "", body));
        }
    }
    SearchIndex idx(v);
    std::vector<oracle::Bm25Doc> docs;
    for (const auto& s : idx.sections()) docs.push_back(as_doc(s));
    for (int q = 0; q < 50; ++q) {
        std::string query = std::string(vocab[rng() % 14]) + " " + vocab[rng() % 14];
        std::string cid = "k" + std::to_string(rng() % 10);
        auto expect = oracle::bm25_rank(docs, cid, query, 20);
        auto got = idx.search(cid, query);
        REQUIRE(got.size() == expect.size());
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].doc == expect[i].first);
            CHECK(std::abs(got[i].score - expect[i].second) < 1e-9);
        }
    }
}
