#include "doctest.h"

#include <filesystem>

#include "law/corpus.hpp"
#include "law/extraction.hpp"
#include "law/labels.hpp"
#include "law/multihop.hpp"
#include "law/synth.hpp"
#include "law/text_util.hpp"
#include "oracles.hpp"

using namespace law;

namespace {

struct Analyzed {
    ContractDoc doc;
    DateBundle dates;
    std::vector<PartyRecord> parties;
};

std::vector<Analyzed> analyze(const SynthCorpus& corpus) {
    static const KeywordSectionLabeler labeler;
    std::vector<Analyzed> out;
    for (const auto& raw : corpus.docs) {
        Analyzed a{raw, {}, {}};
        ingest(a.doc);
        for (auto& ls : label_sections(a.doc.sections, labeler)) {
            a.doc.sections[static_cast<size_t>(ls.section.ordinal)].title_label = ls.section.title_label;
        }
        a.dates = extract_dates(a.doc);
        a.parties = extract_parties(a.doc, corpus.manifest.registry);
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

TEST_CASE("generation is deterministic per seed") {
    SynthOptions o;
    o.seed = 7;
    auto a = generate_corpus(o);
    auto b = generate_corpus(o);
    REQUIRE(a.docs.size() == b.docs.size());
    for (size_t i = 0; i < a.docs.size(); ++i) CHECK(a.docs[i].raw_markup == b.docs[i].raw_markup);
    CHECK(nlohmann::json(a.manifest).dump() == nlohmann::json(b.manifest).dump());
    o.seed = 8;
    CHECK(generate_corpus(o).docs[1].raw_markup != a.docs[1].raw_markup);
}

TEST_CASE("target contract count is honoured") {
    SynthOptions o;
    o.n_families = 100;
    o.target_contracts = 200;
    auto c = generate_corpus(o);
    CHECK(c.docs.size() == 200);
    CHECK(c.manifest.contracts.size() == 200);
}

TEST_CASE("normalized markup equals the expected text") {
    SynthOptions o;
    o.seed = 7;
    auto c = generate_corpus(o);
    for (size_t i = 0; i < c.docs.size(); ++i) {
        std::string text = normalize_markup(c.docs[i].raw_markup);
        CHECK(text == c.expected_texts[i]);
        CHECK(hex64(fnv1a64(text)) == c.manifest.find(c.docs[i].contract_id)->text_digest);
    }
}

TEST_CASE("manifest termination agrees with the calendar oracle") {
    SynthOptions o;
    o.seed = 7;
    auto c = generate_corpus(o);
    for (const auto& m : c.manifest.contracts) {
        if (m.termination_basis == "effective_plus_duration") {
            REQUIRE(m.duration);
            CHECK(*m.termination == oracle::add_by_iteration(m.effective, *m.duration));
        } else if (m.termination_basis == "evergreen") {
            CHECK_FALSE(m.termination);
        } else {
            CHECK(m.termination);
        }
        CHECK(day_number(m.dated) <= day_number(m.effective));
        CHECK(day_number(m.master) <= day_number(m.effective));
    }
}

TEST_CASE("sections and labels match the manifest") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SynthOptions o;
        o.seed = seed;
        auto c = generate_corpus(o);
        auto docs = analyze(c);
        size_t sections = 0, heading_ok = 0, labels = 0, label_ok = 0;
        for (const auto& a : docs) {
            const auto* m = c.manifest.find(a.doc.contract_id);
            REQUIRE(m);
            CHECK(a.doc.sections.size() == m->sections.size());
            for (size_t i = 0; i < std::min(a.doc.sections.size(), m->sections.size()); ++i) {
                ++sections;
                heading_ok += a.doc.sections[i].heading_text == m->sections[i].heading;
                ++labels;
                label_ok += a.doc.sections[i].title_label == m->sections[i].label;
            }
        }
        INFO("seed " << seed);
        CHECK(static_cast<double>(heading_ok) / sections >= 0.95);
        CHECK(static_cast<double>(label_ok) / labels >= 0.90);
    }
}

TEST_CASE("extracted dates, parties and lifecycle match the manifest") {
    SynthOptions o;
    o.seed = 42;
    auto c = generate_corpus(o);
    auto docs = analyze(c);
    for (const auto& a : docs) {
        const auto* m = c.manifest.find(a.doc.contract_id);
        INFO(a.doc.contract_id);
        REQUIRE(a.dates.effective);
        CHECK(*a.dates.effective == m->effective);
        REQUIRE(a.dates.master);
        CHECK(*a.dates.master == m->master);
        CHECK(is_master(a.dates) == m->is_master);

        std::set<std::string> got, want;
        for (const auto& p : a.parties) got.insert(p.name);
        for (const auto& p : m->parties) want.insert(p.name);
        CHECK(got == want);

        auto life = compute_lifecycle(a.doc, a.dates, a.doc.sections);
        CHECK(life.termination == m->termination);
        CHECK(std::string(to_string(life.basis)) == m->termination_basis);
    }
}

TEST_CASE("master resolution rebuilds the family tree") {
    SynthOptions o;
    o.seed = 3;
    o.n_families = 15;
    auto c = generate_corpus(o);
    auto docs = analyze(c);
    std::vector<ContractFacts> facts;
    for (const auto& a : docs) facts.push_back({a.doc.contract_id, a.dates, a.parties});
    MasterDirectory dir(facts);
    for (const auto& f : facts) {
        const auto* m = c.manifest.find(f.contract_id);
        auto link = resolve_master(f, dir);
        INFO(f.contract_id);
        CHECK(link.master_id == m->family_master);
        CHECK((link.kind == LinkKind::master) == m->is_master);
    }
}

TEST_CASE("synthetic corpus round-trips through the store") {
    SynthOptions o;
    o.n_families = 3;
    auto c = generate_corpus(o);
    auto root = std::filesystem::temp_directory_path() / ("law_synth_" + std::to_string(::getpid()));
    std::filesystem::remove_all(root);
    save_synth_corpus(root, c);
    auto m = load_manifest(root);
    CHECK(nlohmann::json(m).dump() == nlohmann::json(c.manifest).dump());
    CHECK(store::load_registry(root) == c.manifest.registry);
    CHECK(store::list_contracts(root).size() == c.docs.size());
    std::filesystem::remove_all(root);
}
