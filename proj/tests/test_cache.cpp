#include "doctest.h"

#include <filesystem>
#include <random>

#include "law/cache.hpp"
#include "law/corpus.hpp"
#include "law/error.hpp"
#include "law/synth.hpp"
#include "law/text_util.hpp"
#include "law/workspace.hpp"

using namespace law;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("law_test_cache_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

const std::shared_ptr<const Workspace>& seed42() {
    static auto ws = [] {
        SynthOptions o;
        o.seed = 42;
        o.n_families = 20;
        auto c = generate_corpus(o);
        return Workspace::from_documents(c.docs, c.manifest.registry);
    }();
    return ws;
}

}  // namespace

TEST_CASE("dd/mm/yyyy formatting") {
    CHECK(format_ddmmyyyy({3, 6, 2005}) == "03/06/2005");
    CHECK(parse_ddmmyyyy("03/06/2005") == CalendarDate{3, 6, 2005});
    CHECK_FALSE(parse_ddmmyyyy("31/02/2005"));
    CHECK_FALSE(parse_ddmmyyyy("2005-06-03"));
    CHECK_FALSE(parse_ddmmyyyy(""));
}

TEST_CASE("party encoding round trip") {
    std::vector<RegistryEntry> ps{{"BNY Mellon Funds Trust", PartyRole::trust},
                                  {"The Bank of New York", PartyRole::custodian},
                                  {"Acme \"Growth\" Fund, Inc.", PartyRole::fund}};
    CHECK(decode_parties(encode_parties(ps)) == ps);
    CHECK(decode_parties("").empty());
}

TEST_CASE("csv round trip is bit-exact on the warmed cache") {
    const auto& cache = seed42()->cache();
    REQUIRE(cache.rows.size() >= 50);
    std::string csv = write_cache_csv(cache.rows);
    auto back = read_cache_csv(csv);
    CHECK(back == cache.rows);
    CHECK(write_cache_csv(back) == csv);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.substr(0, csv.find('\n')) == [] {
        std::string h;
        for (const auto& c : kCacheColumns) h += (h.empty() ? "" : ",") + c;
        return h;
    }());
}

TEST_CASE("csv round trip on randomized rows with quoting") {
    std::mt19937_64 rng(9);
    const std::string alphabet = "ab ,\"\n;:xyz";
    auto word = [&](size_t n) {
        std::string s;
        for (size_t i = 0; i < n; ++i) s += alphabet[rng() % alphabet.size()];
        return s;
    };
    auto date = [&]() -> std::optional<CalendarDate> {
        if (rng() % 4 == 0) return std::nullopt;
        return from_day_number(static_cast<long>(rng() % 60000));
    };
    std::vector<CacheRow> rows;
    for (int i = 0; i < 200; ++i) {
        CacheRow r;
        r.contract_id = "c" + std::to_string(i) + word(3);
        r.accession_no = word(5);
        r.effective = date();
        r.master = date();
        r.dated = date();
        r.termination = date();
        if (rng() % 3) r.evergreen = rng() % 2 == 0;
        if (rng() % 3) r.is_master = rng() % 2 == 0;
        r.master_id = word(4);
        for (size_t k = rng() % 3; k > 0; --k) {
            std::string name = word(6);
            std::erase(name, ';');
            std::erase(name, ':');
            r.parties.push_back({"n" + name, static_cast<PartyRole>(rng() % 4)});
        }
        rows.push_back(r);
    }
    auto csv = write_cache_csv(rows);
    CHECK(read_cache_csv(csv) == rows);
}

TEST_CASE("malformed csv is rejected with a line locus") {
    auto csv = write_cache_csv(seed42()->cache().rows);
    CHECK_THROWS_AS(read_cache_csv("nope\n"), Error);
    std::string bad = csv + "x,y\n";
    try {
        read_cache_csv(bad);
        FAIL("expected E_PARSE");
    } catch (const Error& e) {
        CHECK(e.code() == "E_PARSE");
        CHECK(e.locus().find("line") != std::string::npos);
    }
    std::string unterminated = csv + "\"open";
    CHECK_THROWS_AS(read_cache_csv(unterminated), Error);
}

TEST_CASE("re-warming gives byte-identical files") {
    const auto& ws = *seed42();
    auto a = scratch("a");
    auto b = scratch("b");
    save_cache(a, ws.cache());
    save_cache(b, warm_cache(ws.documents(), ws.registry(), 3));
    for (const char* f : {"cache.csv", "cache.facts.json", "cache.errors.json"}) {
        CAPTURE(f);
        CHECK(store::read_file(a / f) == store::read_file(b / f));
    }
    auto loaded = load_cache(a);
    REQUIRE(loaded);
    CHECK(loaded->rows == ws.cache().rows);
    CHECK(loaded->facts == ws.cache().facts);
    CHECK(loaded->errors == ws.cache().errors);
    CHECK(loaded->corpus_digest == ws.cache().corpus_digest);
    CHECK_FALSE(load_cache(scratch("empty")));
}

TEST_CASE("cache rows agree with the manifest") {
    SynthOptions o;
    o.seed = 42;
    o.n_families = 20;
    auto manifest = generate_corpus(o).manifest;
    const auto& cache = seed42()->cache();
    CHECK(cache.errors.empty());
    REQUIRE(cache.rows.size() == manifest.contracts.size());
    for (const auto& row : cache.rows) {
        const auto* m = manifest.find(row.contract_id);
        REQUIRE(m);
        CAPTURE(row.contract_id);
        CHECK(row.effective == m->effective);
        CHECK(row.master == m->master);
        CHECK(row.termination == m->termination);
        CHECK(row.evergreen == (m->termination_basis == "evergreen"));
        CHECK(row.is_master == m->is_master);
        CHECK(row.master_id == m->family_master);
        CHECK(row.accession_no == m->accession_no);
        auto want = m->parties;
        std::sort(want.begin(), want.end(), [](const auto& x, const auto& y) {
            return std::tie(x.role, x.name) < std::tie(y.role, y.name);
        });
        CHECK(row.parties == want);
        const auto& f = cache.facts.at(row.contract_id);
        CHECK(f.basis == m->termination_basis);
        CHECK(f.cite.count("effective"));
    }
}

TEST_CASE("a contract without an effective date degrades to a partial row") {
    auto docs = seed42()->documents();
    ContractDoc broken;
    broken.contract_id = "zz-undated";
    broken.raw_markup = "<html><body><p>CUSTODY AGREEMENT</p><p>This agreement is between Nobody and Someone.</p>"
                        "</body></html>";
    ingest(broken);
    docs.push_back(broken);
    auto cache = warm_cache(docs, seed42()->registry(), 4);
    const auto* row = cache.find("zz-undated");
    REQUIRE(row);
    CHECK_FALSE(row->effective);
    CHECK_FALSE(row->termination);
    CHECK_FALSE(row->evergreen);
    REQUIRE(cache.errors.size() >= 1);
    bool found = false;
    for (const auto& e : cache.errors) found = found || (e.contract_id == "zz-undated" && e.code == "E_NO_EFFECTIVE");
    CHECK(found);
    CHECK(read_cache_csv(write_cache_csv(cache.rows)) == cache.rows);
    CHECK(cache.rows.size() == docs.size());
}

TEST_CASE("cache digest tracks corpus text") {
    auto docs = seed42()->documents();
    auto d0 = corpus_digest(docs);
    CHECK(d0 == seed42()->cache().corpus_digest);
    docs[0].plain_text += " ";
    CHECK(corpus_digest(docs) != d0);
}
