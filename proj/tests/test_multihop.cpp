#include <doctest.h>

#include "law/error.hpp"
#include "law/multihop.hpp"
#include "oracles.hpp"

#include <random>

using namespace law;

TEST_CASE("duration phrases") {
    auto d = parse_duration("an initial term of three (3) years");
    REQUIRE(d);
    CHECK(d->count == 3);
    CHECK(d->unit == DurationUnit::years);

    d = parse_duration("term of thirty-six months");
    REQUIRE(d);
    CHECK(d->count == 36);
    CHECK(d->unit == DurationUnit::months);

    CHECK_FALSE(parse_duration("shall remain in effect until terminated by either party"));

    d = parse_duration("for a period of 5 years from the date hereof");
    REQUIRE(d);
    CHECK(d->count == 5);

    // digit wins on disagreement
    d = parse_duration("a term of two (3) years");
    REQUIRE(d);
    CHECK(d->count == 3);

    d = parse_duration("for eighteen months");
    REQUIRE(d);
    CHECK(d->count == 18);
}

TEST_CASE("notice periods and deadlines are not durations") {
    CHECK_FALSE(parse_duration("upon sixty (60) days' prior written notice"));
    CHECK_FALSE(parse_duration("within thirty (30) days of receipt"));
    CHECK_FALSE(parse_duration("at least 90 days written notice"));
    CHECK_FALSE(parse_duration("on the 13th day of June, 2005"));
    auto d = parse_duration("upon ninety (90) days written notice. The initial term is two (2) years.");
    REQUIRE(d);
    CHECK(d->count == 2);
}

TEST_CASE("number words") {
    CHECK(number_word_value("twenty") == 20);
    CHECK(number_word_value("Seventeen") == 17);
    CHECK(number_word_value("forty-two") == 42);
    CHECK_FALSE(number_word_value("twenty-twelve"));
    CHECK_FALSE(number_word_value("lorem"));
}

namespace {

ContractDoc doc_with(std::vector<std::pair<std::string, std::string>> parts) {
    ContractDoc doc;
    doc.contract_id = "c1";
    size_t ordinal = 0;
    for (auto& [label, body] : parts) {
        SectionSpan s;
        s.contract_id = doc.contract_id;
        s.ordinal = ordinal++;
        s.title_label = label;
        s.start_offset = doc.plain_text.size();
        s.body_text = body;
        doc.plain_text += body;
        s.end_offset = doc.plain_text.size();
        doc.plain_text += "\n\n";
        doc.sections.push_back(s);
    }
    return doc;
}

DateBundle effective_on(int d, int m, int y) {
    DateBundle b;
    b.effective = make_date(d, m, y);
    b.master = b.effective;
    return b;
}

}  // namespace

TEST_CASE("lifecycle from duration") {
    auto doc = doc_with({{"recitals", "This agreement is made by the parties."},
                         {"termination", "This Agreement shall have an initial term of three (3) years."}});
    auto r = compute_lifecycle(doc, effective_on(13, 6, 2005), doc.sections);
    CHECK(r.basis == LifecycleBasis::effective_plus_duration);
    REQUIRE(r.termination);
    CHECK(to_string(*r.termination) == "13/06/2008");
    CHECK(r.scope == DurationScope::termination);
    REQUIRE(r.evidence);
    CHECK(doc.plain_text.substr(r.evidence->start, r.evidence->end - r.evidence->start) == "three (3) years");

    auto leap = doc_with({{"termination", "for a term of one (1) year"}});
    r = compute_lifecycle(leap, effective_on(29, 2, 2020), leap.sections);
    REQUIRE(r.termination);
    CHECK(to_string(*r.termination) == "28/02/2021");
}

TEST_CASE("lifecycle scope order and explicit dates") {
    auto doc = doc_with({{"recitals", "for an initial period of two (2) years"},
                         {"termination", "Either party may terminate upon sixty (60) days' notice."}});
    auto r = compute_lifecycle(doc, effective_on(1, 1, 2010), doc.sections);
    CHECK(r.scope == DurationScope::recitals);
    CHECK(to_string(*r.termination) == "01/01/2012");

    auto exp = doc_with({{"termination", "This Agreement shall have a term of five (5) years and shall terminate on "
                                         "June 30, 2012 unless renewed."}});
    r = compute_lifecycle(exp, effective_on(1, 1, 2010), exp.sections);
    CHECK(r.basis == LifecycleBasis::explicit_termination_date);
    CHECK(to_string(*r.termination) == "30/06/2012");
    CHECK_FALSE(r.duration_term);

    auto ever = doc_with({{"termination", "This Agreement shall remain in effect until terminated by either party."}});
    r = compute_lifecycle(ever, effective_on(1, 1, 2010), ever.sections);
    CHECK(r.basis == LifecycleBasis::evergreen);
    CHECK_FALSE(r.termination);

    auto whole = doc_with({{"unknown", "The term hereof is 18 months."}});
    r = compute_lifecycle(whole, effective_on(31, 1, 2010), whole.sections);
    CHECK(r.scope == DurationScope::whole_text);
    CHECK(to_string(*r.termination) == "31/07/2011");

    CHECK_THROWS_AS(compute_lifecycle(whole, DateBundle{}, whole.sections), Error);
}

TEST_CASE("explicit date before effective is ignored") {
    auto doc = doc_with({{"termination", "The prior agreement shall terminate on June 30, 2001."}});
    auto r = compute_lifecycle(doc, effective_on(1, 1, 2010), doc.sections);
    CHECK(r.basis == LifecycleBasis::evergreen);
}

TEST_CASE("lifecycle never ends before effective (random durations)") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        int count = static_cast<int>(rng() % 60) + 1;
        const char* units[] = {"years", "months", "days"};
        std::string unit = units[rng() % 3];
        auto doc = doc_with({{"termination", "a term of " + std::to_string(count) + " " + unit}});
        CalendarDate eff = from_day_number(static_cast<long>(rng() % 30000));
        DateBundle b;
        b.effective = eff;
        auto r = compute_lifecycle(doc, b, doc.sections);
        REQUIRE(r.termination);
        CHECK(*r.termination >= eff);
        CHECK(*r.termination == oracle::add_by_iteration(eff, *r.duration_term));
    }
}

namespace {

ContractFacts facts(std::string id, DateBundle dates, std::vector<std::pair<std::string, PartyRole>> parties) {
    ContractFacts f;
    f.contract_id = std::move(id);
    f.dates = dates;
    for (auto& [n, r] : parties) f.parties.push_back(PartyRecord{n, r, 1.0, 0, 0});
    return f;
}

DateBundle amendment(CalendarDate eff, CalendarDate master) {
    DateBundle b;
    b.effective = eff;
    b.master = master;
    return b;
}

}  // namespace

TEST_CASE("master resolution") {
    auto m = facts("m1", effective_on(13, 6, 2005), {{"Fund A", PartyRole::fund}, {"Custodian C", PartyRole::custodian}});
    auto other = facts("m2", effective_on(13, 6, 2005), {{"Fund B", PartyRole::fund}, {"Custodian C", PartyRole::custodian}});
    auto a = facts("a1", amendment(make_date(1, 3, 2010), make_date(13, 6, 2005)),
                   {{"Fund A", PartyRole::fund}, {"Custodian C", PartyRole::custodian}});
    MasterDirectory dir({m, other, a});

    auto link = resolve_master(m, dir);
    CHECK(link.kind == LinkKind::master);
    CHECK(link.master_id == "m1");

    link = resolve_master(a, dir);
    CHECK(link.kind == LinkKind::amendment);
    CHECK(link.master_id == "m1");
    CHECK(link.error_code.empty());

    MasterDirectory without_master({other, a});
    link = resolve_master(a, without_master);
    CHECK(link.error_code == "E_UNRESOLVED_MASTER");
    CHECK(link.master_id.empty());
}

TEST_CASE("tied master candidates stay unresolved") {
    auto m1 = facts("m1", effective_on(1, 1, 2001), {{"Fund A", PartyRole::fund}, {"Custodian C", PartyRole::custodian}});
    auto m2 = facts("m2", effective_on(1, 1, 2001), {{"Fund A", PartyRole::fund}, {"Custodian C", PartyRole::custodian}});
    auto a = facts("a", amendment(make_date(1, 1, 2003), make_date(1, 1, 2001)),
                   {{"Fund A", PartyRole::fund}, {"Custodian C", PartyRole::custodian}});
    MasterDirectory dir({m1, m2});
    CHECK(resolve_master(a, dir).error_code == "E_UNRESOLVED_MASTER");

    // higher Jaccard wins
    auto m3 = facts("m3", effective_on(1, 1, 2001),
                    {{"Fund A", PartyRole::fund}, {"Custodian C", PartyRole::custodian}, {"Trust T", PartyRole::trust}});
    auto a2 = facts("a2", amendment(make_date(1, 1, 2003), make_date(1, 1, 2001)),
                    {{"Fund A", PartyRole::fund}, {"Custodian C", PartyRole::custodian}, {"Trust T", PartyRole::trust}});
    MasterDirectory dir2({m1, m3});
    CHECK(resolve_master(a2, dir2).master_id == "m3");
}
