#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "law/error.hpp"
#include "law/eval.hpp"

using namespace law;
using namespace law::eval;
using plan::Task;

namespace {

struct Fixture {
    SynthCorpus corpus;
    std::shared_ptr<const Workspace> ws;
    std::vector<EvalCase> cases;
};

const Fixture& fixture() {
    static Fixture f = [] {
        Fixture x{eval_corpus(7, 120), nullptr, {}};
        x.ws = Workspace::from_documents(x.corpus.docs, x.corpus.manifest.registry);
        x.cases = build_dataset(x.corpus.manifest, *x.ws, {.seed = 7});
        return x;
    }();
    return f;
}

struct Fixed final : System {
    CaseOutcome outcome;
    std::string name() const override { return "fixed"; }
    CaseOutcome run(const EvalCase&) const override { return outcome; }
};

}  // namespace

TEST_CASE("token f1") {
    CHECK(token_f1("the fee is $100", "the fee is $100") == 1.0);
    CHECK(token_f1("The Fee", "the fee") == 1.0);
    CHECK(token_f1("alpha beta", "gamma delta") == 0.0);
    CHECK(token_f1("", "") == 1.0);
    CHECK(token_f1("", "x") == 0.0);
    // p = 2/3, r = 2/4
    CHECK(token_f1("a b c", "a b d e") == doctest::Approx(2 * (2.0 / 3) * 0.5 / (2.0 / 3 + 0.5)));
    std::mt19937_64 rng(3);
    const char* words[] = {"fee", "trust", "bank", "custody", "the", "of", "notice", "days"};
    for (int i = 0; i < 300; ++i) {
        std::string a, b;
        for (int k = static_cast<int>(rng() % 12); k > 0; --k) a += std::string(words[rng() % 8]) + " ";
        for (int k = static_cast<int>(rng() % 12); k > 0; --k) b += std::string(words[rng() % 8]) + " ";
        CHECK(token_f1(a, b) == doctest::Approx(token_f1(b, a)));
        CHECK(token_f1(a, a) == 1.0);
        CHECK(token_f1(a, b) >= 0.0);
        CHECK(token_f1(a, b) <= 1.0);
    }
}

TEST_CASE("truncation keeps a token prefix") {
    CHECK(truncate_tokens("a b c d", 2) == "a b ");
    CHECK(truncate_tokens("a, b", 2) == "a, ");
    CHECK(truncate_tokens("abc", 0) == "");
    CHECK(truncate_tokens("abc def", 10) == "abc def");
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        std::string text;
        for (int k = static_cast<int>(rng() % 80); k > 0; --k) text += "w" + std::to_string(rng() % 50) + (rng() % 3 ? " " : ". ");
        size_t n = rng() % 40;
        auto cut = truncate_tokens(text, n);
        CHECK(text.compare(0, cut.size(), cut) == 0);
        CHECK(count_tokens(cut) == std::min(n, count_tokens(text)));
    }
}

TEST_CASE("dataset shape") {
    const auto& cases = fixture().cases;
    REQUIRE(cases.size() == 720);
    std::map<std::pair<Task, std::string>, size_t> per;
    std::set<std::string> ids;
    for (const auto& c : cases) {
        ++per[{c.query.task, c.combo}];
        ids.insert(c.id);
        CHECK_NOTHROW(c.query.validate());
        if (c.kind == CaseKind::retrieval) {
            CHECK_FALSE(c.truth.empty());
            CHECK(c.candidates.size() <= 8);
        } else {
            CHECK(c.query.clause_label);
        }
    }
    CHECK(ids.size() == cases.size());
    size_t retrieval = 0, analytical = 0;
    for (const auto& [k, n] : per) {
        if (plan::is_retrieval_task(k.first)) {
            CHECK(n == 20);
            retrieval += n;
        } else {
            CHECK(n == 10);
            analytical += n;
        }
    }
    CHECK(retrieval == 600);
    CHECK(analytical == 120);
}

TEST_CASE("dataset is deterministic per seed") {
    auto again = build_dataset(fixture().corpus.manifest, *fixture().ws, {.seed = 7});
    nlohmann::json a = fixture().cases, b = again;
    CHECK(a == b);
    auto other = build_dataset(fixture().corpus.manifest, *fixture().ws, {.seed = 8});
    CHECK(nlohmann::json(other) != a);
    // JSON round trip
    auto back = a.get<std::vector<EvalCase>>();
    CHECK(nlohmann::json(back) == a);
}

TEST_CASE("retrieval truth comes from the manifest") {
    const auto& m = fixture().corpus.manifest;
    for (const auto& c : fixture().cases) {
        if (c.query.task != Task::find_master_agreements) continue;
        std::set<std::string> want;
        for (const auto& mc : m.contracts) {
            bool ok = true;
            for (const auto* e : {&c.query.fund, &c.query.trust, &c.query.custodian}) {
                ok = ok && (!*e || std::any_of(mc.parties.begin(), mc.parties.end(),
                                               [&](const RegistryEntry& p) { return p.name == **e; }));
            }
            if (ok) want.insert(mc.family_master);
        }
        CHECK(std::set<std::string>(c.truth.begin(), c.truth.end()) == want);
        for (const auto& id : c.truth) CHECK(m.find(id)->is_master);
    }
}

TEST_CASE("baseline candidates hold correct and distractor contracts") {
    const auto& m = fixture().corpus.manifest;
    for (const auto& c : fixture().cases) {
        if (c.query.task == Task::explore_all) {
            std::set<std::string> truth(c.truth.begin(), c.truth.end());
            size_t correct = 0;
            for (const auto& id : c.candidates) correct += truth.count(id);
            CHECK(correct == std::min<size_t>(4, truth.size()));
            CHECK(c.candidates.size() - correct == 4);
            CHECK(c.candidate_truth.size() == correct);
        } else if (c.query.task == Task::find_master_agreements) {
            for (const auto& id : c.candidates) {
                bool in_truth = std::count(c.candidate_truth.begin(), c.candidate_truth.end(), id) > 0;
                CHECK(m.find(id)->is_master == in_truth);
            }
        } else if (c.kind == CaseKind::retrieval) {
            CHECK(c.candidates.size() <= 4);
            for (const auto& item : c.candidate_truth) {
                CHECK(std::count(c.candidates.begin(), c.candidates.end(), item.substr(0, item.find('|'))) == 1);
            }
        }
    }
}

TEST_CASE("insufficient corpus") {
    CorpusManifest empty;
    CHECK_THROWS_WITH_AS(build_dataset(empty, *fixture().ws), doctest::Contains("fund"), Error);
}

TEST_CASE("scoring rules") {
    EvalCase c;
    c.id = "q1";
    c.query.task = Task::explore_all;
    c.query.fund = "F";
    c.truth = {"a", "b", "c", "d"};
    c.candidates = {"a", "b", "x", "y"};
    c.candidate_truth = {"a", "b"};
    TokenF1Scorer f1;

    CaseOutcome o;
    o.items = {"a", "b", "z"};
    auto s = score_case(c, o, f1);
    CHECK(s.hits == 2);
    CHECK(s.total == 4);

    CaseOutcome tf;
    tf.judgments = {{"a", true}, {"b", false}, {"x", false}, {"y", true}};
    s = score_case(c, tf, f1);
    CHECK(s.hits == 2);
    CHECK(s.total == 4);

    CaseOutcome restricted;
    restricted.candidates_only = true;
    restricted.items = {"a"};
    s = score_case(c, restricted, f1);
    CHECK(s.hits == 1);
    CHECK(s.total == 2);

    CaseOutcome failed;
    failed.error = "E_EXHAUSTED";
    s = score_case(c, failed, f1);
    CHECK(s.hits == 0);
    CHECK(s.total == 4);

    EvalCase a = c;
    a.kind = CaseKind::analytical;
    a.query.task = Task::summarize_clause;
    a.reference = "fees are paid monthly";
    CaseOutcome text;
    text.text = "fees are paid monthly";
    CHECK(score_case(a, text, f1).f1 == 1.0);
    CaseOutcome unsupported;
    unsupported.unsupported = true;
    CHECK_FALSE(score_case(a, unsupported, f1).f1);

    // identical answers score 1.0 everywhere
    Fixed perfect;
    for (const auto& ec : fixture().cases) {
        if (ec.kind != CaseKind::retrieval) continue;
        perfect.outcome.items = ec.truth;
        CHECK(score_case(ec, perfect.outcome, f1).hits == ec.truth.size());
    }
}

TEST_CASE("aggregation is order independent") {
    TokenF1Scorer f1;
    auto card = run_eval(fixture().cases, BaselineSystem(fixture().ws), f1, 4);
    auto shuffled = card.cases;
    std::mt19937_64 rng(11);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto a = aggregate(card.cases);
    auto b = aggregate(shuffled);
    for (const auto& [task, t] : a) {
        CHECK(b.at(task).hits == t.hits);
        CHECK(b.at(task).total == t.total);
        CHECK(b.at(task).f1 == doctest::Approx(t.f1));
        CHECK(b.at(task).macro_hit_rate == doctest::Approx(t.macro_hit_rate));
    }
    // and independent of worker count
    auto serial = run_eval(fixture().cases, BaselineSystem(fixture().ws), f1, 1);
    CHECK(nlohmann::json(serial.to_json()["tasks"]) == card.to_json()["tasks"]);
}

TEST_CASE("law beats the truncated baseline") {
    TokenF1Scorer f1;
    auto law = run_eval(fixture().cases, LawSystem(fixture().ws), f1);
    auto base = run_eval(fixture().cases, BaselineSystem(fixture().ws), f1);
    for (Task t : {Task::explore_all, Task::find_master_agreements, Task::find_master_dates,
                   Task::find_termination_dates, Task::find_parties}) {
        CAPTURE(plan::to_string(t));
        CHECK(law.tasks.at(t).hit_rate() == 1.0);
        CHECK(law.tasks.at(t).errors == 0);
    }
    CHECK(base.tasks.at(Task::find_termination_dates).hit_rate() < law.tasks.at(Task::find_termination_dates).hit_rate());
    CHECK(law.tasks.at(Task::summarize_clause).f1 > base.tasks.at(Task::summarize_clause).f1);
    CHECK(law.tasks.at(Task::compare_clause).f1 > 0.9);
    CHECK(base.tasks.at(Task::compare_clause).scored == 0);

    auto table = render_table(&law, &base);
    CHECK(table.find("Find termination dates") != std::string::npos);
    CHECK(table.find("Compare clause X") != std::string::npos);
    auto csv = render_csv(&law, &base);
    CHECK(csv.find("compare_clause,") != std::string::npos);
    CHECK(csv.find(",-\n") != std::string::npos);
}

TEST_CASE("baseline reads a shared window") {
    BaselineSystem b(fixture().ws, 50);
    std::vector<std::string> ids;
    for (size_t i = 0; i < 4; ++i) ids.push_back(fixture().ws->documents()[i].contract_id);
    auto parts = b.shared_context(ids);
    size_t total = 0;
    for (const auto& p : parts) total += count_tokens(p);
    CHECK(total == 50);
    CHECK(parts.back().empty());
}
