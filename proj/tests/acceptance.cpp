// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "law/agents.hpp"
#include "law/cache.hpp"
#include "law/calendar.hpp"
#include "law/corpus.hpp"
#include "law/eval.hpp"
#include "law/plan/planner.hpp"
#include "law/plan/validate.hpp"
#include "law/search_index.hpp"
#include "law/synth.hpp"
#include "law/workspace.hpp"
#include "oracles.hpp"
#include "plan_fixtures.hpp"

using namespace law;
namespace fs = std::filesystem;
using plan::Task;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string pct(double v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", 100 * v);
    return buf;
}

// eval on a synthetic corpus of 200 contracts
struct EvalRun {
    eval::ScoreCard law, baseline;
    double seconds = 0;
};

EvalRun run_eval_for(std::uint64_t seed, bool with_baseline) {
    auto t0 = std::chrono::steady_clock::now();
    auto corpus = eval::eval_corpus(seed, 200);
    auto ws = Workspace::from_documents(corpus.docs, corpus.manifest.registry);
    auto cases = eval::build_dataset(corpus.manifest, *ws, {.seed = seed});
    eval::TokenF1Scorer f1;
    EvalRun r;
    r.law = eval::run_eval(cases, eval::LawSystem(ws), f1);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (with_baseline) r.baseline = eval::run_eval(cases, eval::BaselineSystem(ws), f1);
    return r;
}

Verdict end_to_end_eval() {
    auto r = run_eval_for(42, false);
    auto hr = [&](Task t) { return r.law.tasks.at(t).hit_rate(); };
    bool ok = hr(Task::explore_all) >= 0.95 && hr(Task::find_master_agreements) == 1.0 &&
              hr(Task::find_master_dates) >= 0.95 && hr(Task::find_termination_dates) >= 0.95 &&
              hr(Task::find_parties) == 1.0 && r.seconds < 300;
    std::ostringstream d;
    d << "explore " << pct(hr(Task::explore_all)) << ", master " << pct(hr(Task::find_master_agreements))
      << ", master dates " << pct(hr(Task::find_master_dates)) << ", termination "
      << pct(hr(Task::find_termination_dates)) << ", parties " << pct(hr(Task::find_parties)) << "; "
      << static_cast<int>(r.seconds * 1000) << " ms";
    return {ok, d.str()};
}

Verdict baseline_gap() {
    bool ok = true;
    std::ostringstream d;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto r = run_eval_for(seed, true);
        double law = r.law.tasks.at(Task::find_termination_dates).hit_rate();
        double base = r.baseline.tasks.at(Task::find_termination_dates).hit_rate();
        ok = ok && law - base >= 0.50;
        d << (seed > 1 ? ", " : "") << "seed " << seed << ": " << pct(law) << " vs " << pct(base);
    }
    return {ok, d.str()};
}

Verdict calendar_oracle() {
    std::mt19937_64 rng(20240601);
    const long lo = day_number(make_date(1, 1, 1900));
    const long hi = day_number(make_date(31, 12, 2060));  // +40 years stays inside the supported range
    size_t mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
        CalendarDate d = from_day_number(lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
        Duration dur{static_cast<int>(rng() % 41), static_cast<DurationUnit>(rng() % 3)};
        if (dur.unit == DurationUnit::days) dur.count = static_cast<int>(rng() % 1500);
        if (dur.unit == DurationUnit::months) dur.count = static_cast<int>(rng() % 121);
        mismatches += !(add(d, dur) == oracle::add_by_iteration(d, dur));
    }
    return {mismatches == 0, "10000 pairs, " + std::to_string(mismatches) + " mismatches"};
}

Verdict bm25_oracle() {
    std::mt19937_64 rng(77);
    const char* vocab[] = {"fees", "custodian", "fund", "terminate", "notice", "law", "indemnify", "securities",
                           "assets", "account", "trust", "agreement", "the", "of", "days", "written",
                           "schedule", "delaware", "persons", "authorized"};
    std::vector<LabeledSection> random_sections;
    for (int c = 0; c < 50; ++c) {
        for (int o = 0; o < 20; ++o) {
            LabeledSection s;
            s.section.contract_id = "k" + std::to_string(c);
            s.section.ordinal = o;
            for (size_t w = rng() % 60; w > 0; --w) s.section.body_text += std::string(vocab[rng() % 20]) + " ";
            s.section.title_label = rng() % 3 ? std::string(kClauseLabels[rng() % 20]) : "unknown";
            s.section.heading_text = rng() % 2 ? std::string(vocab[rng() % 20]) : "";
            random_sections.push_back(s);
        }
    }
    // and the first 1000 sections of a generated corpus
    SynthOptions o;
    o.seed = 42;
    o.n_families = 40;
    auto corpus = generate_corpus(o);
    auto ws = Workspace::from_documents(corpus.docs, corpus.manifest.registry);
    std::vector<LabeledSection> real(ws->labeled_sections().begin(), ws->labeled_sections().begin() + 1000);

    size_t queries = 0, bad = 0;
    double worst = 0;
    for (const auto* sections : {&random_sections, &real}) {
        SearchIndex idx(*sections);
        std::vector<oracle::Bm25Doc> docs;
        std::vector<std::string> ids;
        for (const auto& s : idx.sections()) {
            std::string title = s.section.title_label == "unknown" ? "" : s.section.title_label;
            docs.push_back({s.section.contract_id, static_cast<size_t>(s.section.ordinal),
                            title + " " + s.section.heading_text, s.section.body_text});
            if (ids.empty() || ids.back() != s.section.contract_id) ids.push_back(s.section.contract_id);
        }
        for (int q = 0; q < 200; ++q) {
            std::string query = sections == &real ? std::string(kClauseLabels[rng() % 20])
                                                  : std::string(vocab[rng() % 20]) + " " + vocab[rng() % 20];
            const auto& cid = ids[rng() % ids.size()];
            auto want = oracle::bm25_rank(docs, cid, query, 20);
            auto got = idx.search(cid, query, 20);
            ++queries;
            bool same = got.size() == want.size();
            for (size_t i = 0; same && i < got.size(); ++i) {
                same = got[i].doc == want[i].first;
                worst = std::max(worst, std::abs(got[i].score - want[i].second));
            }
            bad += !same;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu queries on two 1000-section corpora, %zu ranking diffs, max |d| %.2e", queries,
                  bad, worst);
    return {bad == 0 && worst <= 1e-9, buf};
}

Verdict mutation_suite() {
    SynthOptions o;
    o.seed = 42;
    o.n_families = 20;
    auto corpus = generate_corpus(o);
    auto ws = Workspace::from_documents(corpus.docs, corpus.manifest.registry);
    MockLlmClient client;
    Workspace::Sink sink;
    auto reg = ws->tools(sink, client);

    std::vector<plan::QuerySpec> queries;
    for (Task t : plan::all_tasks()) {
        plan::QuerySpec q;
        q.fund = "BNY Mellon International Equity Income Fund";
        q.task = t;
        if (plan::is_clause_task(t)) q.clause_label = "authorized persons";
        queries.push_back(q);
    }
    plan::QuerySpec combo;
    combo.trust = "BNY Mellon Funds Trust";
    combo.custodian = "The Bank of New York Mellon";
    combo.task = Task::find_termination_dates;
    queries.push_back(combo);
    plan::QuerySpec cust;
    cust.custodian = "The Bank of New York Mellon";
    cust.task = Task::find_parties;
    queries.push_back(cust);

    size_t plans = 0, rejected_right = 0;
    for (const auto& q : queries) {
        auto src = plan::compile_template(q);
        for (auto m : fixture::all_mutations()) {
            ++plans;
            auto bad = fixture::mutate(src, m);
            plan::Program p;
            auto report = plan::check_syntax(bad, &p);
            if (report.passed) report = plan::check_tools(p, reg);
            rejected_right += !report.passed && report.tier == fixture::expected_tier(m) &&
                              report.diagnostics.at(0).code == fixture::expected_code(m);
        }
    }
    size_t typos = 0, repaired = 0;
    for (const auto& q : queries) {
        auto src = plan::compile_template(q);
        for (const auto* spec : reg.tools()) {
            size_t pos = src.find(spec->name + "(");
            if (pos == std::string::npos) continue;
            for (const auto& typo : fixture::single_typos(spec->name)) {
                if (reg.find(typo)) continue;
                auto bad = src;
                bad.replace(pos, spec->name.size(), typo);
                fixture::FirstSourcePlanner planner(bad);
                auto r = plan::try_plan_and_repair(q, planner, reg);
                ++typos;
                repaired += r.ok && r.outcome.attempts.size() <= 2;
            }
        }
    }
    bool ok = plans >= 45 && rejected_right == plans && typos > 0 && repaired == typos;
    return {ok, std::to_string(rejected_right) + "/" + std::to_string(plans) + " mutants rejected at the right tier; " +
                    std::to_string(repaired) + "/" + std::to_string(typos) + " typos repaired in <= 2 attempts"};
}

Verdict chunking() {
    std::mt19937_64 rng(8000);
    const char* words[] = {"custody", "fund", "$", "100", "shall", "Trust", "(3)", "a-b", "notice", "days"};
    TokenBudget b;  // 16000 / 8000
    size_t bad = 0, chunks_total = 0, multi = 0;
    for (int c = 0; c < 1000; ++c) {
        std::string text;
        size_t paras = rng() % 10;
        for (size_t p = 0; p < paras; ++p) {
            size_t n = rng() % 10 == 0 ? 9000 + rng() % 3000 : rng() % 2500;
            bool sentences = rng() % 2;
            for (size_t w = 0; w < n; ++w) {
                text += words[rng() % 10];
                text += sentences && rng() % 15 == 0 ? ". " : " ";
            }
            text += std::string(1 + rng() % 2, '\n');
        }
        auto chunks = chunk_text(text, b);
        std::string joined;
        for (const auto& ch : chunks) {
            bad += b.count(ch) > 8000;
            joined += ch;
        }
        bad += joined != text;
        chunks_total += chunks.size();
        multi += chunks.size() > 1;
    }
    return {bad == 0, "1000 corpora, " + std::to_string(chunks_total) + " chunks (" + std::to_string(multi) +
                          " corpora split), " + std::to_string(bad) + " violations"};
}

Verdict comparison_chain() {
    std::mt19937_64 rng(10);
    MockLlmClient mock;
    size_t bad = 0, chains = 0;
    for (size_t n = 1; n <= 10; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<ClauseSource> v;
            for (size_t i = 0; i < n; ++i) {
                ClauseSource s;
                s.contract_id = "c" + std::to_string(i);
                s.effective = make_date(1 + static_cast<int>(rng() % 28), 1 + static_cast<int>(rng() % 12),
                                        2000 + static_cast<int>(rng() % 5));
                s.section_ordinal = static_cast<int>(i);
                s.text = "The fee is $" + std::to_string(100 + rng() % 3) + " per account. Notice is 30 days.";
                v.push_back(s);
            }
            auto chain = compare_clauses(v, TokenBudget{}, mock);
            ++chains;
            bool ok = chain.deltas.size() == n - 1 && chain.sections.size() == n;
            for (size_t i = 0; ok && i + 1 < n; ++i) {
                ok = *chain.sections[i].effective <= *chain.sections[i + 1].effective &&
                     chain.deltas[i].left_contract == chain.sections[i].contract_id &&
                     chain.deltas[i].right_contract == chain.sections[i + 1].contract_id;
            }
            bad += !ok;
        }
    }
    return {bad == 0, std::to_string(chains) + " chains of sizes 1..10, " + std::to_string(bad) + " violations"};
}

Verdict cache_round_trip() {
    auto corpus = eval::eval_corpus(42, 200);
    auto ws = Workspace::from_documents(corpus.docs, corpus.manifest.registry);
    const auto& rows = ws->cache().rows;
    auto csv = write_cache_csv(rows);
    bool round_trip = read_cache_csv(csv) == rows && write_cache_csv(read_cache_csv(csv)) == csv;
    auto base = fs::temp_directory_path() / "law_acceptance_cache";
    fs::remove_all(base);
    save_cache(base / "a", ws->cache());
    save_cache(base / "b", warm_cache(ws->documents(), ws->registry(), 3));
    bool identical = true;
    for (const char* f : {"cache.csv", "cache.facts.json", "cache.errors.json"}) {
        identical = identical && store::read_file(base / "a" / f) == store::read_file(base / "b" / f);
    }
    fs::remove_all(base);
    return {round_trip && identical && rows.size() == 200,
            std::to_string(rows.size()) + " rows; round trip " + (round_trip ? "exact" : "differs") +
                "; re-warm " + (identical ? "byte-identical" : "differs")};
}

Verdict labeling() {
    bool ok = true;
    std::ostringstream d;
    double worst = 1;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SynthOptions o;
        o.seed = seed;
        auto corpus = generate_corpus(o);
        auto ws = Workspace::from_documents(corpus.docs, corpus.manifest.registry);
        size_t total = 0, right = 0;
        for (const auto& m : corpus.manifest.contracts) {
            const auto* doc = ws->document(m.contract_id);
            for (size_t i = 0; i < m.sections.size(); ++i) {
                ++total;
                right += doc && i < doc->sections.size() && doc->sections[i].title_label == m.sections[i].label;
            }
        }
        double acc = static_cast<double>(right) / static_cast<double>(total);
        worst = std::min(worst, acc);
        ok = ok && acc >= 0.90;
    }
    d << "minimum accuracy over seeds 1..10: " << pct(worst);
    return {ok, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"end-to-end eval, seed 42, 200 contracts", end_to_end_eval},
        {"baseline >= 50 points below on termination dates, seeds 1..5", baseline_gap},
        {"calendar add vs day iteration", calendar_oracle},
        {"bm25 vs brute force, top-20", bm25_oracle},
        {"validator mutation suite and typo repair", mutation_suite},
        {"chunking joins back, <= 8000 tokens per chunk", chunking},
        {"comparison chain sizes and order", comparison_chain},
        {"cache csv round trip and re-warm", cache_round_trip},
        {"section labeling >= 0.90, seeds 1..10", labeling},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failures += !v.pass;
        std::cout << (v.pass ? "PASS  " : "FAIL  ") << name << "  (" << v.detail << ")\n" << std::flush;
    }
    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed\n"
                           : "acceptance: all criteria passed\n");
    return failures ? 1 : 0;
}
