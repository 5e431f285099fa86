#include "law/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "law/error.hpp"
#include "law/extraction.hpp"
#include "law/multihop.hpp"
#include "law/parallel.hpp"
#include "law/plan/interpreter.hpp"
#include "law/text_util.hpp"

namespace law::eval {

using nlohmann::json;
using plan::Task;

std::string_view to_string(CaseKind kind) { return kind == CaseKind::retrieval ? "retrieval" : "analytical"; }

const std::vector<std::string> kEntityCombos = {"fund",       "trust",          "custodian",
                                                "fund+trust", "fund+custodian", "trust+custodian"};

void to_json(json& j, const EvalCase& c) {
    j = {{"id", c.id},
         {"query", plan::to_json(c.query)},
         {"kind", to_string(c.kind)},
         {"combo", c.combo},
         {"truth", c.truth},
         {"reference", c.reference},
         {"candidates", c.candidates},
         {"candidate_truth", c.candidate_truth}};
}

void from_json(const json& j, EvalCase& c) {
    c.id = j.at("id").get<std::string>();
    c.query = plan::query_from_json(j.at("query"));
    c.kind = j.at("kind").get<std::string>() == "analytical" ? CaseKind::analytical : CaseKind::retrieval;
    c.combo = j.at("combo").get<std::string>();
    c.truth = j.at("truth").get<std::vector<std::string>>();
    c.reference = j.at("reference").get<std::string>();
    c.candidates = j.at("candidates").get<std::vector<std::string>>();
    c.candidate_truth = j.at("candidate_truth").get<std::vector<std::string>>();
}

namespace {

const std::vector<Task> kRetrievalTasks = {Task::explore_all, Task::find_master_agreements, Task::find_master_dates,
                                           Task::find_termination_dates, Task::find_parties};
const std::vector<Task> kAnalyticalTasks = {Task::summarize_clause, Task::compare_clause};

struct Rng {
    std::mt19937_64 engine;
    size_t below(size_t n) { return static_cast<size_t>(engine() % n); }
    template <class T>
    std::vector<T> sample(std::vector<T> v, size_t k) {
        for (size_t i = 0; i < v.size() && i < k; ++i) std::swap(v[i], v[i + below(v.size() - i)]);
        v.resize(std::min(k, v.size()));
        std::sort(v.begin(), v.end());
        return v;
    }
};

bool names(const ManifestContract& c, const std::string& name) {
    return std::any_of(c.parties.begin(), c.parties.end(), [&](const RegistryEntry& p) { return p.name == name; });
}

std::vector<const ManifestContract*> matching(const CorpusManifest& m, const plan::QuerySpec& q) {
    std::vector<const ManifestContract*> out;
    for (const auto& c : m.contracts) {
        bool ok = true;
        for (const auto* e : {&q.fund, &q.trust, &q.custodian}) ok = ok && (!*e || names(c, **e));
        if (ok) out.push_back(&c);
    }
    return out;
}

std::string date_item(const std::string& id, const std::optional<CalendarDate>& d, const char* none) {
    return id + "|" + (d ? to_string(*d) : std::string(none));
}

std::vector<std::string> truth_items(Task task, const std::vector<const ManifestContract*>& contracts) {
    std::set<std::string> out;
    for (const auto* c : contracts) {
        switch (task) {
            case Task::explore_all: out.insert(c->contract_id); break;
            case Task::find_master_agreements: out.insert(c->family_master); break;
            case Task::find_master_dates: out.insert(date_item(c->contract_id, c->master, "none")); break;
            case Task::find_termination_dates:
                out.insert(date_item(c->contract_id, c->termination, "evergreen"));
                break;
            case Task::find_parties:
                for (const auto& p : c->parties) {
                    out.insert(c->contract_id + "|" + std::string(to_string(p.role)) + ":" + p.name);
                }
                break;
            default: break;
        }
    }
    return {out.begin(), out.end()};
}

plan::QuerySpec sample_entities(const CorpusManifest& m, const std::string& combo, Task task, Rng& rng) {
    std::vector<const ManifestFamily*> families;
    for (const auto& f : m.families) {
        if (!f.funds.empty()) families.push_back(&f);
    }
    if (families.empty()) throw Error("E_INSUFFICIENT_CORPUS", "manifest has no fund families");
    for (int tries = 0; tries < 200; ++tries) {
        const auto& f = *families[rng.below(families.size())];
        plan::QuerySpec q;
        q.task = task;
        if (combo.find("fund") != std::string::npos) q.fund = f.funds[rng.below(f.funds.size())];
        if (combo.find("trust") != std::string::npos) q.trust = f.trust;
        if (combo.find("custodian") != std::string::npos) q.custodian = f.custodian;
        if (!matching(m, q).empty()) return q;
    }
    throw Error("E_INSUFFICIENT_CORPUS", "no contract satisfies entity combination " + combo, combo);
}

const SectionSpan* manifest_section(const ManifestContract& c, const ContractDoc& doc, const std::string& label) {
    for (size_t i = 0; i < c.sections.size() && i < doc.sections.size(); ++i) {
        if (c.sections[i].label == label) return &doc.sections[i];
    }
    return nullptr;
}

}  // namespace

std::vector<EvalCase> build_dataset(const CorpusManifest& manifest, const Workspace& ws,
                                    const DatasetOptions& options) {
    Rng rng{std::mt19937_64(options.seed)};
    std::vector<EvalCase> out;
    auto next_id = [&] {
        char buf[16];
        std::snprintf(buf, sizeof buf, "q%04zu", out.size() + 1);
        return std::string(buf);
    };
    std::vector<std::string> all_ids, amendment_ids;
    for (const auto& c : manifest.contracts) {
        all_ids.push_back(c.contract_id);
        if (!c.is_master) amendment_ids.push_back(c.contract_id);
    }

    for (Task task : kRetrievalTasks) {
        for (const auto& combo : kEntityCombos) {
            for (size_t i = 0; i < options.retrieval_per_combo; ++i) {
                EvalCase c;
                c.id = next_id();
                c.kind = CaseKind::retrieval;
                c.combo = combo;
                c.query = sample_entities(manifest, combo, task, rng);
                auto contracts = matching(manifest, c.query);
                c.truth = truth_items(task, contracts);
                std::vector<std::string> ids;
                for (const auto* m : contracts) ids.push_back(m->contract_id);
                if (task == Task::explore_all || task == Task::find_master_agreements) {
                    std::vector<std::string> correct, wrong;
                    if (task == Task::explore_all) {
                        correct = ids;
                        std::set_difference(all_ids.begin(), all_ids.end(), ids.begin(), ids.end(),
                                            std::back_inserter(wrong));
                    } else {
                        correct = c.truth;
                        for (const auto& id : ids) {
                            if (!manifest.find(id)->is_master) wrong.push_back(id);
                        }
                        if (wrong.size() < options.baseline_distractors) {
                            std::vector<std::string> rest;
                            std::set_difference(amendment_ids.begin(), amendment_ids.end(), wrong.begin(),
                                                wrong.end(), std::back_inserter(rest));
                            for (auto& id : rng.sample(rest, options.baseline_distractors - wrong.size())) {
                                wrong.push_back(id);
                            }
                        }
                    }
                    c.candidate_truth = rng.sample(correct, options.baseline_correct);
                    c.candidates = c.candidate_truth;
                    for (auto& id : rng.sample(wrong, options.baseline_distractors)) c.candidates.push_back(id);
                    std::sort(c.candidates.begin(), c.candidates.end());
                } else {
                    c.candidates = rng.sample(ids, options.baseline_correct);
                    for (const auto& item : c.truth) {
                        auto id = item.substr(0, item.find('|'));
                        if (std::binary_search(c.candidates.begin(), c.candidates.end(), id)) {
                            c.candidate_truth.push_back(item);
                        }
                    }
                }
                out.push_back(std::move(c));
            }
        }
    }

    auto client = ws.make_client();
    for (Task task : kAnalyticalTasks) {
        for (const auto& combo : kEntityCombos) {
            for (size_t i = 0; i < options.analytical_per_combo; ++i) {
                EvalCase c;
                c.id = next_id();
                c.kind = CaseKind::analytical;
                c.combo = combo;
                c.query = sample_entities(manifest, combo, task, rng);
                auto contracts = matching(manifest, c.query);
                std::set<std::string> labels;
                for (const auto* m : contracts) {
                    for (const auto& s : m->sections) {
                        if (s.label != "unknown") labels.insert(s.label);
                    }
                }
                if (labels.empty()) throw Error("E_INSUFFICIENT_CORPUS", "no labeled sections for " + combo, combo);
                std::vector<std::string> label_list(labels.begin(), labels.end());
                const std::string label = label_list[rng.below(label_list.size())];
                c.query.clause_label = label;

                std::vector<ClauseSource> sources;
                for (const auto* m : contracts) {
                    const ContractDoc* doc = ws.document(m->contract_id);
                    if (!doc) continue;
                    const SectionSpan* s = manifest_section(*m, *doc, label);
                    if (!s || trim(s->body_text).empty()) continue;
                    sources.push_back({m->contract_id, m->effective, s->ordinal, s->body_text});
                }
                std::stable_sort(sources.begin(), sources.end(), [](const ClauseSource& a, const ClauseSource& b) {
                    if (*a.effective != *b.effective) return *a.effective < *b.effective;
                    return a.contract_id < b.contract_id;
                });
                std::vector<ClauseSource> picked;
                size_t k = ws.config().sample_k;
                size_t n = sources.size();
                for (size_t j = 0; j < std::min(k, n); ++j) picked.push_back(sources[j * n / std::min(k, n)]);
                for (const auto& s : picked) c.truth.push_back(s.contract_id);
                if (task == Task::summarize_clause) {
                    std::vector<std::string> texts;
                    for (const auto& s : picked) texts.push_back(s.text);
                    SummarizeOptions opts;
                    opts.max_parallel = ws.config().max_parallel;
                    c.reference = texts.empty() ? "" : summarize(texts, ws.config().budget, *client, opts);
                } else if (!picked.empty()) {
                    c.reference = render_comparison(compare_clauses(picked, ws.config().budget, *client));
                }
                std::vector<std::string> relevant;
                for (const auto& s : sources) relevant.push_back(s.contract_id);
                c.candidates = rng.sample(relevant, options.baseline_correct);
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

std::vector<std::string> answer_items(Task task, const plan::Value& result) {
    using K = plan::Value::Kind;
    std::vector<std::string> out;
    if (result.kind != K::list) return out;
    for (const auto& v : result.items) {
        if (v.kind == K::contract || v.kind == K::str) {
            out.push_back(v.str);
        } else if (v.kind == K::pair) {
            const auto& id = v.items[0].str;
            const auto& x = v.items[1];
            if (x.kind == K::date) {
                out.push_back(id + "|" + to_string(x.date));
            } else if (x.kind == K::null) {
                out.push_back(id + "|" + (task == Task::find_termination_dates ? "evergreen" : "none"));
            } else {
                out.push_back(id + "|" + x.str);
            }
        } else if (v.kind == K::section) {
            out.push_back(v.section.contract_id);
        }
    }
    return out;
}

namespace {

std::map<std::string, int> token_bag(std::string_view text) {
    std::map<std::string, int> bag;
    std::string cur;
    for (char ch : text) {
        if (std::isalnum(static_cast<unsigned char>(ch))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        } else if (!cur.empty()) {
            ++bag[cur];
            cur.clear();
        }
    }
    if (!cur.empty()) ++bag[cur];
    return bag;
}

}  // namespace

double token_f1(std::string_view candidate, std::string_view reference) {
    auto a = token_bag(candidate);
    auto b = token_bag(reference);
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    long overlap = 0, na = 0, nb = 0;
    for (const auto& [t, n] : a) {
        na += n;
        auto it = b.find(t);
        if (it != b.end()) overlap += std::min(n, it->second);
    }
    for (const auto& [t, n] : b) nb += n;
    if (overlap == 0) return 0.0;
    double p = static_cast<double>(overlap) / static_cast<double>(na);
    double r = static_cast<double>(overlap) / static_cast<double>(nb);
    return 2 * p * r / (p + r);
}

double TokenF1Scorer::score(std::string_view candidate, std::string_view reference) const {
    return token_f1(candidate, reference);
}

CaseOutcome LawSystem::run(const EvalCase& c) const {
    CaseOutcome out;
    try {
        auto env = ws_->answer(c.query);
        out.items = answer_items(c.query.task, env.result);
        if (env.result.kind == plan::Value::Kind::str) out.text = env.result.str;
    } catch (const Error& e) {
        out.error = e.code();
    }
    return out;
}

std::string_view truncate_tokens(std::string_view text, size_t n) {
    size_t count = 0;
    size_t i = 0;
    while (i < text.size()) {
        unsigned char ch = static_cast<unsigned char>(text[i]);
        if (std::isspace(ch)) {
            ++i;
            continue;
        }
        if (count == n) return text.substr(0, i);
        ++count;
        if (std::isalnum(ch)) {
            while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
        } else {
            ++i;
        }
    }
    return text;
}

std::string BaselineSystem::context(const std::string& contract_id) const {
    const ContractDoc* d = ws_->document(contract_id);
    if (!d) return {};
    return std::string(truncate_tokens(d->plain_text, context_tokens_));
}

namespace {

bool contains_ci(std::string_view hay, std::string_view needle) {
    return to_lower(hay).find(to_lower(needle)) != std::string::npos;
}

// sentence around `pos`
std::string_view sentence_at(std::string_view text, size_t pos) {
    size_t a = text.rfind('.', pos);
    a = a == std::string_view::npos ? 0 : a + 1;
    size_t b = text.find('.', pos);
    b = b == std::string_view::npos ? text.size() : b;
    return text.substr(a, b - a);
}

std::optional<CalendarDate> first_date(std::string_view text) {
    for (const auto& lit : find_date_literals(text)) {
        if (lit.date) return lit.date;
    }
    return std::nullopt;
}

PartyRole guess_role(const std::string& name) {
    if (contains_ci(name, "bank") || contains_ci(name, "company")) return PartyRole::custodian;
    if (contains_ci(name, "fund")) return PartyRole::fund;
    if (contains_ci(name, "trust")) return PartyRole::trust;
    return PartyRole::other;
}

std::vector<std::string> preamble_names(std::string_view text) {
    std::vector<std::string> out;
    size_t at = to_lower(text).find("between");
    if (at == std::string::npos) return out;
    size_t end = text.find('.', at);
    std::string seg(text.substr(at + 7, (end == std::string_view::npos ? text.size() : end) - at - 7));
    for (auto& ch : seg) {
        if (ch == '\n') ch = ' ';
    }
    std::vector<std::string> parts;
    size_t pos = 0;
    while (pos <= seg.size()) {
        size_t c = seg.find(',', pos);
        size_t a = seg.find(" and ", pos);
        size_t cut = std::min(c, a);
        parts.push_back(seg.substr(pos, cut == std::string::npos ? std::string::npos : cut - pos));
        if (cut == std::string::npos) break;
        pos = cut + (cut == a ? 5 : 1);
    }
    for (auto& p : parts) {
        auto t = trim(p);
        if (starts_with_ci(t, "the ") && t.size() > 4 && std::islower(static_cast<unsigned char>(t[4]))) continue;
        if (t.empty() || !std::isupper(static_cast<unsigned char>(t[0]))) continue;
        out.push_back(t);
    }
    return out;
}

}  // namespace

std::vector<std::string> BaselineSystem::shared_context(const std::vector<std::string>& ids) const {
    std::vector<std::string> out;
    size_t left = context_tokens_;
    for (const auto& id : ids) {
        const ContractDoc* d = ws_->document(id);
        std::string_view text = d ? std::string_view(d->plain_text) : std::string_view();
        auto cut = truncate_tokens(text, left);
        left -= count_tokens(cut);
        out.emplace_back(cut);
    }
    return out;
}

CaseOutcome BaselineSystem::run(const EvalCase& c) const {
    CaseOutcome out;
    out.candidates_only = true;
    const auto& q = c.query;
    const auto shared = shared_context(c.candidates);
    switch (q.task) {
        case Task::explore_all:
            for (const auto& id : c.candidates) {
                auto ctx = context(id);
                bool yes = true;
                for (const auto* e : {&q.fund, &q.trust, &q.custodian}) yes = yes && (!*e || contains_ci(ctx, **e));
                out.judgments[id] = yes;
            }
            break;
        case Task::find_master_agreements:
            for (const auto& id : c.candidates) {
                auto ctx = context(id);
                out.judgments[id] = !contains_ci(std::string_view(ctx).substr(0, 300), "amend");
            }
            break;
        case Task::find_master_dates:
            for (const auto& id : c.candidates) {
                if (auto d = first_date(context(id))) out.items.push_back(id + "|" + to_string(*d));
            }
            break;
        case Task::find_termination_dates:
            for (const auto& id : c.candidates) {
                auto ctx = context(id);
                std::optional<CalendarDate> when;
                for (const auto& lit : find_date_literals(ctx)) {
                    if (lit.date && contains_ci(sentence_at(ctx, lit.start), "terminat")) {
                        when = lit.date;
                        break;
                    }
                }
                if (!when) {
                    auto d = find_duration(ctx);
                    auto start = first_date(ctx);
                    if (d && start) when = add(*start, d->duration);
                }
                if (when) out.items.push_back(id + "|" + to_string(*when));
            }
            break;
        case Task::find_parties:
            for (const auto& id : c.candidates) {
                auto ctx = context(id);
                std::set<std::string> found;
                for (const auto& n : preamble_names(ctx)) found.insert(n);
                for (const auto* e : {&q.fund, &q.trust, &q.custodian}) {
                    if (*e && contains_ci(ctx, **e)) found.insert(**e);
                }
                for (const auto& n : found) {
                    out.items.push_back(id + "|" + std::string(to_string(guess_role(n))) + ":" + n);
                }
            }
            break;
        case Task::summarize_clause: {
            std::string joined;
            for (const auto& part : shared) joined += part + "\n\n";
            MockLlmClient client;
            out.text = client.summarize_text(joined);
            break;
        }
        case Task::compare_clause:
        case Task::find_clause: out.unsupported = true; break;
    }
    return out;
}

CaseScore score_case(const EvalCase& c, const CaseOutcome& o, const SimilarityScorer& scorer) {
    CaseScore s;
    s.case_id = c.id;
    s.task = c.query.task;
    s.error = o.error;
    if (c.kind == CaseKind::analytical) {
        if (!o.unsupported) s.f1 = o.error.empty() ? scorer.score(o.text, c.reference) : 0.0;
        return s;
    }
    if (!o.judgments.empty()) {
        std::set<std::string> yes(c.candidate_truth.begin(), c.candidate_truth.end());
        s.total = c.candidates.size();
        for (const auto& id : c.candidates) {
            auto it = o.judgments.find(id);
            if (it != o.judgments.end() && it->second == (yes.count(id) > 0)) ++s.hits;
        }
        return s;
    }
    const auto& truth = o.candidates_only ? c.candidate_truth : c.truth;
    std::set<std::string> got(o.items.begin(), o.items.end());
    s.total = truth.size();
    for (const auto& t : truth) s.hits += got.count(t);
    return s;
}

std::map<Task, TaskScore> aggregate(const std::vector<CaseScore>& scores) {
    std::map<Task, TaskScore> out;
    std::map<Task, double> macro_sum, f1_sum;
    std::map<Task, size_t> macro_n;
    for (const auto& s : scores) {
        auto& t = out[s.task];
        ++t.cases;
        if (!s.error.empty()) ++t.errors;
        if (s.f1) {
            ++t.scored;
            f1_sum[s.task] += *s.f1;
        } else if (s.total > 0) {
            ++t.scored;
            t.hits += s.hits;
            t.total += s.total;
            macro_sum[s.task] += static_cast<double>(s.hits) / static_cast<double>(s.total);
            ++macro_n[s.task];
        }
    }
    for (auto& [task, t] : out) {
        if (macro_n[task]) t.macro_hit_rate = macro_sum[task] / static_cast<double>(macro_n[task]);
        if (f1_sum.count(task) && t.scored) t.f1 = f1_sum[task] / static_cast<double>(t.scored);
    }
    return out;
}

ScoreCard run_eval(const std::vector<EvalCase>& cases, const System& system, const SimilarityScorer& scorer,
                   size_t workers) {
    auto t0 = std::chrono::steady_clock::now();
    ScoreCard card;
    card.system = system.name();
    card.scorer = scorer.name();
    card.cases.resize(cases.size());
    parallel_for(cases.size(), workers,
                 [&](size_t i) { card.cases[i] = score_case(cases[i], system.run(cases[i]), scorer); });
    card.tasks = aggregate(card.cases);
    card.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return card;
}

json ScoreCard::to_json() const {
    json tasks_j = json::object();
    for (const auto& [task, t] : tasks) {
        json row = {{"cases", t.cases}, {"scored", t.scored}, {"errors", t.errors}};
        if (plan::is_retrieval_task(task)) {
            row["hits"] = t.hits;
            row["total"] = t.total;
            row["hit_rate"] = t.hit_rate();
            row["macro_hit_rate"] = t.macro_hit_rate;
        } else {
            row["similarity_f1"] = t.scored ? json(t.f1) : json(nullptr);
        }
        tasks_j[std::string(plan::to_string(task))] = row;
    }
    json cases_j = json::array();
    for (const auto& c : cases) {
        json row = {{"id", c.case_id}, {"task", plan::to_string(c.task)}};
        if (c.f1) row["f1"] = *c.f1;
        else row["hits"] = c.hits, row["total"] = c.total;
        if (!c.error.empty()) row["error"] = c.error;
        cases_j.push_back(row);
    }
    return {{"system", system}, {"scorer", scorer},   {"seed", seed},      {"hit_rate", "micro-averaged recall"},
            {"tasks", tasks_j}, {"cases", cases_j},   {"seconds", seconds}};
}

ScoreCard ScoreCard::from_json(const json& j) {
    ScoreCard card;
    card.system = j.at("system").get<std::string>();
    card.scorer = j.at("scorer").get<std::string>();
    card.seed = j.at("seed").get<std::uint64_t>();
    card.seconds = j.value("seconds", 0.0);
    for (const auto& [name, row] : j.at("tasks").items()) {
        TaskScore t;
        t.cases = row.at("cases").get<size_t>();
        t.scored = row.at("scored").get<size_t>();
        t.errors = row.at("errors").get<size_t>();
        t.hits = row.value("hits", size_t{0});
        t.total = row.value("total", size_t{0});
        t.macro_hit_rate = row.value("macro_hit_rate", 0.0);
        if (row.contains("similarity_f1") && !row["similarity_f1"].is_null()) t.f1 = row["similarity_f1"].get<double>();
        card.tasks[plan::parse_task(name)] = t;
    }
    return card;
}

namespace {

struct Row {
    Task task;
    const char* title;
};
const std::vector<Row> kRows = {{Task::explore_all, "Explore all contracts"},
                                {Task::find_master_agreements, "Find master agreements"},
                                {Task::find_master_dates, "Find master dates"},
                                {Task::find_termination_dates, "Find termination dates"},
                                {Task::find_parties, "Find parties"},
                                {Task::summarize_clause, "Summarize clause X"},
                                {Task::compare_clause, "Compare clause X"}};

std::string cell(const ScoreCard* card, Task task) {
    if (!card) return "-";
    auto it = card->tasks.find(task);
    if (it == card->tasks.end() || it->second.scored == 0) return "-";
    double v = plan::is_retrieval_task(task) ? it->second.hit_rate() : it->second.f1;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", 100.0 * v);
    return buf;
}

}  // namespace

std::string render_table(const ScoreCard* law, const ScoreCard* baseline) {
    std::string scorer = law ? law->scorer : baseline ? baseline->scorer : "token-f1";
    std::string out;
    char line[128];
    std::snprintf(line, sizeof line, "%-26s %8s %9s\n", "User Query", "LAW", "Baseline");
    out += line;
    out += std::string(45, '-') + "\n";
    out += "Retrieval (hit rate, micro-averaged recall)\n";
    for (const auto& r : kRows) {
        if (r.task == Task::summarize_clause) out += "Analytical (" + scorer + ")\n";
        std::snprintf(line, sizeof line, "%-26s %8s %9s\n", r.title, cell(law, r.task).c_str(),
                      cell(baseline, r.task).c_str());
        out += line;
    }
    return out;
}

std::string render_csv(const ScoreCard* law, const ScoreCard* baseline) {
    std::string out = "task,law,baseline\n";
    for (const auto& r : kRows) {
        out += std::string(plan::to_string(r.task)) + "," + cell(law, r.task) + "," + cell(baseline, r.task) + "\n";
    }
    return out;
}

SynthCorpus eval_corpus(std::uint64_t seed, size_t contracts) {
    SynthOptions o;
    o.seed = seed;
    o.n_families = std::max<size_t>(contracts, 1);
    o.target_contracts = contracts;
    return generate_corpus(o);
}

}  // namespace law::eval
