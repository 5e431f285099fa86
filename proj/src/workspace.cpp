#include "law/workspace.hpp"

#include <algorithm>
#include <fstream>

#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law {

namespace fs = std::filesystem;
using plan::Value;

// ---------------------------------------------------------------------------
// config

void Config::apply(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("E_CONFIG", "config must be a JSON object");
    Config c = *this;
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "label_threshold") c.label_threshold = v.get<double>();
            else if (key == "bm25_k1") c.bm25.k1 = v.get<double>();
            else if (key == "bm25_b") c.bm25.b = v.get<double>();
            else if (key == "title_weight") c.bm25.title_weight = v.get<double>();
            else if (key == "top_k") c.top_k = v.get<size_t>();
            else if (key == "context_limit") c.budget.context_limit = v.get<size_t>();
            else if (key == "chunk_size") c.budget.chunk_size = v.get<size_t>();
            else if (key == "max_parallel") c.max_parallel = v.get<size_t>();
            else if (key == "max_attempts") c.max_attempts = v.get<int>();
            else if (key == "call_budget") c.call_budget = v.get<size_t>();
            else if (key == "sample_k") c.sample_k = v.get<size_t>();
            else if (key == "planner") c.planner = v.get<std::string>();
            else if (key == "llm") c.llm = v.get<std::string>();
            else if (key == "fetch_rate") c.fetch_rate = v.get<double>();
            else if (key == "user_agent") c.user_agent = v.get<std::string>();
            else if (key == "workers") c.workers = v.get<unsigned>();
            else throw Error("E_CONFIG", "unknown config key '" + key + "'");
        } catch (const nlohmann::json::exception&) {
            throw Error("E_CONFIG", "bad value for config key '" + key + "'");
        }
    }
    if (c.label_threshold < 0 || c.label_threshold > 1) throw Error("E_CONFIG", "label_threshold must be in [0, 1]");
    if (c.budget.chunk_size == 0 || c.budget.chunk_size > c.budget.context_limit) {
        throw Error("E_CONFIG", "chunk_size must be in (0, context_limit]");
    }
    if (c.max_attempts < 1) throw Error("E_CONFIG", "max_attempts must be >= 1");
    if (c.planner != "mock" && c.planner != "llm") throw Error("E_CONFIG", "planner must be mock or llm");
    if (c.llm != "mock" && c.llm != "http") throw Error("E_CONFIG", "llm must be mock or http");
    if (!(c.fetch_rate > 0) || c.fetch_rate > 10) throw Error("E_CONFIG", "fetch_rate must be in (0, 10]");
    if (c.max_parallel == 0 || c.workers == 0) throw Error("E_CONFIG", "max_parallel and workers must be positive");
    *this = std::move(c);
}

Config Config::load(const fs::path& path) {
    Config c;
    try {
        c.apply(nlohmann::json::parse(store::read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("E_CONFIG", std::string("config is not valid JSON: ") + e.what(), path.string());
    }
    return c;
}

nlohmann::json Config::to_json() const {
    return {{"label_threshold", label_threshold}, {"bm25_k1", bm25.k1},
            {"bm25_b", bm25.b},                   {"title_weight", bm25.title_weight},
            {"top_k", top_k},                     {"context_limit", budget.context_limit},
            {"chunk_size", budget.chunk_size},    {"max_parallel", max_parallel},
            {"max_attempts", max_attempts},       {"call_budget", call_budget},
            {"sample_k", sample_k},               {"planner", planner},
            {"llm", llm},                         {"fetch_rate", fetch_rate},
            {"user_agent", user_agent},           {"workers", workers}};
}

// ---------------------------------------------------------------------------
// envelope

nlohmann::json AnswerEnvelope::to_json() const {
    using nlohmann::json;
    json attempts_j = json::array();
    for (const auto& a : attempts) {
        json reports = json::array();
        for (const auto& r : a.reports) reports.push_back(plan::to_json(r));
        attempts_j.push_back({{"source", a.source}, {"reports", reports}});
    }
    json trace_j = json::array();
    for (const auto& t : trace) trace_j.push_back(plan::to_json(t));
    json cites = json::array();
    for (const auto& c : citations) {
        cites.push_back({{"contract_id", c.contract_id},
                         {"section_ordinal", c.section_ordinal},
                         {"heading", c.heading},
                         {"start", c.start},
                         {"end", c.end}});
    }
    json j = {{"query", plan::to_json(query)},
              {"planner", planner},
              {"plan", plan_source},
              {"result", plan::to_json_value(result)},
              {"attempts", attempts_j},
              {"trace", trace_j},
              {"citations", cites}};
    if (comparison) {
        json secs = json::array();
        for (const auto& s : comparison->sections) {
            secs.push_back({{"contract_id", s.contract_id},
                            {"effective_date", s.effective ? json(to_string(*s.effective)) : json(nullptr)},
                            {"section_ordinal", s.section_ordinal},
                            {"text", s.text}});
        }
        json deltas = json::array();
        for (const auto& d : comparison->deltas) {
            json changes = json::array();
            for (const auto& c : d.changes) {
                changes.push_back({{"from", c.from}, {"to", c.to}, {"left", c.left_sentence}, {"right", c.right_sentence}});
            }
            deltas.push_back({{"left_contract", d.left_contract},
                              {"right_contract", d.right_contract},
                              {"only_left", d.only_left},
                              {"only_right", d.only_right},
                              {"changes", changes},
                              {"structured", d.structured},
                              {"no_change", d.no_change()},
                              {"narrative", d.narrative}});
        }
        j["comparison"] = {{"sections", secs}, {"deltas", deltas}};
    }
    return j;
}

std::string AnswerEnvelope::digest() const {
    auto j = to_json();
    for (auto& t : j["trace"]) t.erase("duration_ms");
    return hex64(fnv1a64(j.dump()));
}

namespace {

std::string render_value(const Value& v) {
    switch (v.kind) {
        case Value::Kind::null: return "none";
        case Value::Kind::str: return v.str;
        case Value::Kind::integer: return std::to_string(v.integer);
        case Value::Kind::boolean: return v.boolean ? "true" : "false";
        case Value::Kind::date: return to_string(v.date);
        case Value::Kind::contract: return v.str;
        case Value::Kind::section:
            return "[" + v.section.contract_id + " #" + std::to_string(v.section.ordinal) + " " + v.section.heading +
                   "]\n" + v.section.text;
        case Value::Kind::pair: return render_value(v.items[0]) + "  " + render_value(v.items[1]);
        case Value::Kind::list: {
            if (v.items.empty()) return "(none)";
            std::string out;
            for (const auto& x : v.items) out += render_value(x) + "\n";
            out.pop_back();
            return out;
        }
    }
    return "";
}

}  // namespace

std::string render_answer(const AnswerEnvelope& env) {
    std::string out = env.query.describe() + "\n\n";
    if (env.comparison && !env.comparison->deltas.empty()) {
        for (const auto& d : env.comparison->deltas) {
            out += d.narrative + "\n\n";
        }
    } else {
        out += render_value(env.result) + "\n\n";
    }
    out += "planner: " + env.planner + ", attempts: " + std::to_string(env.attempts.size()) +
           ", tool calls: " + std::to_string(env.trace.size()) + ", citations: " +
           std::to_string(env.citations.size()) + "\n";
    return out;
}

std::string render_comparison(const ComparisonChain& chain) {
    if (chain.deltas.empty()) {
        if (chain.sections.empty()) return "";
        return "Only one version of this clause was found (" + chain.sections[0].contract_id + ").";
    }
    std::string text;
    for (const auto& d : chain.deltas) {
        if (!text.empty()) text += "\n\n";
        text += d.left_contract + " -> " + d.right_contract + ": " + d.narrative;
    }
    return text;
}

// ---------------------------------------------------------------------------
// workspace

std::shared_ptr<const Workspace> Workspace::open(const fs::path& root, const Config& config) {
    std::shared_ptr<Workspace> ws(new Workspace());
    ws->config_ = config;
    ws->root_ = root;
    auto docs = store::load_corpus(root);
    std::vector<ContractDoc> pending;
    for (auto& d : docs) {
        if (d.plain_text.empty() || d.sections.empty()) {
            pending.push_back(std::move(d));
        } else {
            ws->docs_.push_back(std::move(d));
        }
    }
    for (auto& d : ingest_all(std::move(pending), config.workers)) ws->docs_.push_back(std::move(d));
    ws->registry_ = store::load_registry(root);
    ws->build(true);
    return ws;
}

std::shared_ptr<const Workspace> Workspace::from_documents(std::vector<ContractDoc> docs,
                                                           std::vector<RegistryEntry> registry, const Config& config) {
    std::shared_ptr<Workspace> ws(new Workspace());
    ws->config_ = config;
    std::vector<ContractDoc> pending;
    for (auto& d : docs) {
        if (d.plain_text.empty() || d.sections.empty()) {
            pending.push_back(std::move(d));
        } else {
            ws->docs_.push_back(std::move(d));
        }
    }
    for (auto& d : ingest_all(std::move(pending), config.workers)) ws->docs_.push_back(std::move(d));
    ws->registry_ = std::move(registry);
    ws->build(false);
    return ws;
}

void Workspace::build(bool try_artifacts) {
    std::sort(docs_.begin(), docs_.end(),
              [](const ContractDoc& a, const ContractDoc& b) { return a.contract_id < b.contract_id; });
    for (size_t i = 0; i < docs_.size(); ++i) {
        if (!doc_pos_.emplace(docs_[i].contract_id, i).second) {
            throw Error("E_IO", "duplicate contract id " + docs_[i].contract_id);
        }
    }
    if (registry_.empty()) {
        // no curated registry: fall back to the metadata parties
        std::set<std::string> seen;
        for (const auto& d : docs_) {
            for (const auto& p : d.metadata_parties) {
                if (seen.insert(p).second) registry_.push_back({p, PartyRole::other});
            }
        }
    }

    KeywordSectionLabeler labeler(config_.label_threshold);
    for (auto& d : docs_) {
        for (auto& s : d.sections) {
            auto ls = labeler.label(s);
            s.title_label = ls.section.title_label;
            labeled_.push_back(std::move(ls));
        }
    }

    bool index_loaded = false;
    if (try_artifacts && fs::exists(root_ / "index.json")) {
        SearchIndex loaded = SearchIndex::load(root_ / "index.json");
        bool same = loaded.size() == labeled_.size();
        for (size_t i = 0; same && i < labeled_.size(); ++i) {
            const auto& a = loaded.section(i).section;
            same = a.contract_id == labeled_[i].section.contract_id && a.ordinal == labeled_[i].section.ordinal &&
                   a.title_label == labeled_[i].section.title_label && a.body_text == labeled_[i].section.body_text;
        }
        if (same && loaded.params().k1 == config_.bm25.k1 && loaded.params().b == config_.bm25.b &&
            loaded.params().title_weight == config_.bm25.title_weight) {
            index_ = std::move(loaded);
            index_loaded = true;
        }
    }
    if (!index_loaded) index_ = SearchIndex(labeled_, config_.bm25);

    std::optional<FeatureCache> cached;
    if (try_artifacts) cached = load_cache(root_);
    if (cached && cached->corpus_digest == corpus_digest(docs_) && cached->rows.size() == docs_.size()) {
        cache_ = std::move(*cached);
    } else {
        cache_ = warm_cache(docs_, registry_, config_.workers);
    }
}

const ContractDoc* Workspace::document(const std::string& contract_id) const {
    auto it = doc_pos_.find(contract_id);
    return it == doc_pos_.end() ? nullptr : &docs_[it->second];
}

std::optional<RegistryEntry> Workspace::resolve_entity(const std::string& name, PartyRole role) const {
    if (auto e = match_entity(name, registry_, role)) return e;
    // registries built from metadata carry no roles
    return match_entity(name, registry_, PartyRole::other);
}

std::vector<std::string> Workspace::agreements_for(const std::optional<std::string>& fund,
                                                   const std::optional<std::string>& trust,
                                                   const std::optional<std::string>& custodian) const {
    std::vector<std::string> wanted;
    for (auto [name, role] : {std::pair{&fund, PartyRole::fund}, std::pair{&trust, PartyRole::trust},
                              std::pair{&custodian, PartyRole::custodian}}) {
        if (!*name) continue;
        auto e = resolve_entity(**name, role);
        if (!e) return {};
        wanted.push_back(e->name);
    }
    if (wanted.empty()) throw Error("E_BAD_QUERY", "no entity given");
    std::vector<std::string> out;
    for (const auto& row : cache_.rows) {
        bool all = std::all_of(wanted.begin(), wanted.end(), [&](const std::string& w) {
            return std::any_of(row.parties.begin(), row.parties.end(),
                               [&](const RegistryEntry& p) { return p.name == w; });
        });
        if (all) out.push_back(row.contract_id);
    }
    return out;
}

std::vector<const LabeledSection*> Workspace::sections_for(const std::string& contract_id,
                                                           const std::string& clause) const {
    std::vector<const LabeledSection*> out;
    if (is_clause_label(clause)) {
        for (const auto* s : index_.contract_sections(contract_id)) {
            if (s->section.title_label == clause) out.push_back(s);
        }
        return out;
    }
    for (const auto& hit : index_.search(contract_id, clause, config_.top_k)) out.push_back(&index_.section(hit.doc));
    return out;
}

const LabeledSection* Workspace::find_section(const std::string& contract_id, const std::string& clause) const {
    auto hits = index_.search(contract_id, clause, config_.top_k);
    if (!is_clause_label(clause)) return hits.empty() ? nullptr : &index_.section(hits[0].doc);
    for (const auto& h : hits) {
        if (index_.section(h.doc).section.title_label == clause) return &index_.section(h.doc);
    }
    return nullptr;
}

std::optional<Citation> Workspace::cite(const std::string& contract_id, int ordinal) const {
    const ContractDoc* d = document(contract_id);
    if (!d || ordinal < 0 || static_cast<size_t>(ordinal) >= d->sections.size()) return std::nullopt;
    const auto& s = d->sections[static_cast<size_t>(ordinal)];
    return Citation{contract_id, ordinal, s.heading_text, s.start_offset, s.end_offset};
}

std::shared_ptr<LlmClient> Workspace::make_client() const {
    if (config_.llm == "http") return HttpLlmClient::from_environment();
    std::vector<std::string> names;
    for (const auto& e : registry_) names.push_back(e.name);
    return std::make_shared<MockLlmClient>(names);
}

std::unique_ptr<plan::Planner> Workspace::make_planner() const {
    if (config_.planner == "llm") return std::make_unique<plan::LlmPlanner>(make_client());
    return std::make_unique<plan::MockPlanner>();
}

plan::Registry Workspace::tools(Sink& sink, LlmClient& client) const {
    auto add_cite = [this, &sink](const std::string& id, const std::string& fact) {
        int ordinal = 0;
        auto f = cache_.facts.find(id);
        if (f != cache_.facts.end()) {
            auto c = f->second.cite.find(fact);
            if (c != f->second.cite.end()) ordinal = c->second;
        }
        if (auto c = cite(id, ordinal)) sink.citations.insert(*c);
    };
    auto row_of = [this](const Value& contract) -> const CacheRow& {
        const CacheRow* r = cache_.find(contract.str);
        if (!r) throw Error("E_UNKNOWN_CONTRACT", "no contract " + contract.str);
        return *r;
    };
    auto opt_str = [](const Value& v) -> std::optional<std::string> {
        if (v.kind == Value::Kind::str) return v.str;
        return std::nullopt;
    };
    auto section_sources = [this, &sink](const Value& list) {
        std::vector<ClauseSource> out;
        for (const auto& s : list.items) {
            out.push_back({s.section.contract_id, s.section.effective, s.section.ordinal, s.section.text});
            if (auto c = cite(s.section.contract_id, s.section.ordinal)) sink.citations.insert(*c);
        }
        return out;
    };

    std::map<std::string, plan::ToolFn> impl;
    impl["get_agreements_for"] = [=, this](const plan::ToolArgs& a) {
        auto fund = opt_str(a.at("funds"));
        auto trust = opt_str(a.at("trusts"));
        auto custodian = opt_str(a.at("custodians"));
        std::vector<Value> out;
        std::string first;
        for (const auto& [name, role] : {std::pair{fund, PartyRole::fund}, std::pair{trust, PartyRole::trust},
                                         std::pair{custodian, PartyRole::custodian}}) {
            if (name && first.empty()) {
                if (auto e = resolve_entity(*name, role)) first = e->name;
            }
        }
        for (const auto& id : agreements_for(fund, trust, custodian)) {
            out.push_back(Value::of_contract(id));
            add_cite(id, "party:" + first);
        }
        return Value::of_list(out);
    };
    impl["get_effective_date"] = [=](const plan::ToolArgs& a) {
        const CacheRow& r = row_of(a.at("contract"));
        add_cite(r.contract_id, "effective");
        return Value::of_optional_date(r.effective);
    };
    impl["get_dates"] = [=](const plan::ToolArgs& a) {
        const std::string& kind = a.at("kind").str;
        if (kind != "effective" && kind != "master" && kind != "dated") {
            throw Error("E_BAD_ARG", "kind must be effective, master or dated, got '" + kind + "'");
        }
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            const CacheRow& r = row_of(c);
            const auto& d = kind == "effective" ? r.effective : kind == "master" ? r.master : r.dated;
            out.push_back(Value::of_pair(c, Value::of_optional_date(d)));
            add_cite(r.contract_id, kind);
        }
        return Value::of_list(out);
    };
    impl["get_parties"] = [=](const plan::ToolArgs& a) {
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            const CacheRow& r = row_of(c);
            for (const auto& p : r.parties) {
                out.push_back(Value::of_pair(c, Value::of_str(std::string(to_string(p.role)) + ":" + p.name)));
                add_cite(r.contract_id, "party:" + p.name);
            }
        }
        return Value::of_list(out);
    };
    impl["get_lifecycle"] = [=](const plan::ToolArgs& a) {
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            const CacheRow& r = row_of(c);
            if (!r.evergreen) throw Error("E_NO_EFFECTIVE", "lifecycle unknown for " + r.contract_id);
            out.push_back(Value::of_pair(c, Value::of_optional_date(r.termination)));
            add_cite(r.contract_id, "termination");
        }
        return Value::of_list(out);
    };
    impl["get_master"] = [=](const plan::ToolArgs& a) {
        std::vector<std::string> ids;
        for (const auto& c : a.at("agg_list").items) {
            const CacheRow& r = row_of(c);
            if (r.master_id.empty()) continue;
            if (std::find(ids.begin(), ids.end(), r.master_id) == ids.end()) ids.push_back(r.master_id);
        }
        std::sort(ids.begin(), ids.end());
        std::vector<Value> out;
        for (const auto& id : ids) {
            out.push_back(Value::of_contract(id));
            add_cite(id, "effective");
        }
        return Value::of_list(out);
    };
    impl["get_section_v2"] = [=, this, &sink](const plan::ToolArgs& a) {
        const std::string clause = to_lower(trim(a.at("section_name").str));
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            const CacheRow& r = row_of(c);
            const LabeledSection* s = find_section(r.contract_id, clause);
            if (!s) continue;
            out.push_back(Value::of_section({r.contract_id, s->section.ordinal, s->section.heading_text,
                                             s->section.title_label, s->section.body_text, r.effective}));
            if (auto ct = cite(r.contract_id, s->section.ordinal)) sink.citations.insert(*ct);
        }
        std::stable_sort(out.begin(), out.end(), [](const Value& x, const Value& y) {
            const auto& a1 = x.section.effective;
            const auto& b1 = y.section.effective;
            if (a1.has_value() != b1.has_value()) return a1.has_value();
            if (a1 && *a1 != *b1) return day_number(*a1) < day_number(*b1);
            return x.section.contract_id < y.section.contract_id;
        });
        return Value::of_list(out);
    };
    impl["get_summary_v1"] = [=, this, &client](const plan::ToolArgs& a) {
        std::vector<std::string> texts;
        for (const auto& s : section_sources(a.at("sections"))) texts.push_back(s.text);
        SummarizeOptions opts;
        opts.max_parallel = config_.max_parallel;
        if (auto h = opt_str(a.at("hint"))) opts.hint = *h;
        return Value::of_str(summarize(texts, config_.budget, client, opts));
    };
    impl["get_comparison_v1"] = [=, this, &client, &sink](const plan::ToolArgs& a) {
        auto hint = opt_str(a.at("hint")).value_or("");
        ComparisonChain chain = compare_clauses(section_sources(a.at("text_list")), config_.budget, client, hint);
        std::string text = render_comparison(chain);
        sink.comparison = std::move(chain);
        return Value::of_str(text);
    };

    plan::Registry reg;
    for (auto& spec : plan::domain_tool_specs()) {
        std::string name = spec.name;
        reg.add(std::move(spec), impl.at(name));
    }
    return reg;
}

AnswerEnvelope Workspace::answer(const plan::QuerySpec& query) const {
    auto client = make_client();
    auto planner = make_planner();
    return answer(query, *planner, *client);
}

AnswerEnvelope Workspace::answer(const plan::QuerySpec& query, plan::Planner& planner, LlmClient& client) const {
    query.validate();
    bool any = false;
    for (const auto& [name, role] : {std::pair{query.fund, PartyRole::fund}, std::pair{query.trust, PartyRole::trust},
                                     std::pair{query.custodian, PartyRole::custodian}}) {
        if (!name) continue;
        auto e = resolve_entity(*name, role);
        if (!e) continue;
        for (const auto& row : cache_.rows) {
            for (const auto& p : row.parties) any = any || p.name == e->name;
        }
    }
    if (!any) throw Error("E_UNKNOWN_ENTITY", "no contract names " + query.entity_phrase());

    Sink sink;
    auto registry = tools(sink, client);
    auto r = plan::try_plan_and_repair(query, planner, registry, config_.max_attempts);
    if (!r.ok) {
        std::string detail;
        if (!r.outcome.attempts.empty() && !r.outcome.attempts.back().reports.empty()) {
            detail = plan::render_feedback(r.outcome.attempts.back().reports.back());
        }
        throw Error("E_EXHAUSTED", "no valid plan after " + std::to_string(config_.max_attempts) + " attempts. " + detail,
                    std::to_string(r.outcome.attempts.size()) + " attempts");
    }
    AnswerEnvelope env;
    env.query = query;
    env.planner = planner.name();
    env.plan_source = r.outcome.source;
    env.result = r.outcome.execution.result;
    env.attempts = r.outcome.attempts;
    env.trace = r.outcome.execution.trace;
    env.citations.assign(sink.citations.begin(), sink.citations.end());
    env.comparison = sink.comparison;
    return env;
}

// ---------------------------------------------------------------------------
// ingestion into a store

size_t ingest_corpus(const fs::path& in, const fs::path& out, unsigned workers) {
    if (!fs::exists(in)) throw Error("E_IO", "input not found: " + in.string());
    std::vector<ContractDoc> docs;
    bool store_layout = false;
    for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_directory() && fs::exists(e.path() / "meta.json")) store_layout = true;
    }
    if (store_layout) {
        docs = store::load_corpus(in);
    } else {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(in)) {
            auto ext = to_lower(e.path().extension().string());
            if (e.is_regular_file() && (ext == ".htm" || ext == ".html" || ext == ".txt")) files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            ContractDoc d;
            d.contract_id = f.stem().string();
            d.source_uri = "file://" + fs::absolute(f).string();
            d.raw_markup = store::read_file(f);
            docs.push_back(std::move(d));
        }
    }
    docs = ingest_all(std::move(docs), workers);
    fs::create_directories(out);
    for (const auto& d : docs) store::save_contract(out, d);
    if (!fs::equivalent(in, out)) {
        for (const char* name : {"registry.json", "manifest.json"}) {
            if (fs::exists(in / name)) fs::copy_file(in / name, out / name, fs::copy_options::overwrite_existing);
        }
    }
    for (const char* stale : {"index.json", "cache.csv", "cache.facts.json", "cache.errors.json"}) {
        fs::remove(out / stale);
    }
    return docs.size();
}

}  // namespace law
