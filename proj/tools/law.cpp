#include <csignal>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "law/error.hpp"
#include "law/eval.hpp"
#include "law/fetch.hpp"
#include "law/service.hpp"
#include "law/synth.hpp"
#include "law/text_util.hpp"
#include "law/workspace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace law;

namespace {

struct Globals {
    std::string config_path;
    Config config;
};

std::vector<std::string> read_lines(const fs::path& path) {
    std::vector<std::string> out;
    std::istringstream in(store::read_file(path));
    for (std::string line; std::getline(in, line);) {
        auto t = trim(line);
        if (!t.empty() && t[0] != '#') out.push_back(t);
    }
    return out;
}

eval::ScoreCard read_card(const fs::path& path) { return eval::ScoreCard::from_json(json::parse(store::read_file(path))); }

Service* g_service = nullptr;

void on_signal(int) {
    if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contract question answering over custody agreements", "law"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
    std::function<void()> action;

    // corpus
    auto* corpus = app.add_subcommand("corpus", "Corpus acquisition");
    corpus->require_subcommand(1);
    struct {
        std::uint64_t seed = 42;
        size_t families = 10;
        std::optional<size_t> contracts;
        std::string out;
    } synth;
    auto* synth_cmd = corpus->add_subcommand("synth", "Generate a synthetic corpus with a ground-truth manifest");
    synth_cmd->add_option("--seed", synth.seed);
    synth_cmd->add_option("--families", synth.families)->check(CLI::PositiveNumber);
    synth_cmd->add_option("--contracts", synth.contracts, "stop after this many contracts");
    synth_cmd->add_option("--out", synth.out)->required();
    synth_cmd->callback([&] {
        action = [&] {
            SynthOptions o;
            o.seed = synth.seed;
            o.n_families = synth.families;
            o.target_contracts = synth.contracts;
            auto c = generate_corpus(o);
            save_synth_corpus(synth.out, c);
            std::cout << "wrote " << c.docs.size() << " contracts in " << c.manifest.families.size()
                      << " families to " << synth.out << "\n";
        };
    });

    struct {
        std::string uris, out;
        std::optional<double> rate;
    } fetch;
    auto* fetch_cmd = corpus->add_subcommand("fetch", "Download filings listed one URI per line");
    fetch_cmd->add_option("--uris", fetch.uris)->required()->check(CLI::ExistingFile);
    fetch_cmd->add_option("--out", fetch.out)->required();
    fetch_cmd->add_option("--rate", fetch.rate, "requests per second (max 10)");
    fetch_cmd->callback([&] {
        action = [&] {
            FetchOptions o;
            o.rate_limit = fetch.rate.value_or(g.config.fetch_rate);
            o.user_agent = g.config.user_agent;
            o.corpus_root = fs::path(fetch.out);
            auto report = fetch_remote(read_lines(fetch.uris), o);
            std::cout << "fetched " << report.documents.size() << ", skipped " << report.skipped.size() << ", "
                      << report.attempts.size() << " requests\n";
        };
    });

    // ingest / index / cache
    struct {
        std::string in, out;
    } ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Normalize and sectionize a corpus");
    ingest_cmd->add_option("--in", ingest.in)->required()->check(CLI::ExistingDirectory);
    ingest_cmd->add_option("--out", ingest.out)->required();
    ingest_cmd->callback([&] {
        action = [&] {
            size_t n = ingest_corpus(ingest.in, ingest.out, g.config.workers);
            std::cout << "ingested " << n << " contracts into " << ingest.out << "\n";
        };
    });

    std::string index_corpus;
    auto* index = app.add_subcommand("index", "Section search index");
    index->require_subcommand(1);
    auto* index_build = index->add_subcommand("build", "Label sections and write index.json");
    index_build->add_option("--corpus", index_corpus)->required()->check(CLI::ExistingDirectory);
    index_build->callback([&] {
        action = [&] {
            auto ws = Workspace::open(index_corpus, g.config);
            ws->index().save(fs::path(index_corpus) / "index.json");
            std::cout << "indexed " << ws->index().size() << " sections of " << ws->documents().size()
                      << " contracts\n";
        };
    });

    std::string cache_corpus;
    auto* cache = app.add_subcommand("cache", "Feature cache");
    cache->require_subcommand(1);
    auto* cache_warm = cache->add_subcommand("warm", "Extract dates, parties and lifecycles into cache.csv");
    cache_warm->add_option("--corpus", cache_corpus)->required()->check(CLI::ExistingDirectory);
    cache_warm->callback([&] {
        action = [&] {
            auto ws = Workspace::open(cache_corpus, g.config);
            auto fresh = warm_cache(ws->documents(), ws->registry(), g.config.workers);
            save_cache(cache_corpus, fresh);
            std::cout << "cached " << fresh.rows.size() << " contracts, " << fresh.errors.size() << " errors\n";
        };
    });

    // ask
    struct {
        std::string corpus;
        std::optional<std::string> fund, trust, custodian, clause, hint;
        std::string task;
        bool as_json = false;
    } ask;
    auto* ask_cmd = app.add_subcommand("ask", "Answer one templated query");
    ask_cmd->add_option("--corpus", ask.corpus)->required()->check(CLI::ExistingDirectory);
    ask_cmd->add_option("--fund", ask.fund);
    ask_cmd->add_option("--trust", ask.trust);
    ask_cmd->add_option("--custodian", ask.custodian);
    std::vector<std::string> task_names;
    for (auto t : plan::all_tasks()) task_names.emplace_back(plan::to_string(t));
    ask_cmd->add_option("--task", ask.task)->required()->check(CLI::IsMember(task_names));
    ask_cmd->add_option("--clause", ask.clause, "clause label for clause tasks");
    ask_cmd->add_option("--hint", ask.hint, "free text appended to the planner prompt");
    ask_cmd->add_flag("--json", ask.as_json);
    ask_cmd->callback([&] {
        action = [&] {
            plan::QuerySpec q;
            q.fund = ask.fund;
            q.trust = ask.trust;
            q.custodian = ask.custodian;
            q.task = plan::parse_task(ask.task);
            if (ask.clause) q.clause_label = to_lower(trim(*ask.clause));
            q.hint = ask.hint;
            q.validate();
            auto env = Workspace::open(ask.corpus, g.config)->answer(q);
            if (ask.as_json) {
                std::cout << env.to_json().dump(2) << "\n";
            } else {
                std::cout << render_answer(env);
            }
        };
    });

    // eval
    struct {
        std::uint64_t seed = 42;
        size_t contracts = 200;
        std::optional<std::string> corpus, dataset, out, law, baseline;
        std::string system = "both";
        bool csv = false;
        bool as_json = false;
    } ev;
    auto* eval_cmd = app.add_subcommand("eval", "Templated query dataset and scoring");
    eval_cmd->require_subcommand(1);
    auto workspace_for_eval = [&](CorpusManifest& manifest) {
        if (ev.corpus) {
            manifest = load_manifest(*ev.corpus);
            return Workspace::open(*ev.corpus, g.config);
        }
        auto c = eval::eval_corpus(ev.seed, ev.contracts);
        manifest = c.manifest;
        return Workspace::from_documents(std::move(c.docs), c.manifest.registry, g.config);
    };
    auto* eval_build = eval_cmd->add_subcommand("build", "Write the query dataset");
    eval_build->add_option("--seed", ev.seed);
    eval_build->add_option("--contracts", ev.contracts, "synthetic corpus size when --corpus is absent");
    eval_build->add_option("--corpus", ev.corpus, "corpus with manifest.json")->check(CLI::ExistingDirectory);
    eval_build->add_option("--out", ev.out)->required();
    eval_build->callback([&] {
        action = [&] {
            CorpusManifest m;
            auto ws = workspace_for_eval(m);
            auto cases = eval::build_dataset(m, *ws, {.seed = ev.seed});
            store::write_file_atomic(*ev.out, json(cases).dump(1));
            std::cout << "wrote " << cases.size() << " cases to " << *ev.out << "\n";
        };
    });
    auto* eval_run = eval_cmd->add_subcommand("run", "Score LAW and/or the baseline");
    eval_run->add_option("--system", ev.system)->check(CLI::IsMember({"law", "baseline", "both"}));
    eval_run->add_option("--seed", ev.seed);
    eval_run->add_option("--contracts", ev.contracts, "synthetic corpus size when --corpus is absent");
    eval_run->add_option("--corpus", ev.corpus, "corpus with manifest.json")->check(CLI::ExistingDirectory);
    eval_run->add_option("--dataset", ev.dataset, "dataset from eval build")->check(CLI::ExistingFile);
    eval_run->add_option("--out", ev.out, "directory for scorecards and report");
    eval_run->add_flag("--json", ev.as_json);
    eval_run->callback([&] {
        action = [&] {
            CorpusManifest m;
            auto ws = workspace_for_eval(m);
            auto cases = ev.dataset ? json::parse(store::read_file(*ev.dataset)).get<std::vector<eval::EvalCase>>()
                                    : eval::build_dataset(m, *ws, {.seed = ev.seed});
            eval::TokenF1Scorer scorer;
            std::optional<eval::ScoreCard> law, base;
            if (ev.system != "baseline") law = eval::run_eval(cases, eval::LawSystem(ws), scorer, g.config.workers);
            if (ev.system != "law") base = eval::run_eval(cases, eval::BaselineSystem(ws), scorer, g.config.workers);
            for (auto* c : {&law, &base}) {
                if (*c) (*c)->seed = ev.seed;
            }
            auto table = eval::render_table(law ? &*law : nullptr, base ? &*base : nullptr);
            if (ev.out) {
                fs::create_directories(*ev.out);
                if (law) store::write_file_atomic(fs::path(*ev.out) / "scorecard_law.json", law->to_json().dump(1));
                if (base) {
                    store::write_file_atomic(fs::path(*ev.out) / "scorecard_baseline.json", base->to_json().dump(1));
                }
                store::write_file_atomic(fs::path(*ev.out) / "report.txt", table);
                store::write_file_atomic(fs::path(*ev.out) / "report.csv",
                                         eval::render_csv(law ? &*law : nullptr, base ? &*base : nullptr));
            }
            if (ev.as_json) {
                json j = json::object();
                if (law) j["law"] = law->to_json()["tasks"];
                if (base) j["baseline"] = base->to_json()["tasks"];
                j["cases"] = cases.size();
                j["seed"] = ev.seed;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "seed " << ev.seed << ", " << cases.size() << " cases\n" << table;
            }
        };
    });
    auto* eval_report = eval_cmd->add_subcommand("report", "Render saved scorecards as a table");
    eval_report->add_option("--law", ev.law)->check(CLI::ExistingFile);
    eval_report->add_option("--baseline", ev.baseline)->check(CLI::ExistingFile);
    eval_report->add_flag("--csv", ev.csv);
    eval_report->callback([&] {
        action = [&] {
            std::optional<eval::ScoreCard> law, base;
            if (ev.law) law = read_card(*ev.law);
            if (ev.baseline) base = read_card(*ev.baseline);
            if (!law && !base) throw CLI::ValidationError("report needs --law and/or --baseline");
            auto* l = law ? &*law : nullptr;
            auto* b = base ? &*base : nullptr;
            std::cout << (ev.csv ? eval::render_csv(l, b) : eval::render_table(l, b));
        };
    });

    // serve
    struct {
        std::string corpus;
        std::string host = "127.0.0.1";
        int port = 8080;
    } serve;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--corpus", serve.corpus)->required()->check(CLI::ExistingDirectory);
    serve_cmd->add_option("--host", serve.host);
    serve_cmd->add_option("--port", serve.port)->check(CLI::Range(1, 65535));
    serve_cmd->callback([&] {
        action = [&] {
            Service service(Workspace::open(serve.corpus, g.config), g.config);
            g_service = &service;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on http://" << serve.host << ":" << serve.port << "\n";
            if (!service.listen(serve.host, serve.port)) {
                throw Error("E_IO", "cannot listen on " + serve.host + ":" + std::to_string(serve.port));
            }
            g_service = nullptr;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!g.config_path.empty()) g.config = Config::load(g.config_path);
        action();
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << problem_detail(e.code(), e.what(), e.locus()).dump() << "\n";
        return e.code() == "E_BAD_QUERY" || e.code() == "E_CONFIG" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << problem_detail("E_INTERNAL", e.what()).dump() << "\n";
        return 1;
    }
}
