#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "law/cache.hpp"
#include "law/service.hpp"
#include "law/synth.hpp"

using namespace law;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Running {
    std::unique_ptr<Service> service;
    std::thread thread;
    int port = -1;

    explicit Running(std::shared_ptr<const Workspace> ws) : service(std::make_unique<Service>(ws, ws->config())) {
        port = service->bind_any("127.0.0.1");
        REQUIRE(port > 0);
        thread = std::thread([this] { service->run(); });
        service->wait_until_ready();
    }
    ~Running() {
        service->stop();
        thread.join();
    }
    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port);
        c.set_read_timeout(60, 0);
        return c;
    }
};

fs::path make_store(const std::string& name, std::uint64_t seed, size_t families) {
    auto root = fs::temp_directory_path() / ("law_test_service_" + name);
    fs::remove_all(root);
    SynthOptions o;
    o.seed = seed;
    o.n_families = families;
    save_synth_corpus(root, generate_corpus(o));
    return root;
}

void expect_problem(const httplib::Result& r, int status, const std::string& code) {
    REQUIRE(r);
    CHECK(r->status == status);
    CHECK(r->get_header_value("Content-Type") == "application/problem+json");
    auto j = json::parse(r->body);
    CHECK(j.at("code") == code);
    CHECK(j.contains("message"));
    CHECK(j.contains("locus"));
}

}  // namespace

TEST_CASE("read endpoints") {
    auto ws = Workspace::open(make_store("read", 11, 4));
    Running srv(ws);
    auto cli = srv.client();

    auto health = cli.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(json::parse(health->body)["contracts"] == ws->documents().size());

    auto list = cli.Get("/contracts");
    REQUIRE(list);
    auto contracts = json::parse(list->body);
    REQUIRE(contracts.size() == ws->documents().size());
    std::string id = contracts[0]["contract_id"];

    auto one = cli.Get("/contracts/" + id);
    REQUIRE(one);
    CHECK(one->status == 200);
    auto doc = json::parse(one->body);
    CHECK(doc["plain_text"] == ws->document(id)->plain_text);
    CHECK(doc["section_list"].size() == ws->document(id)->sections.size());

    auto secs = cli.Get("/contracts/" + id + "/sections?clause=governing%20law");
    REQUIRE(secs);
    auto sj = json::parse(secs->body);
    REQUIRE(sj.size() == 1);
    CHECK(sj[0]["label"] == "governing law");
    auto all = json::parse(cli.Get("/contracts/" + id + "/sections")->body);
    CHECK(all.size() == ws->document(id)->sections.size());

    auto csv = cli.Get("/cache.csv");
    REQUIRE(csv);
    CHECK(csv->body == write_cache_csv(ws->cache().rows));
    CHECK(read_cache_csv(csv->body) == ws->cache().rows);

    expect_problem(cli.Get("/contracts/nope"), 404, "E_UNKNOWN_CONTRACT");
    expect_problem(cli.Get("/contracts/nope/sections"), 404, "E_UNKNOWN_CONTRACT");
    expect_problem(cli.Get("/no/such/route"), 404, "E_NOT_FOUND");
}

TEST_CASE("query endpoint") {
    auto ws = Workspace::open(make_store("query", 12, 4));
    Running srv(ws);
    auto cli = srv.client();
    std::string trust = ws->registry().front().name;
    for (const auto& e : ws->registry()) {
        if (e.role == PartyRole::trust) trust = e.name;
    }

    plan::QuerySpec q;
    q.trust = trust;
    q.task = plan::Task::find_termination_dates;
    auto r = cli.Post("/query", plan::to_json(q).dump(), "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    auto env = json::parse(r->body);
    CHECK(env["result"] == ws->answer(q).to_json()["result"]);
    CHECK(env["plan"].get<std::string>().find("get_lifecycle") != std::string::npos);
    CHECK_FALSE(env["citations"].empty());

    plan::QuerySpec cmp = q;
    cmp.task = plan::Task::compare_clause;
    cmp.clause_label = "authorized persons";
    auto rc = cli.Post("/query", plan::to_json(cmp).dump(), "application/json");
    REQUIRE(rc);
    CHECK(rc->status == 200);
    auto cj = json::parse(rc->body);
    if (cj["result"].is_string() && cj.contains("comparison")) {
        CHECK(cj["comparison"]["deltas"].size() + 1 == cj["comparison"]["sections"].size());
    }

    expect_problem(cli.Post("/query", "{not json", "application/json"), 400, "E_BAD_REQUEST");
    expect_problem(cli.Post("/query", R"({"entities": {}, "task": "explore_all"})", "application/json"), 400,
                   "E_BAD_QUERY");
    expect_problem(cli.Post("/query", R"({"entities": {"fund": "X"}, "task": "find_clause"})", "application/json"),
                   400, "E_BAD_QUERY");
    expect_problem(cli.Post("/query", R"({"entities": {"fund": "Nonexistent Fund"}, "task": "explore_all"})",
                            "application/json"),
                   404, "E_UNKNOWN_ENTITY");
}

TEST_CASE("concurrent queries match serial answers") {
    auto ws = Workspace::open(make_store("concurrent", 13, 5));
    Running srv(ws);
    std::vector<plan::QuerySpec> qs;
    for (const auto& e : ws->registry()) {
        if (e.role == PartyRole::custodian) continue;
        for (auto task : plan::all_tasks()) {
            plan::QuerySpec q;
            (e.role == PartyRole::fund ? q.fund : q.trust) = e.name;
            q.task = task;
            if (plan::is_clause_task(task)) q.clause_label = "fee schedule";
            qs.push_back(q);
        }
    }
    std::vector<std::string> got(qs.size());
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            auto cli = srv.client();
            for (size_t i = static_cast<size_t>(t); i < qs.size(); i += 8) {
                auto r = cli.Post("/query", plan::to_json(qs[i]).dump(), "application/json");
                if (r && r->status == 200) got[i] = json::parse(r->body)["result"].dump();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (size_t i = 0; i < qs.size(); ++i) {
        CAPTURE(qs[i].describe());
        CHECK(got[i] == ws->answer(qs[i]).to_json()["result"].dump());
    }
}

TEST_CASE("admin ingest swaps the workspace") {
    auto root = make_store("ingest", 14, 2);
    auto ws = Workspace::open(root);
    Running srv(ws);
    auto cli = srv.client();
    size_t before = ws->documents().size();

    // add a second corpus's contracts to the directory
    SynthOptions o;
    o.seed = 15;
    o.n_families = 2;
    auto extra = generate_corpus(o);
    auto tmp = fs::temp_directory_path() / "law_test_service_extra";
    fs::remove_all(tmp);
    save_synth_corpus(tmp, extra);
    size_t added = 0;
    for (const auto& e : fs::directory_iterator(tmp)) {
        if (!e.is_directory()) continue;
        auto dest = root / ("x" + e.path().filename().string());
        fs::copy(e.path(), dest, fs::copy_options::recursive);
        auto meta = json::parse(store::read_file(dest / "meta.json"));
        meta["contract_id"] = "x" + meta["contract_id"].get<std::string>();
        std::ofstream(dest / "meta.json") << meta.dump();
        ++added;
    }

    auto r = cli.Post("/admin/ingest", "", "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(json::parse(r->body)["contracts"] == before + added);
    CHECK(json::parse(cli.Get("/health")->body)["contracts"] == before + added);
    CHECK(ws->documents().size() == before);  // old snapshot untouched
    CHECK(fs::exists(root / "cache.csv"));
    CHECK(fs::exists(root / "index.json"));

    expect_problem(cli.Post("/admin/ingest", R"({"path": "/definitely/not/here"})", "application/json"), 500,
                   "E_IO");
}
