#include <doctest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "law/agents.hpp"
#include "law/error.hpp"
#include "law/extraction.hpp"

using namespace law;

TEST_CASE("token counting") {
    CHECK(count_tokens("") == 0);
    CHECK(count_tokens("Fund A shall pay $100.") == 7);
    CHECK(count_tokens("a-b") == 3);
    CHECK(count_tokens("  words   only ") == 2);
}

TEST_CASE("small text is one chunk") {
    std::string text;
    for (int i = 0; i < 100; ++i) text += "word ";
    auto chunks = chunk_text(text, TokenBudget{});
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0] == text);
    CHECK(chunk_text("", TokenBudget{}).empty());
}

TEST_CASE("twenty 1000-token paragraphs make three chunks") {
    std::string para;
    for (int i = 0; i < 1000; ++i) para += "tok ";
    para.pop_back();
    std::string text;
    for (int p = 0; p < 20; ++p) text += para + (p + 1 < 20 ? "\n\n" : "");
    TokenBudget b;
    REQUIRE(count_tokens(text) == 20000);
    auto chunks = chunk_text(text, b);
    CHECK(chunks.size() == 3);
    std::string joined;
    for (auto& c : chunks) {
        CHECK(b.count(c) <= 8000);
        joined += c;
    }
    CHECK(joined == text);
}

TEST_CASE("oversized paragraph falls back to sentences then hard cuts") {
    TokenBudget b;
    b.chunk_size = 10;
    b.context_limit = 20;
    std::string text = "One two three four five. Six seven eight nine ten eleven twelve thirteen fourteen fifteen sixteen.";
    auto chunks = chunk_text(text, b);
    std::string joined;
    for (auto& c : chunks) {
        CHECK(b.count(c) <= 10);
        joined += c;
    }
    CHECK(joined == text);
    CHECK(chunks.size() >= 3);
}

TEST_CASE("chunking property over random paragraph corpora") {
    std::mt19937_64 rng(2024);
    const char* words[] = {"custody", "fund", "$", "100", "shall", ".", "Trust", "(3)", "a-b", "é"};
    for (int c = 0; c < 200; ++c) {
        TokenBudget b;
        b.chunk_size = 5 + rng() % 200;
        b.context_limit = b.chunk_size * 2;
        std::string text;
        size_t paras = rng() % 12;
        for (size_t p = 0; p < paras; ++p) {
            size_t n = rng() % 400;
            for (size_t w = 0; w < n; ++w) {
                text += words[rng() % 10];
                text += (rng() % 9 == 0) ? ". " : " ";
            }
            text += std::string(1 + rng() % 3, '\n');
        }
        auto chunks = chunk_text(text, b);
        std::string joined;
        for (auto& ch : chunks) {
            CHECK(b.count(ch) <= b.chunk_size);
            joined += ch;
        }
        REQUIRE(joined == text);
    }
}

TEST_CASE("prompt templates render") {
    auto p = render_prompt("summarize", {{"text", "HELLO"}});
    CHECK(p.find("<<<TEXT\nHELLO\nTEXT>>>") != std::string::npos);
    CHECK(p.find("{{") == std::string::npos);
    CHECK(p.find("# summarize") == std::string::npos);
    CHECK_THROWS_AS(render_prompt("nope", {}), Error);
}

TEST_CASE("mock summary keeps date-bearing sentences") {
    MockLlmClient mock;
    std::string s = "Fund A shall pay Custodian B $100 annually, effective 01/01/2020.";
    CHECK(summarize({s}, TokenBudget{}, mock) == s);
    CHECK(summarize({}, TokenBudget{}, mock).empty());

    MockLlmClient with_parties({"Acme Trust"});
    std::string text = "First sentence here. Nothing to see. The Acme Trust agrees. Term is three (3) years. "
                       "Signed June 1, 2005. Filler.";
    auto out = summarize({text}, TokenBudget{}, with_parties);
    CHECK(out == "First sentence here.\nThe Acme Trust agrees.\nTerm is three (3) years.\nSigned June 1, 2005.");
}

TEST_CASE("chunked summary equals per-chunk outputs joined") {
    MockLlmClient mock;
    TokenBudget b;
    b.chunk_size = 60;
    b.context_limit = 120;
    std::vector<std::string> sections;
    for (int i = 0; i < 3; ++i) {
        std::string t = "Section " + std::to_string(i) + " opens the clause.";
        for (int k = 0; k < 6; ++k) t += " Filler sentence number " + std::to_string(k) + " with words.";
        t += " Effective as of March " + std::to_string(i + 1) + ", 2010.";
        sections.push_back(t);
    }
    std::string joined = sections[0] + "\n\n" + sections[1] + "\n\n" + sections[2];
    auto chunks = chunk_text(joined, b);
    REQUIRE(chunks.size() == 3);
    std::vector<std::string> expect;
    for (auto& c : chunks) expect.push_back(mock.summarize_text(c));
    auto out = summarize(sections, b, mock);
    std::string want = expect[0] + "\n" + expect[1] + "\n" + expect[2];
    CHECK(out == want);
    for (auto& lit : find_date_literals(joined)) {
        CHECK(out.find(joined.substr(lit.start, lit.end - lit.start)) != std::string::npos);
    }
}

namespace {

class FailingClient : public LlmClient {
public:
    std::string generate(const std::string& prompt, size_t) override {
        if (prompt.find("boom") != std::string::npos) throw std::runtime_error("backend down");
        return "ok";
    }
    std::string name() const override { return "failing"; }
};

ClauseSource src(std::string id, int d, int m, int y, std::string text) {
    return {std::move(id), make_date(d, m, y), 0, std::move(text)};
}

}  // namespace

TEST_CASE("client failure carries the chunk index") {
    FailingClient client;
    TokenBudget b;
    b.chunk_size = 5;
    b.context_limit = 10;
    try {
        summarize({"alpha beta gamma.\n\nboom boom boom."}, b, client);
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.code() == "E_LLM_FAILURE");
        CHECK(e.locus() == "chunk 1");
    }
}

TEST_CASE("identical clauses report no substantive change") {
    MockLlmClient mock;
    auto chain = compare_clauses({src("b", 1, 1, 2010, "The fee is due."), src("a", 1, 1, 2005, "The fee is due.")},
                                 TokenBudget{}, mock);
    REQUIRE(chain.deltas.size() == 1);
    CHECK(chain.sections[0].contract_id == "a");
    CHECK(chain.deltas[0].no_change());
    CHECK(chain.deltas[0].narrative.find("no substantive change") != std::string::npos);
}

TEST_CASE("fee literal change is flagged") {
    MockLlmClient mock;
    auto chain = compare_clauses({src("a", 1, 1, 2005, "The Fund shall pay a fee of $100. Other text stays."),
                                  src("b", 1, 1, 2010, "The Fund shall pay a fee of $150. Other text stays.")},
                                 TokenBudget{}, mock);
    REQUIRE(chain.deltas.size() == 1);
    const auto& d = chain.deltas[0];
    REQUIRE(d.changes.size() == 1);
    CHECK(d.changes[0].from == "$100");
    CHECK(d.changes[0].to == "$150");
    CHECK(d.only_left.empty());
    CHECK(d.only_right.empty());
}

TEST_CASE("comparison chain sizes and order") {
    MockLlmClient mock;
    std::mt19937_64 rng(3);
    for (size_t n = 1; n <= 10; ++n) {
        std::vector<ClauseSource> v;
        for (size_t i = 0; i < n; ++i) {
            v.push_back(src("c" + std::to_string(i), 1, 1 + static_cast<int>(i % 12), 2000 + static_cast<int>(i),
                            "Authorized persons list " + std::to_string(i) + "."));
        }
        auto shuffled = v;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto chain = compare_clauses(shuffled, TokenBudget{}, mock);
        CHECK(chain.deltas.size() == n - 1);
        for (size_t i = 0; i + 1 < chain.sections.size(); ++i) {
            CHECK(*chain.sections[i].effective <= *chain.sections[i + 1].effective);
            CHECK(chain.deltas[i].left_contract == chain.sections[i].contract_id);
            CHECK(chain.deltas[i].right_contract == chain.sections[i + 1].contract_id);
        }
        auto again = compare_clauses(v, TokenBudget{}, mock);
        for (size_t i = 0; i < again.deltas.size(); ++i) CHECK(again.deltas[i].narrative == chain.deltas[i].narrative);
    }
}

TEST_CASE("oversized sides are summarized before comparing") {
    MockLlmClient mock;
    TokenBudget b;
    b.chunk_size = 40;
    b.context_limit = 400;
    std::string big = "Opening sentence.";
    for (int i = 0; i < 30; ++i) big += " Padding sentence without facts.";
    big += " Effective as of June 1, 2005.";
    auto chain = compare_clauses({src("a", 1, 1, 2005, big), src("b", 1, 1, 2006, "Opening sentence.")}, b, mock);
    REQUIRE(chain.deltas.size() == 1);
    CHECK(chain.deltas[0].only_left.size() == 1);
    CHECK(chain.deltas[0].only_left[0] == "Effective as of June 1, 2005.");
}

TEST_CASE("http client talks to a chat-completions endpoint") {
    httplib::Server server;
    std::string seen_auth;
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        seen_auth = req.get_header_value("Authorization");
        auto body = nlohmann::json::parse(req.body);
        std::string content = body["messages"][0]["content"].get<std::string>();
        nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "echo:" + content}}}}}}};
        res.set_content(reply.dump(), "application/json");
    });
    server.Post("/fail", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    auto log = std::filesystem::temp_directory_path() / "law_llm_log.jsonl";
    std::filesystem::remove(log);
    HttpLlmClient client("http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions", "k", "m", log);
    CHECK(client.generate("hi", 10) == "echo:hi");
    CHECK(seen_auth == "Bearer k");
    CHECK(std::filesystem::file_size(log) > 0);

    HttpLlmClient bad("http://127.0.0.1:" + std::to_string(port) + "/fail", "", "m");
    CHECK_THROWS_AS(bad.generate("hi", 10), Error);
    HttpLlmClient tls("https://example.invalid/x", "", "m");
    CHECK_THROWS_AS(tls.generate("hi", 10), Error);

    server.stop();
    t.join();
    std::filesystem::remove(log);
}
