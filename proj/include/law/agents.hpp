#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "law/calendar.hpp"

namespace law {

/// Maximal alphanumeric runs plus standalone non-space symbols.
size_t count_tokens(std::string_view text);

struct TokenBudget {
    size_t context_limit = 16000;
    size_t chunk_size = 8000;
    std::function<size_t(std::string_view)> tokenizer = count_tokens;

    size_t count(std::string_view text) const { return tokenizer(text); }
};

/// Splits at paragraph boundaries, then sentences, then hard cuts so that no
/// chunk exceeds budget.chunk_size tokens. Concatenating the chunks gives the
/// input back exactly.
std::vector<std::string> chunk_text(std::string_view text, const TokenBudget& budget);

/// Prompt template from data/prompts/<name>.txt with {{key}} placeholders
/// filled in; missing keys render empty.
std::string render_prompt(std::string_view name, const std::map<std::string, std::string>& vars);

class LlmClient {
public:
    virtual ~LlmClient() = default;
    virtual std::string generate(const std::string& prompt, size_t max_output) = 0;
    virtual std::string name() const = 0;
    /// False if generate must not be called from several threads at once.
    virtual bool concurrent() const { return true; }
};

/// Deterministic extractive stand-in for a hosted model. Summaries keep the
/// first sentence of every paragraph and each sentence with a party name, a
/// date literal or a duration phrase. Comparisons return a JSON sentence diff.
class MockLlmClient final : public LlmClient {
public:
    explicit MockLlmClient(std::vector<std::string> party_names = {});
    std::string generate(const std::string& prompt, size_t max_output) override;
    std::string name() const override { return "mock-extractive"; }

    std::string summarize_text(std::string_view text) const;
    std::string compare_texts(std::string_view left, std::string_view right) const;

private:
    std::vector<std::string> party_names_;  // lowercased
};

/// Chat-completions style client over plain HTTP. Configured from
/// LAW_LLM_ENDPOINT (http://host:port/path), LAW_LLM_API_KEY and
/// LAW_LLM_MODEL; every exchange is appended as a JSON line to `log_path`
/// when set.
class HttpLlmClient final : public LlmClient {
public:
    HttpLlmClient(std::string endpoint, std::string api_key, std::string model,
                  std::optional<std::filesystem::path> log_path = std::nullopt);
    static std::unique_ptr<HttpLlmClient> from_environment();

    std::string generate(const std::string& prompt, size_t max_output) override;
    std::string name() const override { return "http:" + model_; }

private:
    std::string endpoint_, api_key_, model_;
    std::optional<std::filesystem::path> log_path_;
    std::mutex log_mu_;
};

struct SummarizeOptions {
    size_t max_parallel = 8;
    std::string hint;
};

/// One call when the prompt fits the context, else a parallel map over chunks
/// whose outputs are joined in chunk order. Throws E_LLM_FAILURE with the
/// chunk index as locus.
std::string summarize(const std::vector<std::string>& section_texts, const TokenBudget& budget, LlmClient& client,
                      const SummarizeOptions& options = {});

struct ClauseSource {
    std::string contract_id;
    std::optional<CalendarDate> effective;
    int section_ordinal = -1;
    std::string text;
};

struct LiteralChange {
    std::string left_sentence;
    std::string right_sentence;
    std::string from;
    std::string to;
};

struct ClauseDelta {
    std::string left_contract;
    std::string right_contract;
    std::vector<std::string> only_left;
    std::vector<std::string> only_right;
    std::vector<LiteralChange> changes;
    bool structured = false;  // false when the client reply was not parseable
    std::string narrative;

    bool no_change() const { return structured && only_left.empty() && only_right.empty() && changes.empty(); }
};

struct ComparisonChain {
    std::vector<ClauseSource> sections;  // ascending effective date
    std::vector<ClauseDelta> deltas;     // deltas[i] compares sections[i], sections[i+1]
};

/// Sorts by effective date (undated last), then contract id and ordinal, and
/// compares each adjacent pair. Sides longer than the chunk size are
/// summarized first.
ComparisonChain compare_clauses(std::vector<ClauseSource> sections, const TokenBudget& budget, LlmClient& client,
                                const std::string& hint = {});

std::string render_narrative(const ClauseDelta& delta);

}  // namespace law
