#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "law/agents.hpp"
#include "law/cache.hpp"
#include "law/labels.hpp"
#include "law/plan/planner.hpp"
#include "law/search_index.hpp"

namespace law {

struct Config {
    double label_threshold = 0.15;
    Bm25Params bm25;
    size_t top_k = 20;
    TokenBudget budget;
    size_t max_parallel = 8;
    int max_attempts = 3;
    size_t call_budget = plan::kCallBudget;
    size_t sample_k = 5;
    std::string planner = "mock";  // mock | llm
    std::string llm = "mock";      // mock | http
    double fetch_rate = 8.0;
    std::string user_agent;
    unsigned workers = 8;

    /// Applies keys from a JSON object; unknown keys raise E_CONFIG.
    void apply(const nlohmann::json& j);
    static Config load(const std::filesystem::path& path);
    nlohmann::json to_json() const;
};

struct Citation {
    std::string contract_id;
    int section_ordinal = 0;
    std::string heading;
    size_t start = 0;
    size_t end = 0;
    auto operator<=>(const Citation& o) const {
        return std::tie(contract_id, section_ordinal) <=> std::tie(o.contract_id, o.section_ordinal);
    }
    bool operator==(const Citation& o) const {
        return contract_id == o.contract_id && section_ordinal == o.section_ordinal;
    }
};

struct AnswerEnvelope {
    plan::QuerySpec query;
    std::string planner;
    std::string plan_source;
    plan::Value result;
    std::vector<plan::PlanAttempt> attempts;
    std::vector<plan::TraceEntry> trace;
    std::vector<Citation> citations;
    std::optional<ComparisonChain> comparison;

    nlohmann::json to_json() const;
    /// Digest of the envelope without timings.
    std::string digest() const;
};

/// One "left -> right: narrative" paragraph per delta.
std::string render_comparison(const ComparisonChain& chain);

/// Plain-text rendering for the console.
std::string render_answer(const AnswerEnvelope& env);

/// Immutable view of one ingested, labeled, indexed and cached corpus.
class Workspace {
public:
    /// Loads a corpus directory. Documents without stored sections are
    /// ingested in memory; index.json and the cache files are used when
    /// present and current, otherwise rebuilt.
    static std::shared_ptr<const Workspace> open(const std::filesystem::path& root, const Config& config = {});
    /// Builds from documents already in memory.
    static std::shared_ptr<const Workspace> from_documents(std::vector<ContractDoc> docs,
                                                           std::vector<RegistryEntry> registry,
                                                           const Config& config = {});

    const Config& config() const { return config_; }
    const std::filesystem::path& root() const { return root_; }
    const std::vector<ContractDoc>& documents() const { return docs_; }
    const ContractDoc* document(const std::string& contract_id) const;
    const std::vector<RegistryEntry>& registry() const { return registry_; }
    const SearchIndex& index() const { return index_; }
    const FeatureCache& cache() const { return cache_; }
    const std::vector<LabeledSection>& labeled_sections() const { return labeled_; }

    /// Registry names matching an entity of the given role (exact normalized
    /// match, else fuzzy at the configured threshold).
    std::optional<RegistryEntry> resolve_entity(const std::string& name, PartyRole role) const;
    /// Contracts whose parties include every given entity, by contract id.
    std::vector<std::string> agreements_for(const std::optional<std::string>& fund,
                                            const std::optional<std::string>& trust,
                                            const std::optional<std::string>& custodian) const;
    /// Best section for a clause label in one contract, or nullptr.
    const LabeledSection* find_section(const std::string& contract_id, const std::string& clause) const;
    /// Sections of a contract with the given label (BM25 order when `clause`
    /// is not a label).
    std::vector<const LabeledSection*> sections_for(const std::string& contract_id, const std::string& clause) const;
    std::optional<Citation> cite(const std::string& contract_id, int ordinal) const;

    /// Tool implementations bound to this workspace. Citations and the last
    /// comparison chain are written to `sink`.
    struct Sink {
        std::set<Citation> citations;
        std::optional<ComparisonChain> comparison;
    };
    plan::Registry tools(Sink& sink, LlmClient& client) const;

    /// Plans and executes a query. E_UNKNOWN_ENTITY when no given entity
    /// names a party of any contract; E_EXHAUSTED when planning fails.
    AnswerEnvelope answer(const plan::QuerySpec& query) const;
    AnswerEnvelope answer(const plan::QuerySpec& query, plan::Planner& planner, LlmClient& client) const;

    std::shared_ptr<LlmClient> make_client() const;
    std::unique_ptr<plan::Planner> make_planner() const;

private:
    Workspace() = default;
    void build(bool try_artifacts);

    Config config_;
    std::filesystem::path root_;
    std::vector<ContractDoc> docs_;
    std::vector<RegistryEntry> registry_;
    std::vector<LabeledSection> labeled_;
    SearchIndex index_;
    FeatureCache cache_;
    std::map<std::string, size_t> doc_pos_;
};

/// Ingests every document of a corpus directory and stores text and
/// sections; stale index and cache files are removed.
size_t ingest_corpus(const std::filesystem::path& in, const std::filesystem::path& out, unsigned workers = 8);

}  // namespace law
