#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "law/synth.hpp"
#include "law/workspace.hpp"

namespace law::eval {

enum class CaseKind { retrieval, analytical };
std::string_view to_string(CaseKind kind);

/// Entity slots filled for a case, e.g. "fund+custodian".
extern const std::vector<std::string> kEntityCombos;

struct EvalCase {
    std::string id;
    plan::QuerySpec query;
    CaseKind kind = CaseKind::retrieval;
    std::string combo;
    std::vector<std::string> truth;       // retrieval: normalized answer items
    std::string reference;                // analytical: reference text
    std::vector<std::string> candidates;  // baseline context: 4 correct + 4 distractors, or 4 relevant
    std::vector<std::string> candidate_truth;
};

void to_json(nlohmann::json& j, const EvalCase& c);
void from_json(const nlohmann::json& j, EvalCase& c);

struct DatasetOptions {
    size_t retrieval_per_combo = 20;
    size_t analytical_per_combo = 10;
    std::uint64_t seed = 42;
    size_t baseline_correct = 4;
    size_t baseline_distractors = 4;
};

/// Retrieval truth from the manifest; analytical references from manifest
/// labels over the workspace texts, summarized or compared by the mock
/// client. E_INSUFFICIENT_CORPUS when the manifest cannot supply a combo.
std::vector<EvalCase> build_dataset(const CorpusManifest& manifest, const Workspace& workspace,
                                    const DatasetOptions& options = {});

/// Normalized answer items: "id", "id|YYYY-MM-DD", "id|evergreen",
/// "id|role:name".
std::vector<std::string> answer_items(plan::Task task, const plan::Value& result);

class SimilarityScorer {
public:
    virtual ~SimilarityScorer() = default;
    virtual double score(std::string_view candidate, std::string_view reference) const = 0;
    virtual std::string name() const = 0;
};

/// Multiset overlap of lowercased alphanumeric tokens.
class TokenF1Scorer final : public SimilarityScorer {
public:
    double score(std::string_view candidate, std::string_view reference) const override;
    std::string name() const override { return "token-f1"; }
};

double token_f1(std::string_view candidate, std::string_view reference);

struct CaseOutcome {
    std::vector<std::string> items;
    std::map<std::string, bool> judgments;  // True/False scenarios
    std::string text;
    bool candidates_only = false;  // scored against candidate_truth
    bool unsupported = false;
    std::string error;
};

class System {
public:
    virtual ~System() = default;
    virtual std::string name() const = 0;
    virtual CaseOutcome run(const EvalCase& c) const = 0;
};

class LawSystem final : public System {
public:
    explicit LawSystem(std::shared_ptr<const Workspace> workspace) : ws_(std::move(workspace)) {}
    std::string name() const override { return "law"; }
    CaseOutcome run(const EvalCase& c) const override;

private:
    std::shared_ptr<const Workspace> ws_;
};

/// Single pass with no tools. Entity and master questions become one
/// True/False judgment per candidate, each over that contract cut to
/// `context_tokens`. Other tasks put the candidates in one prompt of
/// `context_tokens`, so later contracts are cut or dropped, and read the
/// first matching literals; summaries cover the same prompt.
class BaselineSystem final : public System {
public:
    explicit BaselineSystem(std::shared_ptr<const Workspace> workspace, size_t context_tokens = 3000)
        : ws_(std::move(workspace)), context_tokens_(context_tokens) {}
    std::string name() const override { return "baseline"; }
    CaseOutcome run(const EvalCase& c) const override;

    std::string context(const std::string& contract_id) const;
    /// Candidates in order, sharing one window.
    std::vector<std::string> shared_context(const std::vector<std::string>& ids) const;

private:
    std::shared_ptr<const Workspace> ws_;
    size_t context_tokens_;
};

/// Prefix of `text` holding at most `n` tokens.
std::string_view truncate_tokens(std::string_view text, size_t n);

struct TaskScore {
    size_t cases = 0;
    size_t scored = 0;
    size_t hits = 0;
    size_t total = 0;
    double macro_hit_rate = 0;
    double f1 = 0;
    size_t errors = 0;

    double hit_rate() const { return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0; }
};

struct CaseScore {
    std::string case_id;
    plan::Task task = plan::Task::explore_all;
    size_t hits = 0;
    size_t total = 0;
    std::optional<double> f1;
    std::string error;
};

struct ScoreCard {
    std::string system;
    std::string scorer;
    std::uint64_t seed = 0;
    std::map<plan::Task, TaskScore> tasks;
    std::vector<CaseScore> cases;
    double seconds = 0;

    nlohmann::json to_json() const;
    /// Task rows only; per-case scores are not read back.
    static ScoreCard from_json(const nlohmann::json& j);
};

CaseScore score_case(const EvalCase& c, const CaseOutcome& outcome, const SimilarityScorer& scorer);
/// Sums per-case scores by task; independent of case order.
std::map<plan::Task, TaskScore> aggregate(const std::vector<CaseScore>& scores);

ScoreCard run_eval(const std::vector<EvalCase>& cases, const System& system, const SimilarityScorer& scorer,
                   size_t workers = 8);

/// Task rows with LAW and baseline columns; "-" where a system has no score.
std::string render_table(const ScoreCard* law, const ScoreCard* baseline);
std::string render_csv(const ScoreCard* law, const ScoreCard* baseline);

/// Synthetic corpus used by the eval: `contracts` contracts for `seed`.
SynthCorpus eval_corpus(std::uint64_t seed, size_t contracts = 200);

}  // namespace law::eval
