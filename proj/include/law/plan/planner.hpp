#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "law/agents.hpp"
#include "law/plan/interpreter.hpp"

namespace law::plan {

enum class Task {
    explore_all,
    find_master_agreements,
    find_master_dates,
    find_termination_dates,
    find_parties,
    find_clause,
    summarize_clause,
    compare_clause,
};

std::string_view to_string(Task task);
Task parse_task(std::string_view text);  // E_BAD_QUERY
bool is_clause_task(Task task);
bool is_retrieval_task(Task task);
const std::vector<Task>& all_tasks();

struct QuerySpec {
    std::optional<std::string> fund;
    std::optional<std::string> trust;
    std::optional<std::string> custodian;
    Task task = Task::explore_all;
    std::optional<std::string> clause_label;
    std::optional<std::string> hint;  // free text appended to planner prompts

    /// Throws E_BAD_QUERY when no entity is given, a name is blank, or a
    /// clause task lacks a valid clause label.
    void validate() const;
    /// "Fund 'X' and Custodian 'Y'"
    std::string entity_phrase() const;
    /// One-line English rendering for prompts and reports.
    std::string describe() const;
};

nlohmann::json to_json(const QuerySpec& q);
QuerySpec query_from_json(const nlohmann::json& j);  // E_BAD_QUERY

struct PlanAttempt {
    std::string source;
    std::vector<ValidationReport> reports;  // one per tier reached
};

class Planner {
public:
    virtual ~Planner() = default;
    /// Source for the next attempt; `history` holds earlier failed attempts.
    virtual std::string propose(const QuerySpec& query, const Registry& registry,
                                const std::vector<PlanAttempt>& history) = 0;
    virtual std::string name() const = 0;
};

/// Plan text for a query, compiled from per-task templates.
std::string compile_template(const QuerySpec& query);

/// Applies every diagnostic that carries a suggestion by rewriting the
/// identifier at its locus. Returns nullopt when nothing applied.
std::optional<std::string> apply_suggestions(const std::string& source, const ValidationReport& report);

/// Deterministic planner: compiles templates and repairs from feedback by
/// applying suggestions, falling back to a fresh template.
class MockPlanner final : public Planner {
public:
    struct Options {
        bool inject_tool_typo = false;  // corrupt the first tool name on the first attempt
    };
    MockPlanner() = default;
    explicit MockPlanner(Options options) : options_(options) {}
    std::string propose(const QuerySpec& query, const Registry& registry,
                        const std::vector<PlanAttempt>& history) override;
    std::string name() const override { return "mock"; }

private:
    Options options_;
};

/// Prompts an LLM with the planner template and extracts the plan text.
class LlmPlanner final : public Planner {
public:
    explicit LlmPlanner(std::shared_ptr<LlmClient> client) : client_(std::move(client)) {}
    std::string propose(const QuerySpec& query, const Registry& registry,
                        const std::vector<PlanAttempt>& history) override;
    std::string name() const override { return "llm:" + client_->name(); }

private:
    std::shared_ptr<LlmClient> client_;
};

/// Plan text inside the first ``` fence, or the whole reply.
std::string extract_plan_text(const std::string& reply);

struct PlanOutcome {
    std::string source;
    Program program;
    Execution execution;
    std::vector<PlanAttempt> attempts;  // every attempt, the successful one last
};

/// Propose, parse, check, execute; feed the failing report back and retry.
/// Throws E_EXHAUSTED (with the attempts in the message) after max_attempts.
PlanOutcome plan_and_repair(const QuerySpec& query, Planner& planner, const Registry& registry,
                            int max_attempts = 3);

/// Same loop without throwing: `ok` is false when attempts ran out.
struct RepairResult {
    bool ok = false;
    PlanOutcome outcome;
};
RepairResult try_plan_and_repair(const QuerySpec& query, Planner& planner, const Registry& registry,
                                 int max_attempts = 3);

}  // namespace law::plan
