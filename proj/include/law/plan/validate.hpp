#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "law/plan/ast.hpp"
#include "law/plan/registry.hpp"

namespace law::plan {

inline constexpr size_t kMaxStatements = 200;
inline constexpr size_t kMaxDepth = 16;
inline constexpr size_t kCallBudget = 1000;

enum class Tier { syntax, hallucination, runtime };
std::string_view to_string(Tier tier);

struct Diagnostic {
    std::string code;
    std::string message;
    std::string locus;  // "line:col"
    std::optional<std::string> suggestion;
};

struct ValidationReport {
    Tier tier = Tier::syntax;
    bool passed = true;
    std::vector<Diagnostic> diagnostics;

    void fail(Diagnostic d) {
        passed = false;
        diagnostics.push_back(std::move(d));
    }
};

nlohmann::json to_json(const ValidationReport& r);
/// Human-readable feedback for planners.
std::string render_feedback(const ValidationReport& r);

/// Parses and enforces the structural constraints (statement cap, nesting,
/// identifiers defined before use, a return on every path). Throws Error
/// with E_PARSE, E_LIMIT, E_UNDEFINED or E_MISSING_RETURN and a line:col
/// locus.
/// `globals` names variables bound before execution.
Program parse_plan(std::string_view source, const std::vector<std::string>& globals = {});

/// Syntax tier as a report instead of an exception.
ValidationReport check_syntax(std::string_view source, Program* out = nullptr,
                              const std::vector<std::string>& globals = {});

/// Hallucination tier: tools exist, arguments bind, types unify.
ValidationReport check_tools(const Program& program, const Registry& registry,
                             const std::map<std::string, Type>& globals = {});

}  // namespace law::plan
