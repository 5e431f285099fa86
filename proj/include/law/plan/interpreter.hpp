#pragma once

#include <map>
#include <string>
#include <vector>

#include "law/plan/validate.hpp"

namespace law::plan {

struct TraceEntry {
    std::string tool;
    std::string args_digest;  // fnv1a64 of the canonical argument JSON
    double duration_ms = 0.0;
    std::string outcome;  // "ok" or an error code
    std::string locus;
};

struct Execution {
    Value result;
    ValidationReport report;  // runtime tier
    std::vector<TraceEntry> trace;
};

nlohmann::json to_json(const TraceEntry& e);
/// Digest over tool names, argument digests and outcomes (timings excluded).
std::string trace_digest(const std::vector<TraceEntry>& trace);

/// Runs a program that passed both static tiers. Failures stop execution and
/// are reported as E_TOOL_FAIL, E_EMPTY_RESULT, E_RUNTIME_TYPE or E_BUDGET;
/// the trace so far is always returned.
Execution execute_plan(const Program& program, const Registry& registry,
                       const std::map<std::string, Value>& bindings = {}, size_t budget = kCallBudget);

/// Evenly spaced selection of up to k non-empty items.
std::vector<Value> sample_values(const std::vector<Value>& items, size_t k);

}  // namespace law::plan
