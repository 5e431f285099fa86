#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "law/plan/value.hpp"

namespace law::plan {

struct ParamSpec {
    std::string name;
    Type type;
    bool required = true;
    bool non_empty = false;  // an empty collection here is E_EMPTY_RESULT
};

struct ToolSpec {
    std::string name;
    std::vector<ParamSpec> params;
    Type returns;
    std::string description;
    std::string example;
};

/// Arguments after binding: one slot per declared parameter, null when an
/// optional parameter was not given.
using ToolArgs = std::map<std::string, Value>;
using ToolFn = std::function<Value(const ToolArgs&)>;

class Registry {
public:
    void add(ToolSpec spec, ToolFn fn = {});
    const ToolSpec* find(const std::string& name) const;
    const ToolFn* implementation(const std::string& name) const;
    std::vector<const ToolSpec*> tools() const;  // name order
    std::vector<std::string> names() const;
    /// Bullet list for planner prompts.
    std::string describe() const;

private:
    struct Entry {
        ToolSpec spec;
        ToolFn fn;
    };
    std::map<std::string, Entry> tools_;
};

/// Signatures of the domain tools; the orchestrator supplies implementations.
std::vector<ToolSpec> domain_tool_specs();

/// Nearest candidate within `max_distance` edits, ties to the earlier one.
std::optional<std::string> nearest_name(const std::string& name, const std::vector<std::string>& candidates,
                                        size_t max_distance = 3);

}  // namespace law::plan
