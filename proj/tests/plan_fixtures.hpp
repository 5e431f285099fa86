#pragma once

#include <string>
#include <vector>

#include "law/error.hpp"
#include "law/plan/planner.hpp"

namespace fixture {

using namespace law::plan;

/// Tiny in-memory world behind the domain tool signatures.
struct StubContract {
    std::string id;
    std::string fund;
    std::string custodian;
    law::CalendarDate effective;
    law::CalendarDate master;
    std::optional<law::CalendarDate> termination;
    std::string fee_text;
};

inline std::vector<StubContract> stub_world() {
    return {
        {"c1", "Alpha Fund", "First Bank", law::make_date(1, 3, 2001), law::make_date(1, 3, 2001), std::nullopt,
         "The fee is $100 per year."},
        {"c2", "Alpha Fund", "First Bank", law::make_date(5, 6, 2003), law::make_date(1, 3, 2001),
         law::make_date(5, 6, 2008), "The fee is $150 per year."},
        {"c3", "Alpha Fund", "First Bank", law::make_date(9, 9, 2005), law::make_date(1, 3, 2001), std::nullopt,
         "The fee is $150 per year."},
        {"c9", "Beta Fund", "Second Bank", law::make_date(2, 2, 2010), law::make_date(2, 2, 2010), std::nullopt,
         ""},
    };
}

inline Registry stub_registry() {
    static const auto world = stub_world();
    auto find = [](const std::string& id) -> const StubContract& {
        for (const auto& c : world) {
            if (c.id == id) return c;
        }
        throw law::Error("E_UNKNOWN_CONTRACT", "no contract " + id);
    };
    std::map<std::string, ToolFn> impl;
    impl["get_agreements_for"] = [](const ToolArgs& a) {
        std::vector<Value> out;
        for (const auto& c : world) {
            const Value& f = a.at("funds");
            const Value& cu = a.at("custodians");
            if (f.kind == Value::Kind::str && f.str != c.fund) continue;
            if (cu.kind == Value::Kind::str && cu.str != c.custodian) continue;
            if (a.at("trusts").kind == Value::Kind::str) continue;
            out.push_back(Value::of_contract(c.id));
        }
        return Value::of_list(out);
    };
    impl["get_effective_date"] = [find](const ToolArgs& a) { return Value::of_date(find(a.at("contract").str).effective); };
    impl["get_dates"] = [find](const ToolArgs& a) {
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            const auto& sc = find(c.str);
            out.push_back(Value::of_pair(c, Value::of_date(a.at("kind").str == "master" ? sc.master : sc.effective)));
        }
        return Value::of_list(out);
    };
    impl["get_parties"] = [find](const ToolArgs& a) {
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            const auto& sc = find(c.str);
            out.push_back(Value::of_pair(c, Value::of_str("fund:" + sc.fund)));
            out.push_back(Value::of_pair(c, Value::of_str("custodian:" + sc.custodian)));
        }
        return Value::of_list(out);
    };
    impl["get_lifecycle"] = [find](const ToolArgs& a) {
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            out.push_back(Value::of_pair(c, Value::of_optional_date(find(c.str).termination)));
        }
        return Value::of_list(out);
    };
    impl["get_master"] = [find](const ToolArgs& a) {
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            const auto& sc = find(c.str);
            for (const auto& m : world) {
                if (m.effective == sc.master && m.fund == sc.fund) {
                    Value v = Value::of_contract(m.id);
                    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
                }
            }
        }
        return Value::of_list(out);
    };
    impl["get_section_v2"] = [find](const ToolArgs& a) {
        std::vector<Value> out;
        for (const auto& c : a.at("agg_list").items) {
            const auto& sc = find(c.str);
            if (a.at("section_name").str != "fee schedule" || sc.fee_text.empty()) continue;
            out.push_back(Value::of_section({sc.id, 3, "FEE SCHEDULE", "fee schedule", sc.fee_text, sc.effective}));
        }
        return Value::of_list(out);
    };
    impl["get_summary_v1"] = [](const ToolArgs& a) {
        return Value::of_str("summary of " + std::to_string(a.at("sections").items.size()) + " sections");
    };
    impl["get_comparison_v1"] = [](const ToolArgs& a) {
        return Value::of_str("comparison of " + std::to_string(a.at("text_list").items.size()) + " sections");
    };
    Registry r;
    for (auto& spec : domain_tool_specs()) {
        std::string name = spec.name;
        r.add(std::move(spec), impl.at(name));
    }
    return r;
}

/// Ten valid plans compiled from templates over the stub world.
inline std::vector<QuerySpec> template_queries() {
    std::vector<QuerySpec> out;
    for (Task t : all_tasks()) {
        QuerySpec q;
        q.fund = "Alpha Fund";
        q.task = t;
        if (is_clause_task(t)) q.clause_label = "fee schedule";
        out.push_back(q);
    }
    QuerySpec combo;
    combo.fund = "Alpha Fund";
    combo.custodian = "First Bank";
    combo.task = Task::find_termination_dates;
    out.push_back(combo);
    QuerySpec cust;
    cust.custodian = "Second Bank";
    cust.task = Task::find_parties;
    out.push_back(cust);
    return out;
}

enum class Mutation { tool_name, kwarg_rename, arity, type_swap, statement_cap };

inline const std::vector<Mutation>& all_mutations() {
    static const std::vector<Mutation> m = {Mutation::tool_name, Mutation::kwarg_rename, Mutation::arity,
                                            Mutation::type_swap, Mutation::statement_cap};
    return m;
}

inline const char* mutation_name(Mutation m) {
    switch (m) {
        case Mutation::tool_name: return "tool-name corruption";
        case Mutation::kwarg_rename: return "kwarg rename";
        case Mutation::arity: return "arity change";
        case Mutation::type_swap: return "type swap";
        case Mutation::statement_cap: return "statement-cap overflow";
    }
    return "";
}

inline Tier expected_tier(Mutation m) { return m == Mutation::statement_cap ? Tier::syntax : Tier::hallucination; }

inline const char* expected_code(Mutation m) {
    switch (m) {
        case Mutation::tool_name: return "E_UNKNOWN_TOOL";
        case Mutation::kwarg_rename: return "E_BAD_KWARG";
        case Mutation::arity: return "E_BAD_ARITY";
        case Mutation::type_swap: return "E_TYPE_MISMATCH";
        case Mutation::statement_cap: return "E_LIMIT";
    }
    return "";
}

inline std::string replace_last(std::string s, const std::string& from, const std::string& to) {
    size_t pos = s.rfind(from);
    if (pos == std::string::npos) throw std::logic_error("mutation anchor missing: " + from);
    return s.replace(pos, from.size(), to);
}

/// Applies one mutation to the last tool call of a template plan.
inline std::string mutate(const std::string& src, Mutation m) {
    // the last call in every template is the one after the last "get_"
    size_t call = src.rfind("get_");
    size_t open = src.find('(', call);
    std::string tool = src.substr(call, open - call);
    bool agg = src.find("agg_list=agreements", call) != std::string::npos;
    std::string first_kw = src.substr(open + 1, src.find('=', open) - open - 1);
    switch (m) {
        case Mutation::tool_name: {
            std::string typo = tool;
            std::swap(typo[typo.size() - 1], typo[typo.size() - 2]);
            return src.substr(0, call) + typo + src.substr(open);
        }
        case Mutation::kwarg_rename:
            return src.substr(0, open + 1) + first_kw + "_value" + src.substr(open + 1 + first_kw.size());
        case Mutation::arity:
            if (agg) {
                std::string s = src;
                size_t at = s.find("agg_list=agreements", call);
                size_t len = std::string("agg_list=agreements").size();
                if (s[at + len] == ',') len += 2;
                return s.erase(at, len);
            }
            if (tool == "get_agreements_for") return replace_last(src, ")\n", ", \"extra\")\n");
            {
                // drop the first keyword argument of the last call
                std::string s = src;
                size_t end = s.find_first_of(",)", open);
                if (s[end] == ',') end += 2;
                return s.erase(open + 1, end - open - 1);
            }
        case Mutation::type_swap: {
            size_t eq = src.find('=', open);
            size_t end = src.find_first_of(",)", eq);
            if (src[eq + 1] == '"') end = src.find('"', eq + 2) + 1;
            return src.substr(0, eq + 1) + "5" + src.substr(end);
        }
        case Mutation::statement_cap: {
            std::string pad;
            for (int i = 0; i < 200; ++i) pad += "let pad" + std::to_string(i) + " = \"x\"\n";
            return pad + src;
        }
    }
    return src;
}

/// Emits `first` on attempt 1, then repairs like the mock planner.
class FirstSourcePlanner final : public Planner {
public:
    explicit FirstSourcePlanner(std::string first) : first_(std::move(first)) {}
    std::string propose(const QuerySpec& q, const Registry& r, const std::vector<PlanAttempt>& history) override {
        if (history.empty()) return first_;
        return mock_.propose(q, r, history);
    }
    std::string name() const override { return "first-source"; }

private:
    std::string first_;
    MockPlanner mock_;
};

/// Single-character typos of `name`: deletion, transposition, substitution.
inline std::vector<std::string> single_typos(const std::string& name) {
    std::vector<std::string> out;
    for (size_t i = 4; i < name.size(); i += 3) {
        std::string del = name;
        del.erase(i, 1);
        out.push_back(del);
        if (i + 1 < name.size() && name[i] != name[i + 1]) {
            std::string sw = name;
            std::swap(sw[i], sw[i + 1]);
            out.push_back(sw);
        }
        std::string sub = name;
        sub[i] = sub[i] == 'x' ? 'q' : 'x';
        out.push_back(sub);
    }
    return out;
}

}  // namespace fixture
