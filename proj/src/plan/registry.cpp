#include "law/plan/registry.hpp"

#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law::plan {

void Registry::add(ToolSpec spec, ToolFn fn) {
    std::string name = spec.name;
    if (tools_.count(name)) throw Error("E_CONFIG", "duplicate tool " + name);
    tools_.emplace(name, Entry{std::move(spec), std::move(fn)});
}

const ToolSpec* Registry::find(const std::string& name) const {
    auto it = tools_.find(name);
    return it == tools_.end() ? nullptr : &it->second.spec;
}

const ToolFn* Registry::implementation(const std::string& name) const {
    auto it = tools_.find(name);
    return it == tools_.end() || !it->second.fn ? nullptr : &it->second.fn;
}

std::vector<const ToolSpec*> Registry::tools() const {
    std::vector<const ToolSpec*> out;
    for (const auto& [_, e] : tools_) out.push_back(&e.spec);
    return out;
}

std::vector<std::string> Registry::names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : tools_) out.push_back(n);
    return out;
}

std::string Registry::describe() const {
    std::string out;
    for (const auto* t : tools()) {
        out += "- " + t->name + "(";
        for (size_t i = 0; i < t->params.size(); ++i) {
            const auto& p = t->params[i];
            if (i) out += ", ";
            out += p.name + ": " + to_string(p.type) + (p.required ? "" : " = none");
        }
        out += ") -> " + to_string(t->returns) + "\n  " + t->description + "\n  e.g. " + t->example + "\n";
    }
    return out;
}

std::vector<ToolSpec> domain_tool_specs() {
    const Type contracts = Type::list(Type::contract());
    const Type sections = Type::list(Type::section());
    return {
        {"get_agreements_for",
         {{"funds", Type::str(), false}, {"trusts", Type::str(), false}, {"custodians", Type::str(), false}},
         contracts,
         "Contracts whose parties include every given entity (fund, trust, custodian), ordered by contract id.",
         "let agreements = get_agreements_for(funds=\"Acme Growth Fund\")"},
        {"get_effective_date",
         {{"contract", Type::contract(), true}},
         Type::date(),
         "Effective date of one contract.",
         "let d = get_effective_date(contract=agreements[0])"},
        {"get_dates",
         {{"agg_list", contracts, true}, {"kind", Type::str(), true}},
         Type::list(Type::pair(Type::contract(), Type::date())),
         "One (contract, date) pair per contract; kind is \"effective\", \"master\" or \"dated\".",
         "let dates = get_dates(agg_list=agreements, kind=\"master\")"},
        {"get_parties",
         {{"agg_list", contracts, true}},
         Type::list(Type::pair(Type::contract(), Type::str())),
         "One (contract, \"role:name\") pair per party found in each contract.",
         "let parties = get_parties(agg_list=agreements)"},
        {"get_lifecycle",
         {{"agg_list", contracts, true}},
         Type::list(Type::pair(Type::contract(), Type::date())),
         "Termination date per contract; the date is none for evergreen contracts.",
         "let ends = get_lifecycle(agg_list=agreements)"},
        {"get_master",
         {{"agg_list", contracts, true}},
         contracts,
         "Distinct master agreements of the given contracts.",
         "let masters = get_master(agg_list=agreements)"},
        {"get_section_v2",
         {{"agg_list", contracts, true, true}, {"section_name", Type::str(), true}},
         sections,
         "Best matching section per contract for a clause label (BM25 over section text and title), oldest first.",
         "let clauses = get_section_v2(agg_list=agreements, section_name=\"authorized persons\")"},
        {"get_summary_v1",
         {{"sections", sections, true, true}, {"hint", Type::str(), false}},
         Type::text(),
         "Summary of the given sections, chunked when they exceed the context budget.",
         "let summary = get_summary_v1(sections=clauses)"},
        {"get_comparison_v1",
         {{"text_list", sections, true, true}, {"hint", Type::str(), false}},
         Type::text(),
         "Chronological pairwise comparison of clause versions.",
         "let output = get_comparison_v1(text_list=sample(clauses, 5))"},
    };
}

std::optional<std::string> nearest_name(const std::string& name, const std::vector<std::string>& candidates,
                                        size_t max_distance) {
    std::optional<std::string> best;
    size_t best_d = max_distance + 1;
    for (const auto& c : candidates) {
        size_t d = levenshtein_bounded(name, c, max_distance + 1);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

}  // namespace law::plan
