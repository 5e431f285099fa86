#include "law/plan/planner.hpp"

#include <algorithm>

#include "law/error.hpp"
#include "law/labels.hpp"
#include "law/text_util.hpp"

namespace law::plan {

namespace {

const std::vector<std::pair<Task, std::string_view>> kTaskNames = {
    {Task::explore_all, "explore_all"},
    {Task::find_master_agreements, "find_master_agreements"},
    {Task::find_master_dates, "find_master_dates"},
    {Task::find_termination_dates, "find_termination_dates"},
    {Task::find_parties, "find_parties"},
    {Task::find_clause, "find_clause"},
    {Task::summarize_clause, "summarize_clause"},
    {Task::compare_clause, "compare_clause"},
};

}  // namespace

std::string_view to_string(Task task) {
    for (const auto& [t, n] : kTaskNames) {
        if (t == task) return n;
    }
    return "explore_all";
}

Task parse_task(std::string_view text) {
    for (const auto& [t, n] : kTaskNames) {
        if (n == text) return t;
    }
    throw Error("E_BAD_QUERY", "unknown task '" + std::string(text) + "'");
}

bool is_clause_task(Task task) {
    return task == Task::find_clause || task == Task::summarize_clause || task == Task::compare_clause;
}

bool is_retrieval_task(Task task) { return !is_clause_task(task); }

const std::vector<Task>& all_tasks() {
    static const std::vector<Task> tasks = [] {
        std::vector<Task> out;
        for (const auto& [t, _] : kTaskNames) out.push_back(t);
        return out;
    }();
    return tasks;
}

void QuerySpec::validate() const {
    if (!fund && !trust && !custodian) throw Error("E_BAD_QUERY", "a query needs a fund, trust or custodian");
    for (const auto* e : {&fund, &trust, &custodian}) {
        if (*e && trim(**e).empty()) throw Error("E_BAD_QUERY", "entity names must not be blank");
    }
    if (is_clause_task(task)) {
        if (!clause_label) throw Error("E_BAD_QUERY", std::string(to_string(task)) + " needs a clause label");
        if (!is_clause_label(*clause_label)) {
            throw Error("E_BAD_QUERY", "unknown clause label '" + *clause_label + "'");
        }
    }
}

std::string QuerySpec::entity_phrase() const {
    std::vector<std::string> parts;
    if (fund) parts.push_back("Fund '" + *fund + "'");
    if (trust) parts.push_back("Trust '" + *trust + "'");
    if (custodian) parts.push_back("Custodian '" + *custodian + "'");
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " and ";
        out += parts[i];
    }
    return out;
}

std::string QuerySpec::describe() const {
    std::string clause = clause_label ? "'" + *clause_label + "'" : "";
    switch (task) {
        case Task::explore_all: return "Explore all contracts for " + entity_phrase() + ".";
        case Task::find_master_agreements: return "Find the master agreements for " + entity_phrase() + ".";
        case Task::find_master_dates: return "Find the master dates of the agreements for " + entity_phrase() + ".";
        case Task::find_termination_dates:
            return "Find the termination dates of the agreements for " + entity_phrase() + ".";
        case Task::find_parties: return "Find the parties to the agreements for " + entity_phrase() + ".";
        case Task::find_clause: return "Find the " + clause + " clauses for " + entity_phrase() + ".";
        case Task::summarize_clause: return "Summarize the " + clause + " clauses for " + entity_phrase() + ".";
        case Task::compare_clause: return "Compare the " + clause + " clauses for " + entity_phrase() + ".";
    }
    return "";
}

nlohmann::json to_json(const QuerySpec& q) {
    nlohmann::json entities = nlohmann::json::object();
    if (q.fund) entities["fund"] = *q.fund;
    if (q.trust) entities["trust"] = *q.trust;
    if (q.custodian) entities["custodian"] = *q.custodian;
    nlohmann::json j = {{"entities", entities}, {"task", std::string(to_string(q.task))}};
    if (q.clause_label) j["clause_label"] = *q.clause_label;
    if (q.hint) j["hint"] = *q.hint;
    return j;
}

QuerySpec query_from_json(const nlohmann::json& j) {
    QuerySpec q;
    try {
        if (!j.is_object()) throw Error("E_BAD_QUERY", "query must be an object");
        const auto& e = j.contains("entities") ? j.at("entities") : j;
        auto opt = [&](const nlohmann::json& src, const char* key) -> std::optional<std::string> {
            if (!src.contains(key) || src.at(key).is_null()) return std::nullopt;
            return src.at(key).get<std::string>();
        };
        q.fund = opt(e, "fund");
        q.trust = opt(e, "trust");
        q.custodian = opt(e, "custodian");
        if (!j.contains("task")) throw Error("E_BAD_QUERY", "query needs a task");
        q.task = parse_task(j.at("task").get<std::string>());
        q.clause_label = opt(j, "clause_label");
        if (!q.clause_label) q.clause_label = opt(j, "clause");
        q.hint = opt(j, "hint");
    } catch (const nlohmann::json::exception& ex) {
        throw Error("E_BAD_QUERY", std::string("malformed query: ") + ex.what());
    }
    q.validate();
    return q;
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string compile_template(const QuerySpec& q) {
    q.validate();
    std::string kwargs;
    auto add = [&](const char* name, const std::optional<std::string>& v) {
        if (!v) return;
        if (!kwargs.empty()) kwargs += ", ";
        kwargs += std::string(name) + "=" + quote(*v);
    };
    add("funds", q.fund);
    add("trusts", q.trust);
    add("custodians", q.custodian);

    std::string src = "# " + q.describe() + "\n";
    src += "let agreements = get_agreements_for(" + kwargs + ")\n";
    src += "if empty(agreements) then\n  return " + quote("No agreements found for " + q.entity_phrase()) + "\nend\n";
    std::string hint = q.hint ? ", hint=" + quote(*q.hint) : "";
    switch (q.task) {
        case Task::explore_all: src += "return agreements\n"; break;
        case Task::find_master_agreements: src += "return get_master(agg_list=agreements)\n"; break;
        case Task::find_master_dates: src += "return get_dates(agg_list=agreements, kind=\"master\")\n"; break;
        case Task::find_termination_dates: src += "return get_lifecycle(agg_list=agreements)\n"; break;
        case Task::find_parties: src += "return get_parties(agg_list=agreements)\n"; break;
        case Task::find_clause:
        case Task::summarize_clause:
        case Task::compare_clause: {
            const std::string& label = *q.clause_label;
            src += "let clauses = get_section_v2(agg_list=agreements, section_name=" + quote(label) + ")\n";
            src += "if empty(clauses) then\n  return " +
                   quote("No '" + label + "' clauses found for " + q.entity_phrase()) + "\nend\n";
            if (q.task == Task::find_clause) {
                src += "return clauses\n";
            } else if (q.task == Task::summarize_clause) {
                src += "let selected = sample(clauses, 5)\n";
                src += "return get_summary_v1(sections=selected" + hint + ")\n";
            } else {
                src += "let selected = sample(clauses, 5)\n";
                src += "return get_comparison_v1(text_list=selected" + hint + ")\n";
            }
            break;
        }
    }
    return src;
}

std::optional<std::string> apply_suggestions(const std::string& source, const ValidationReport& report) {
    struct Edit {
        size_t offset;
        std::string replacement;
    };
    std::vector<size_t> line_starts = {0};
    for (size_t i = 0; i < source.size(); ++i) {
        if (source[i] == '\n') line_starts.push_back(i + 1);
    }
    std::vector<Edit> edits;
    for (const auto& d : report.diagnostics) {
        if (!d.suggestion) continue;
        auto colon = d.locus.find(':');
        if (colon == std::string::npos) continue;
        size_t line = std::stoul(d.locus.substr(0, colon));
        size_t col = std::stoul(d.locus.substr(colon + 1));
        if (line == 0 || line > line_starts.size() || col == 0) continue;
        edits.push_back({line_starts[line - 1] + col - 1, *d.suggestion});
    }
    if (edits.empty()) return std::nullopt;
    std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.offset > b.offset; });
    std::string out = source;
    for (const auto& e : edits) {
        size_t end = e.offset;
        while (end < out.size() && (std::isalnum(static_cast<unsigned char>(out[end])) || out[end] == '_')) ++end;
        if (end == e.offset) continue;
        out.replace(e.offset, end - e.offset, e.replacement);
    }
    return out;
}

std::string MockPlanner::propose(const QuerySpec& query, const Registry&, const std::vector<PlanAttempt>& history) {
    if (history.empty()) {
        std::string src = compile_template(query);
        if (options_.inject_tool_typo) {
            // drop one letter from the first tool name: get_agreements_for -> get_agrements_for
            size_t pos = src.find("get_agreements_for");
            if (pos != std::string::npos) src.erase(pos + 6, 1);
        }
        return src;
    }
    const PlanAttempt& last = history.back();
    if (!last.reports.empty()) {
        if (auto repaired = apply_suggestions(last.source, last.reports.back())) return *repaired;
    }
    return compile_template(query);
}

std::string extract_plan_text(const std::string& reply) {
    size_t open = reply.find("```");
    if (open == std::string::npos) return trim(reply) + "\n";
    size_t body = reply.find('\n', open);
    if (body == std::string::npos) return "";
    size_t close = reply.find("```", body);
    return reply.substr(body + 1, close == std::string::npos ? std::string::npos : close - body - 1);
}

std::string LlmPlanner::propose(const QuerySpec& query, const Registry& registry,
                                const std::vector<PlanAttempt>& history) {
    QuerySpec example;
    example.fund = "BNY Mellon International Equity Income Fund";
    example.task = Task::compare_clause;
    example.clause_label = "authorized persons";
    std::string feedback;
    if (!history.empty()) {
        const auto& last = history.back();
        feedback = "Your previous plan was:\n" + last.source + "\n";
        if (!last.reports.empty()) feedback += render_feedback(last.reports.back());
        feedback += "Fix the problems and reply with the corrected plan.\n";
    }
    std::string prompt = render_prompt("planner", {{"tools", registry.describe()},
                                                   {"example", compile_template(example)},
                                                   {"query", query.describe()},
                                                   {"hint", query.hint ? "Note: " + *query.hint : ""},
                                                   {"feedback", feedback}});
    return extract_plan_text(client_->generate(prompt, 2000));
}

RepairResult try_plan_and_repair(const QuerySpec& query, Planner& planner, const Registry& registry,
                                 int max_attempts) {
    query.validate();
    RepairResult r;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        PlanAttempt a;
        try {
            a.source = planner.propose(query, registry, r.outcome.attempts);
        } catch (const Error& e) {
            ValidationReport rep;
            rep.tier = Tier::syntax;
            rep.fail({e.code(), std::string("planner failed: ") + e.what(), e.locus(), std::nullopt});
            a.reports.push_back(rep);
            r.outcome.attempts.push_back(std::move(a));
            continue;
        }
        Program program;
        auto syntax = check_syntax(a.source, &program);
        a.reports.push_back(syntax);
        if (!syntax.passed) {
            r.outcome.attempts.push_back(std::move(a));
            continue;
        }
        auto tools = check_tools(program, registry);
        a.reports.push_back(tools);
        if (!tools.passed) {
            r.outcome.attempts.push_back(std::move(a));
            continue;
        }
        Execution exec = execute_plan(program, registry);
        a.reports.push_back(exec.report);
        bool ok = exec.report.passed;
        r.outcome.attempts.push_back(a);
        if (ok) {
            r.ok = true;
            r.outcome.source = a.source;
            r.outcome.program = std::move(program);
            r.outcome.execution = std::move(exec);
            return r;
        }
        r.outcome.source = a.source;
        r.outcome.execution = std::move(exec);
    }
    return r;
}

PlanOutcome plan_and_repair(const QuerySpec& query, Planner& planner, const Registry& registry, int max_attempts) {
    auto r = try_plan_and_repair(query, planner, registry, max_attempts);
    if (r.ok) return std::move(r.outcome);
    std::string detail;
    if (!r.outcome.attempts.empty() && !r.outcome.attempts.back().reports.empty()) {
        detail = render_feedback(r.outcome.attempts.back().reports.back());
    }
    throw Error("E_EXHAUSTED",
                "no valid plan after " + std::to_string(max_attempts) + " attempts. " + detail,
                std::to_string(r.outcome.attempts.size()) + " attempts");
}

}  // namespace law::plan
