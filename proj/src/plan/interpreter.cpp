#include "law/plan/interpreter.hpp"

#include <chrono>

#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law::plan {

nlohmann::json to_json(const TraceEntry& e) {
    return {{"tool", e.tool},
            {"args_digest", e.args_digest},
            {"duration_ms", e.duration_ms},
            {"outcome", e.outcome},
            {"locus", e.locus}};
}

std::string trace_digest(const std::vector<TraceEntry>& trace) {
    std::string acc;
    for (const auto& e : trace) acc += e.tool + "|" + e.args_digest + "|" + e.outcome + "|" + e.locus + "\n";
    return hex64(fnv1a64(acc));
}

std::vector<Value> sample_values(const std::vector<Value>& items, size_t k) {
    std::vector<Value> nonempty;
    for (const auto& v : items) {
        if (!v.empty()) nonempty.push_back(v);
    }
    if (nonempty.size() <= k) return nonempty;
    std::vector<Value> out;
    for (size_t i = 0; i < k; ++i) out.push_back(nonempty[i * nonempty.size() / k]);
    return out;
}

namespace {

bool conforms(const Value& v, const Type& t) {
    switch (t.kind) {
        case Type::Kind::any: return true;
        case Type::Kind::str:
        case Type::Kind::text: return v.kind == Value::Kind::str;
        case Type::Kind::integer: return v.kind == Value::Kind::integer;
        case Type::Kind::boolean: return v.kind == Value::Kind::boolean;
        case Type::Kind::date: return v.kind == Value::Kind::date || v.kind == Value::Kind::null;
        case Type::Kind::contract: return v.kind == Value::Kind::contract;
        case Type::Kind::section: return v.kind == Value::Kind::section;
        case Type::Kind::list:
            if (v.kind != Value::Kind::list) return false;
            for (const auto& x : v.items) {
                if (!conforms(x, t.args[0])) return false;
            }
            return true;
        case Type::Kind::pair:
            return v.kind == Value::Kind::pair && conforms(v.items[0], t.args[0]) && conforms(v.items[1], t.args[1]);
    }
    return false;
}

struct Halt {
    Diagnostic diagnostic;
};

class Interpreter {
public:
    Interpreter(const Registry& registry, size_t budget, std::vector<TraceEntry>& trace)
        : registry_(registry), budget_(budget), trace_(trace) {}

    // Returns the value of the first return statement reached.
    std::optional<Value> block(const Block& b, std::map<std::string, Value>& env) {
        for (const auto& s : b) {
            if (auto r = statement(*s, env)) return r;
        }
        return std::nullopt;
    }

private:
    std::optional<Value> statement(const Stmt& s, std::map<std::string, Value>& env) {
        switch (s.kind) {
            case Stmt::Kind::let: env[s.name] = eval(*s.expr, env); return std::nullopt;
            case Stmt::Kind::ret: return eval(*s.expr, env);
            case Stmt::Kind::if_: {
                if (cond(*s.cond, env)) return block(s.body, env);
                return block(s.else_body, env);
            }
            case Stmt::Kind::for_each: {
                Value src = eval(*s.expr, env);
                if (src.kind != Value::Kind::list) {
                    halt("E_RUNTIME_TYPE", "loop over a " + std::string(to_string(src.kind)), s.expr->at);
                }
                for (const auto& item : src.items) {
                    auto inner = env;
                    inner[s.name] = item;
                    if (auto r = block(s.body, inner)) return r;
                }
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    bool cond(const Cond& c, const std::map<std::string, Value>& env) {
        if (c.kind == Cond::Kind::negation) return !cond(*c.inner, env);
        return eval(*c.expr, env).empty();
    }

    Value eval(const Expr& e, const std::map<std::string, Value>& env) {
        switch (e.kind) {
            case Expr::Kind::str: return Value::of_str(e.name);
            case Expr::Kind::integer: return Value::of_int(e.integer);
            case Expr::Kind::boolean: return Value::of_bool(e.boolean);
            case Expr::Kind::var: {
                auto it = env.find(e.name);
                if (it == env.end()) halt("E_RUNTIME_TYPE", "unbound variable '" + e.name + "'", e.at);
                return it->second;
            }
            case Expr::Kind::index: {
                Value v = eval(*e.target, env);
                auto i = static_cast<size_t>(e.integer);
                if (v.kind != Value::Kind::list && v.kind != Value::Kind::pair) {
                    halt("E_RUNTIME_TYPE", "cannot index a " + std::string(to_string(v.kind)), e.at);
                }
                if (i >= v.items.size()) {
                    halt("E_RUNTIME_TYPE",
                         "index " + std::to_string(i) + " out of range for size " + std::to_string(v.items.size()),
                         e.at);
                }
                return v.items[i];
            }
            case Expr::Kind::sample: {
                Value v = eval(*e.target, env);
                if (v.kind != Value::Kind::list) {
                    halt("E_RUNTIME_TYPE", "sample() of a " + std::string(to_string(v.kind)), e.at);
                }
                return Value::of_list(sample_values(v.items, static_cast<size_t>(e.integer)));
            }
            case Expr::Kind::call: return call(e, env);
        }
        return Value::null();
    }

    Value call(const Expr& e, const std::map<std::string, Value>& env) {
        const ToolSpec* spec = registry_.find(e.name);
        const ToolFn* fn = registry_.implementation(e.name);
        if (!spec || !fn) halt("E_TOOL_FAIL", "tool '" + e.name + "' has no implementation", e.at);

        ToolArgs args;
        size_t positional = 0;
        for (const auto& a : e.args) {
            std::string name = a.keyword ? *a.keyword : spec->params.at(positional++).name;
            args[name] = eval(*a.value, env);
        }
        for (const auto& p : spec->params) {
            if (!args.count(p.name)) args[p.name] = Value::null();
        }

        TraceEntry entry;
        entry.tool = e.name;
        entry.locus = to_string(e.at);
        nlohmann::json canon = nlohmann::json::object();
        for (const auto& [k, v] : args) canon[k] = to_json_value(v);
        entry.args_digest = hex64(fnv1a64(canon.dump()));

        if (trace_.size() >= budget_) {
            halt("E_BUDGET", "more than " + std::to_string(budget_) + " tool calls", e.at);
        }
        for (const auto& p : spec->params) {
            const Value& v = args[p.name];
            if (v.kind != Value::Kind::null && !conforms(v, p.type)) {
                entry.outcome = "E_RUNTIME_TYPE";
                trace_.push_back(entry);
                halt("E_RUNTIME_TYPE", "argument '" + p.name + "' is not a " + to_string(p.type), e.at);
            }
            if (p.non_empty && v.empty()) {
                entry.outcome = "E_EMPTY_RESULT";
                trace_.push_back(entry);
                halt("E_EMPTY_RESULT", "argument '" + p.name + "' of " + e.name + "() is empty", e.at);
            }
        }

        auto start = std::chrono::steady_clock::now();
        Value result;
        std::string failure;
        try {
            result = (*fn)(args);
        } catch (const Error& err) {
            failure = err.code() + ": " + err.what();
        } catch (const std::exception& err) {
            failure = err.what();
        }
        entry.duration_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (!failure.empty()) {
            entry.outcome = "E_TOOL_FAIL";
            trace_.push_back(entry);
            halt("E_TOOL_FAIL", e.name + "() failed: " + failure, e.at);
        }
        if (!conforms(result, spec->returns)) {
            entry.outcome = "E_RUNTIME_TYPE";
            trace_.push_back(entry);
            halt("E_RUNTIME_TYPE", e.name + "() returned a value that is not a " + to_string(spec->returns), e.at);
        }
        entry.outcome = "ok";
        trace_.push_back(entry);
        return result;
    }

    [[noreturn]] void halt(const char* code, const std::string& msg, Locus at) {
        throw Halt{{code, msg, to_string(at), std::nullopt}};
    }

    const Registry& registry_;
    size_t budget_;
    std::vector<TraceEntry>& trace_;
};

}  // namespace

Execution execute_plan(const Program& program, const Registry& registry, const std::map<std::string, Value>& bindings,
                       size_t budget) {
    Execution out;
    out.report.tier = Tier::runtime;
    Interpreter interp(registry, budget, out.trace);
    auto env = bindings;
    try {
        auto r = interp.block(program.statements, env);
        if (!r) {
            out.report.fail({"E_MISSING_RETURN", "execution ended without a return", "", std::nullopt});
        } else {
            out.result = std::move(*r);
        }
    } catch (const Halt& h) {
        out.report.fail(h.diagnostic);
    }
    return out;
}

}  // namespace law::plan
