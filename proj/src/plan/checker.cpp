#include <set>

#include "law/plan/validate.hpp"

namespace law::plan {

std::string_view to_string(Tier tier) {
    switch (tier) {
        case Tier::syntax: return "syntax";
        case Tier::hallucination: return "hallucination";
        case Tier::runtime: return "runtime";
    }
    return "syntax";
}

nlohmann::json to_json(const ValidationReport& r) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& x : r.diagnostics) {
        nlohmann::json j = {{"code", x.code}, {"message", x.message}, {"locus", x.locus}};
        j["suggestion"] = x.suggestion ? nlohmann::json(*x.suggestion) : nlohmann::json(nullptr);
        d.push_back(std::move(j));
    }
    return {{"tier", std::string(to_string(r.tier))}, {"passed", r.passed}, {"diagnostics", d}};
}

std::string render_feedback(const ValidationReport& r) {
    if (r.passed) return "The " + std::string(to_string(r.tier)) + " check passed.";
    std::string out = "The " + std::string(to_string(r.tier)) + " check failed:\n";
    for (const auto& d : r.diagnostics) {
        out += "- " + d.code + " at " + d.locus + ": " + d.message;
        if (d.suggestion) out += " (did you mean '" + *d.suggestion + "'?)";
        out += "\n";
    }
    return out;
}

namespace {

class Checker {
public:
    Checker(const Registry& registry, ValidationReport& report) : registry_(registry), report_(report) {}

    void block(const Block& b, std::map<std::string, Type> env) {
        for (const auto& s : b) statement(*s, env);
    }

    void statement(const Stmt& s, std::map<std::string, Type>& env) {
        switch (s.kind) {
            case Stmt::Kind::let: env[s.name] = expr(*s.expr, env); break;
            case Stmt::Kind::ret: expr(*s.expr, env); break;
            case Stmt::Kind::if_: {
                cond(*s.cond, env);
                auto then_env = env;
                for (const auto& x : s.body) statement(*x, then_env);
                auto else_env = env;
                for (const auto& x : s.else_body) statement(*x, else_env);
                // a name bound in both branches keeps a type only when they agree
                for (const auto& [name, t] : then_env) {
                    auto it = else_env.find(name);
                    if (it == else_env.end()) continue;
                    env[name] = t == it->second ? t : Type::any();
                }
                break;
            }
            case Stmt::Kind::for_each: {
                Type src = expr(*s.expr, env);
                Type elem = Type::any();
                if (src.kind == Type::Kind::list) {
                    elem = src.args[0];
                } else if (src.kind != Type::Kind::any) {
                    mismatch(s.expr->at, "a loop needs a List, got " + to_string(src));
                }
                auto inner = env;
                inner[s.name] = elem;
                for (const auto& x : s.body) statement(*x, inner);
                break;
            }
        }
    }

private:
    void cond(const Cond& c, const std::map<std::string, Type>& env) {
        if (c.kind == Cond::Kind::negation) {
            cond(*c.inner, env);
            return;
        }
        Type t = expr(*c.expr, env);
        switch (t.kind) {
            case Type::Kind::integer:
            case Type::Kind::boolean:
            case Type::Kind::contract: mismatch(c.expr->at, "empty() does not apply to " + to_string(t)); break;
            default: break;
        }
    }

    Type expr(const Expr& e, const std::map<std::string, Type>& env) {
        switch (e.kind) {
            case Expr::Kind::str: return Type::str();
            case Expr::Kind::integer: return Type::integer();
            case Expr::Kind::boolean: return Type::boolean();
            case Expr::Kind::var: {
                auto it = env.find(e.name);
                return it == env.end() ? Type::any() : it->second;
            }
            case Expr::Kind::index: {
                Type t = expr(*e.target, env);
                if (t.kind == Type::Kind::list) return t.args[0];
                if (t.kind == Type::Kind::pair) {
                    if (e.integer > 1) {
                        mismatch(e.at, "a Pair has members 0 and 1");
                        return Type::any();
                    }
                    return t.args[static_cast<size_t>(e.integer)];
                }
                if (t.kind != Type::Kind::any) mismatch(e.at, "cannot index " + to_string(t));
                return Type::any();
            }
            case Expr::Kind::sample: {
                Type t = expr(*e.target, env);
                if (t.kind != Type::Kind::list && t.kind != Type::Kind::any) {
                    mismatch(e.at, "sample() needs a List, got " + to_string(t));
                    return Type::any();
                }
                return t;
            }
            case Expr::Kind::call: return call(e, env);
        }
        return Type::any();
    }

    Type call(const Expr& e, const std::map<std::string, Type>& env) {
        std::vector<Type> arg_types;
        for (const auto& a : e.args) arg_types.push_back(expr(*a.value, env));

        const ToolSpec* spec = registry_.find(e.name);
        if (!spec) {
            report_.fail({"E_UNKNOWN_TOOL", "no tool named '" + e.name + "'", to_string(e.at),
                          nearest_name(e.name, registry_.names())});
            return Type::any();
        }
        std::set<std::string> bound;
        size_t positional = 0;
        bool seen_keyword = false;
        for (size_t i = 0; i < e.args.size(); ++i) {
            const Arg& a = e.args[i];
            const ParamSpec* param = nullptr;
            if (a.keyword) {
                seen_keyword = true;
                for (const auto& p : spec->params) {
                    if (p.name == *a.keyword) param = &p;
                }
                if (!param) {
                    std::vector<std::string> names;
                    for (const auto& p : spec->params) names.push_back(p.name);
                    report_.fail({"E_BAD_KWARG", e.name + "() has no parameter '" + *a.keyword + "'",
                                  to_string(a.at), nearest_name(*a.keyword, names)});
                    continue;
                }
            } else {
                if (seen_keyword) {
                    report_.fail({"E_BAD_ARITY", "positional argument after keyword arguments", to_string(a.at),
                                  std::nullopt});
                    continue;
                }
                if (positional >= spec->params.size()) {
                    report_.fail({"E_BAD_ARITY",
                                  e.name + "() takes at most " + std::to_string(spec->params.size()) + " arguments",
                                  to_string(a.at), std::nullopt});
                    continue;
                }
                param = &spec->params[positional++];
            }
            if (!bound.insert(param->name).second) {
                report_.fail({"E_BAD_KWARG", "parameter '" + param->name + "' given twice", to_string(a.at),
                              std::nullopt});
                continue;
            }
            if (!assignable(arg_types[i], param->type)) {
                mismatch(a.at, "parameter '" + param->name + "' of " + e.name + "() expects " +
                                   to_string(param->type) + ", got " + to_string(arg_types[i]));
            }
        }
        for (const auto& p : spec->params) {
            if (p.required && !bound.count(p.name)) {
                report_.fail({"E_BAD_ARITY", e.name + "() is missing required parameter '" + p.name + "'",
                              to_string(e.at), std::nullopt});
            }
        }
        return spec->returns;
    }

    void mismatch(Locus at, const std::string& msg) {
        report_.fail({"E_TYPE_MISMATCH", msg, to_string(at), std::nullopt});
    }

    const Registry& registry_;
    ValidationReport& report_;
};

}  // namespace

ValidationReport check_tools(const Program& program, const Registry& registry,
                             const std::map<std::string, Type>& globals) {
    ValidationReport r;
    r.tier = Tier::hallucination;
    Checker(registry, r).block(program.statements, globals);
    return r;
}

}  // namespace law::plan
