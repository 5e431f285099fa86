#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace law::plan {

struct Locus {
    int line = 0;
    int col = 0;
};
std::string to_string(const Locus& l);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Arg {
    std::optional<std::string> keyword;
    ExprPtr value;
    Locus at;
};

struct Expr {
    enum class Kind { call, var, str, integer, boolean, index, sample };
    Kind kind = Kind::var;
    Locus at;
    std::string name;  // call tool / var name / string literal
    long integer = 0;  // int literal, index position, sample size
    bool boolean = false;
    std::vector<Arg> args;  // call
    ExprPtr target;         // index / sample operand
};

struct Cond {
    enum class Kind { empty, negation };
    Kind kind = Kind::empty;
    Locus at;
    ExprPtr expr;                 // empty
    std::unique_ptr<Cond> inner;  // negation
};

struct Stmt;
using Block = std::vector<std::unique_ptr<Stmt>>;

struct Stmt {
    enum class Kind { let, if_, for_each, ret };
    Kind kind = Kind::let;
    Locus at;
    std::string name;  // let target / loop variable
    ExprPtr expr;      // let value / loop source / return value
    std::unique_ptr<Cond> cond;
    Block body;       // then-block / loop body
    Block else_body;  // optional else
    bool has_else = false;
};

struct Program {
    Block statements;
    size_t statement_count = 0;
};

/// Walks every expression in evaluation order.
template <typename F>
void for_each_expr(const Expr& e, F&& f) {
    f(e);
    for (const auto& a : e.args) for_each_expr(*a.value, f);
    if (e.target) for_each_expr(*e.target, f);
}

}  // namespace law::plan
