#pragma once

#include "tracematch/program.hpp"
#include "tracematch/value.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Surface syntax tree as written by the user, before three-address lowering.
namespace tracematch::surface {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Literal { Value value; };
struct Var { std::string name; };
struct Unary { UnOp op; ExprPtr operand; };
struct Binary { BinOp op; ExprPtr lhs; ExprPtr rhs; };
struct And { ExprPtr lhs; ExprPtr rhs; };
struct Or { ExprPtr lhs; ExprPtr rhs; };
struct Index { ExprPtr base; ExprPtr index; };
struct ArrayLit { std::vector<ExprPtr> elems; };
/// Function call; a null argument is the elided `_` (observeFun/cover only).
struct Call { std::string fn; std::vector<ExprPtr> args; };

struct Expr {
    int line = 0;
    int column = 0;
    std::variant<Literal, Var, Unary, Binary, And, Or, Index, ArrayLit, Call> node;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Assign { std::string target; ExprPtr value; };
struct AssignIndex { std::string target; ExprPtr index; ExprPtr value; };
struct If { ExprPtr cond; Block then_block; Block else_block; };
struct While { ExprPtr cond; Block body; };
struct Return { ExprPtr value; };  // may be null
struct Break {};
struct Skip {};
struct ExprStmt { ExprPtr call; };
struct Observe { ExprPtr value; std::optional<std::string> equality; };
struct ObserveFun { ExprPtr call; std::optional<std::string> equality; };
/// cover(f(...)) when `value` is a library call, cover(v) otherwise.
struct Cover { ExprPtr value; };

struct Stmt {
    int line = 0;
    int column = 0;
    int end_line = 0;
    std::variant<Assign, AssignIndex, If, While, Return, Break, Skip, ExprStmt, Observe, ObserveFun,
                 Cover>
        node;
};

struct Function {
    std::string name;
    std::vector<std::string> params;
    Block body;
    int line = 0;
    int column = 0;
};

struct Program {
    std::vector<Function> functions;
    std::vector<std::string> nondet_vars;
    int nondet_line = 0;
    Pragmas pragmas;
};

}  // namespace tracematch::surface
