#pragma once

#include "tracematch/value.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tracematch {

/// Index of a statement location inside one Program.
using StmtId = std::uint32_t;
inline constexpr StmtId kNoStmt = static_cast<StmtId>(-1);

enum class Role { Implementation, Specification };

std::string_view role_name(Role r);

// ---------------------------------------------------------------------------
// Three-address intermediate form. Operators, indexing and calls only take
// atoms (a variable or a literal).

struct Atom {
    std::variant<Value, std::string> v;

    static Atom var(std::string name) { return Atom{std::move(name)}; }
    static Atom lit(Value value) { return Atom{std::move(value)}; }
    bool is_var() const { return v.index() == 1; }
    const std::string& name() const { return std::get<1>(v); }
    const Value& literal() const { return std::get<0>(v); }
};

enum class UnOp { Not, Neg, Len, ToInt, ToChar, TypeOf };
enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, Alloc };

std::string_view op_name(UnOp op);
std::string_view op_name(BinOp op);

struct CopyRhs { Atom a; };
struct UnaryRhs { UnOp op; Atom a; };
struct BinaryRhs { BinOp op; Atom lhs; Atom rhs; };
struct IndexRhs { std::string array; Atom index; };
struct ArrayRhs { std::vector<Atom> elems; };
struct LibCallRhs { std::string fn; std::vector<Atom> args; };
struct UserCallRhs { std::string fn; std::vector<Atom> args; };

using Rhs = std::variant<CopyRhs, UnaryRhs, BinaryRhs, IndexRhs, ArrayRhs, LibCallRhs, UserCallRhs>;

/// Branch and loop conditions are evaluated without being recorded.
using Cond = std::variant<CopyRhs, UnaryRhs, BinaryRhs>;

struct Stmt;
using Block = std::vector<Stmt>;

struct AssignStmt {
    std::string target;
    Rhs rhs;
    StmtId result_loc = kNoStmt;  // companion location for library-call results
};
struct AssignIndexStmt { std::string target; Atom index; Atom value; };
struct IfStmt { Cond cond; Block then_block; Block else_block; };
struct WhileStmt { Block prelude; Cond cond; Block body; };
struct ReturnStmt { std::optional<Atom> value; };
struct BreakStmt {};
struct SkipStmt {};
/// Call used as a statement; the result is discarded.
struct CallStmt { Rhs call; };
struct ObserveStmt { Atom value; std::optional<std::string> equality; };
/// observeFun / cover(f(...)): nullopt args are elided and recorded as `?`.
struct ObserveFunStmt {
    std::string fn;
    std::vector<std::optional<Atom>> args;
    std::optional<std::string> equality;
    bool cover = false;
};
struct CoverBoundStmt { Atom bound; };

struct Stmt {
    StmtId loc = kNoStmt;
    std::variant<AssignStmt, AssignIndexStmt, IfStmt, WhileStmt, ReturnStmt, BreakStmt, SkipStmt,
                 CallStmt, ObserveStmt, ObserveFunStmt, CoverBoundStmt>
        node;
};

enum class LocKind {
    Assign,
    AssignIndex,
    LibCall,     // assignment or statement whose right side is a library call
    CallResult,  // companion of a LibCall assignment
    UserCall,    // assignment of a user function result
    While,
    If,
    Observe,
    ObserveFun,
    CoverFun,
    CoverBound,
    Other,
};

/// Static location of one statement.
struct LocationInfo {
    StmtId id = kNoStmt;
    LocKind kind = LocKind::Other;
    int line = 0;
    int column = 0;
    int end_line = 0;
    std::string function;
    std::string target;  // assigned variable, when there is one
    std::optional<std::string> equality;  // observe/observeFun custom equality
    std::string label;  // "ℓ<line>", "ℓ<line>.<k>" or "ℓ<line>.r"
    bool temporary = false;  // introduced by three-address lowering
};

bool records_in_implementation(LocKind k);
bool records_in_specification(LocKind k);

struct Function {
    std::string name;
    std::vector<std::string> params;
    Block body;
    int line = 0;
};

/// `#key value` header lines of a source file, in file order.
struct Pragmas {
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> get(std::string_view key) const;
    std::vector<std::string> get_all(std::string_view key) const;
};

struct Program {
    Role role = Role::Implementation;
    std::string name;
    std::vector<Function> functions;
    std::size_t entry = 0;
    std::vector<std::string> nondet_vars;
    std::vector<LocationInfo> locations;
    Pragmas pragmas;

    const Function& entry_function() const { return functions.at(entry); }
    const std::vector<std::string>& params() const { return entry_function().params; }
    const Function* find_function(std::string_view name) const;
    const LocationInfo& location(StmtId id) const { return locations.at(id); }

    /// Observe, observeFun and cover locations in source order.
    std::vector<StmtId> observed_locations() const;
};

/// Readable listing of the three-address form, one statement per line.
std::string pretty_print(const Program& p);

using Assignment = std::map<std::string, Value>;
using NondetAssignment = std::map<std::string, bool>;

}  // namespace tracematch
