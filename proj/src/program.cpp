#include "tracematch/program.hpp"

#include <sstream>

namespace tracematch {

std::string_view role_name(Role r) {
    return r == Role::Implementation ? "implementation" : "specification";
}

std::string_view op_name(UnOp op) {
    switch (op) {
        case UnOp::Not: return "!";
        case UnOp::Neg: return "-";
        case UnOp::Len: return "len";
        case UnOp::ToInt: return "(int)";
        case UnOp::ToChar: return "(char)";
        case UnOp::TypeOf: return "typeof";
    }
    return "?";
}

std::string_view op_name(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Alloc: return "alloc";
    }
    return "?";
}

bool records_in_implementation(LocKind k) {
    switch (k) {
        case LocKind::Assign:
        case LocKind::AssignIndex:
        case LocKind::LibCall:
        case LocKind::CallResult:
        case LocKind::UserCall:
        case LocKind::While: return true;
        default: return false;
    }
}

bool records_in_specification(LocKind k) {
    switch (k) {
        case LocKind::Observe:
        case LocKind::ObserveFun:
        case LocKind::CoverFun:
        case LocKind::CoverBound: return true;
        default: return false;
    }
}

std::optional<std::string> Pragmas::get(std::string_view key) const {
    std::optional<std::string> out;
    for (const auto& [k, v] : entries)
        if (k == key) out = v;
    return out;
}

std::vector<std::string> Pragmas::get_all(std::string_view key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries)
        if (k == key) out.push_back(v);
    return out;
}

const Function* Program::find_function(std::string_view fname) const {
    for (const auto& f : functions)
        if (f.name == fname) return &f;
    return nullptr;
}

std::vector<StmtId> Program::observed_locations() const {
    std::vector<StmtId> out;
    for (const auto& l : locations)
        if (records_in_specification(l.kind)) out.push_back(l.id);
    return out;
}

namespace {

std::string atom_text(const Atom& a) { return a.is_var() ? a.name() : render(a.literal()); }

std::string args_text(const std::vector<Atom>& args) {
    std::string s;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ", ";
        s += atom_text(args[i]);
    }
    return s;
}

template <class R>
std::string expr_text(const R& rhs) {
    return std::visit(
        [](const auto& r) -> std::string {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, CopyRhs>) {
                return atom_text(r.a);
            } else if constexpr (std::is_same_v<T, UnaryRhs>) {
                if (r.op == UnOp::Len) return "|" + atom_text(r.a) + "|";
                if (r.op == UnOp::TypeOf) return "typeof(" + atom_text(r.a) + ")";
                return std::string(op_name(r.op)) + atom_text(r.a);
            } else if constexpr (std::is_same_v<T, BinaryRhs>) {
                if (r.op == BinOp::Alloc) return "alloc(" + atom_text(r.lhs) + ", " + atom_text(r.rhs) + ")";
                return atom_text(r.lhs) + " " + std::string(op_name(r.op)) + " " + atom_text(r.rhs);
            } else if constexpr (std::is_same_v<T, IndexRhs>) {
                return r.array + "[" + atom_text(r.index) + "]";
            } else if constexpr (std::is_same_v<T, ArrayRhs>) {
                return "[" + args_text(r.elems) + "]";
            } else {
                return r.fn + "(" + args_text(r.args) + ")";
            }
        },
        rhs);
}

class Printer {
public:
    explicit Printer(const Program& p) : p_(p) {}

    std::string run() {
        if (!p_.nondet_vars.empty()) {
            out_ << "nondet ";
            for (std::size_t i = 0; i < p_.nondet_vars.size(); ++i)
                out_ << (i ? ", " : "") << p_.nondet_vars[i];
            out_ << ";\n";
        }
        for (const auto& f : p_.functions) {
            out_ << "fun " << f.name << "(";
            for (std::size_t i = 0; i < f.params.size(); ++i) out_ << (i ? ", " : "") << f.params[i];
            out_ << ") {\n";
            block(f.body, 1);
            out_ << "}\n";
        }
        return out_.str();
    }

private:
    void line(const Stmt& s, int depth, const std::string& text) {
        std::string label = s.loc == kNoStmt ? "" : p_.location(s.loc).label;
        out_ << label;
        for (std::size_t k = label.size(); k < 10; ++k) out_ << ' ';
        out_ << std::string(static_cast<std::size_t>(depth) * 2, ' ') << text << "\n";
    }

    void block(const Block& b, int depth) {
        for (const auto& s : b) stmt(s, depth);
    }

    void stmt(const Stmt& s, int depth) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AssignStmt>) {
                    line(s, depth, n.target + " := " + expr_text(n.rhs));
                } else if constexpr (std::is_same_v<T, AssignIndexStmt>) {
                    line(s, depth, n.target + "[" + atom_text(n.index) + "] := " + atom_text(n.value));
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    line(s, depth, "if (" + expr_text(n.cond) + ") {");
                    block(n.then_block, depth + 1);
                    if (!n.else_block.empty()) {
                        line(Stmt{}, depth, "} else {");
                        block(n.else_block, depth + 1);
                    }
                    line(Stmt{}, depth, "}");
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    block(n.prelude, depth);
                    line(s, depth, "while (" + expr_text(n.cond) + ") {");
                    block(n.body, depth + 1);
                    if (!n.prelude.empty()) block(n.prelude, depth + 1);
                    line(Stmt{}, depth, "}");
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    line(s, depth, n.value ? "return " + atom_text(*n.value) : std::string("return"));
                } else if constexpr (std::is_same_v<T, BreakStmt>) {
                    line(s, depth, "break");
                } else if constexpr (std::is_same_v<T, SkipStmt>) {
                    line(s, depth, "skip");
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    line(s, depth, expr_text(n.call));
                } else if constexpr (std::is_same_v<T, ObserveStmt>) {
                    line(s, depth, "observe(" + atom_text(n.value) + (n.equality ? ", " + *n.equality : "") + ")");
                } else if constexpr (std::is_same_v<T, ObserveFunStmt>) {
                    std::string args;
                    for (std::size_t i = 0; i < n.args.size(); ++i) {
                        if (i) args += ", ";
                        args += n.args[i] ? atom_text(*n.args[i]) : "_";
                    }
                    std::string call = n.fn + "(" + args + ")";
                    if (n.cover)
                        line(s, depth, "cover(" + call + ")");
                    else
                        line(s, depth, "observeFun(" + call + (n.equality ? ", " + *n.equality : "") + ")");
                } else if constexpr (std::is_same_v<T, CoverBoundStmt>) {
                    line(s, depth, "cover(" + atom_text(n.bound) + ")");
                }
            },
            s.node);
    }

    const Program& p_;
    std::ostringstream out_;
};

}  // namespace

std::string pretty_print(const Program& p) { return Printer(p).run(); }

}  // namespace tracematch
