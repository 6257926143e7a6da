#include "tracematch/errors.hpp"
#include "tracematch/frontend.hpp"
#include "tracematch/library.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tracematch {

namespace {

namespace S = surface;

bool labelled_individually(LocKind k) {
    switch (k) {
        case LocKind::Assign:
        case LocKind::AssignIndex:
        case LocKind::LibCall:
        case LocKind::UserCall:
        case LocKind::While:
        case LocKind::Observe:
        case LocKind::ObserveFun:
        case LocKind::CoverFun:
        case LocKind::CoverBound: return true;
        default: return false;
    }
}

class Lowerer {
public:
    Lowerer(const S::Program& src, Role role, std::string name)
        : src_(src), lib_(LibraryRegistry::standard()) {
        out_.role = role;
        out_.name = std::move(name);
        out_.pragmas = src.pragmas;
        out_.nondet_vars = src.nondet_vars;
        for (const auto& f : src.functions) {
            if (!user_fns_.emplace(f.name, f.params.size()).second)
                throw SemanticError("function " + f.name + " defined twice", f.line, f.column);
        }
        nondet_.insert(src.nondet_vars.begin(), src.nondet_vars.end());
        if (nondet_.size() != src.nondet_vars.size())
            throw SemanticError("nondet variable declared twice", src.nondet_line, 1);
        if (role == Role::Implementation && !src.nondet_vars.empty())
            throw RoleViolation("nondet variables are only allowed in specifications", src.nondet_line, 1);
    }

    Program run() {
        for (const auto& f : src_.functions) {
            fn_ = f.name;
            for (const auto& p : f.params)
                if (nondet_.count(p)) throw SemanticError("parameter " + p + " shadows a nondet variable", f.line, f.column);
            Function g;
            g.name = f.name;
            g.params = f.params;
            g.line = f.line;
            g.body = block(f.body);
            out_.functions.push_back(std::move(g));
        }
        if (auto e = src_.pragmas.get("entry")) {
            auto it = std::find_if(out_.functions.begin(), out_.functions.end(),
                                   [&](const Function& f) { return f.name == *e; });
            if (it == out_.functions.end()) throw SemanticError("entry function " + *e + " is not defined", 1, 1);
            out_.entry = static_cast<std::size_t>(it - out_.functions.begin());
        }
        assign_labels();
        return std::move(out_);
    }

private:
    // -- locations ----------------------------------------------------------
    StmtId new_loc(LocKind kind, const S::Stmt& origin, std::string target = {}, bool temporary = false) {
        LocationInfo info;
        info.id = static_cast<StmtId>(out_.locations.size());
        info.kind = kind;
        info.line = origin.line;
        info.column = origin.column;
        info.end_line = origin.end_line;
        info.function = fn_;
        info.target = std::move(target);
        info.temporary = temporary;
        out_.locations.push_back(std::move(info));
        return out_.locations.back().id;
    }

    void assign_labels() {
        std::map<int, std::vector<StmtId>> by_line;
        for (const auto& l : out_.locations)
            if (labelled_individually(l.kind)) by_line[l.line].push_back(l.id);
        for (auto& l : out_.locations) l.label = "ℓ" + std::to_string(l.line);
        for (const auto& [line, ids] : by_line) {
            if (ids.size() < 2) continue;
            for (std::size_t k = 0; k < ids.size(); ++k)
                out_.locations[ids[k]].label = "ℓ" + std::to_string(line) + "." + std::to_string(k + 1);
        }
        for (const auto& l : out_.locations) {
            if (l.kind != LocKind::LibCall) continue;
            // The companion is allocated right after its call.
            if (l.id + 1 < out_.locations.size() && out_.locations[l.id + 1].kind == LocKind::CallResult)
                out_.locations[l.id + 1].label = l.label + ".r";
        }
    }

    // -- helpers ------------------------------------------------------------
    void require_spec(const S::Stmt& s, std::string_view what) const {
        if (out_.role == Role::Implementation)
            throw RoleViolation(std::string(what) + " in implementation", s.line, s.column);
    }

    void check_target(const std::string& v, const S::Stmt& s) const {
        if (nondet_.count(v)) throw SemanticError("nondet variable " + v + " is read-only", s.line, s.column);
    }

    std::string fresh() { return "$" + std::to_string(++temps_); }

    bool is_user(const std::string& fn) const { return user_fns_.count(fn) > 0; }

    const LibraryFunction& library(const S::Expr& e, const std::string& fn) const {
        const LibraryFunction* f = lib_.find(fn);
        if (!f) throw SemanticError("unknown function " + fn, e.line, e.column);
        return *f;
    }

    void check_arity(const S::Expr& e, const S::Call& c) const {
        for (const auto& a : c.args)
            if (!a) throw SyntaxError("'_' is only allowed in observeFun and cover", e.line, e.column);
        if (is_user(c.fn)) {
            if (user_fns_.at(c.fn) != c.args.size())
                throw SemanticError(c.fn + " expects " + std::to_string(user_fns_.at(c.fn)) + " arguments", e.line,
                                    e.column);
            return;
        }
        const auto& f = library(e, c.fn);
        if (c.args.size() < f.min_arity || c.args.size() > f.max_arity)
            throw SemanticError(c.fn + ": wrong number of arguments", e.line, e.column);
    }

    /// Emits `target := rhs` with the location kind implied by the right side.
    void emit_assign(Block& out, const S::Stmt& origin, std::string target, Rhs rhs, bool temporary) {
        LocKind kind = LocKind::Assign;
        if (std::holds_alternative<LibCallRhs>(rhs)) kind = LocKind::LibCall;
        if (std::holds_alternative<UserCallRhs>(rhs)) kind = LocKind::UserCall;
        Stmt st;
        st.loc = new_loc(kind, origin, target, temporary);
        AssignStmt a{target, std::move(rhs), kNoStmt};
        if (kind == LocKind::LibCall) a.result_loc = new_loc(LocKind::CallResult, origin, target, temporary);
        st.node = std::move(a);
        out.push_back(std::move(st));
    }

    // -- expressions --------------------------------------------------------
    Atom atom(const S::ExprPtr& e, Block& out, const S::Stmt& origin) {
        if (const auto* lit = std::get_if<S::Literal>(&e->node)) return Atom::lit(lit->value);
        if (const auto* v = std::get_if<S::Var>(&e->node)) return Atom::var(v->name);
        if (const auto* a = std::get_if<S::And>(&e->node)) return short_circuit(a->lhs, a->rhs, true, out, origin);
        if (const auto* o = std::get_if<S::Or>(&e->node)) return short_circuit(o->lhs, o->rhs, false, out, origin);
        std::string t = fresh();
        Rhs r = rhs(e, out, origin);
        emit_assign(out, origin, t, std::move(r), true);
        return Atom::var(t);
    }

    /// `a && b` becomes `t := a; if (t) { t := b }`; `||` tests `!t`.
    Atom short_circuit(const S::ExprPtr& l, const S::ExprPtr& r, bool is_and, Block& out, const S::Stmt& origin) {
        std::string t = fresh();
        Rhs lr = rhs(l, out, origin);
        emit_assign(out, origin, t, std::move(lr), true);
        Block inner;
        Rhs rr = rhs(r, inner, origin);
        emit_assign(inner, origin, t, std::move(rr), true);
        Stmt st;
        st.loc = new_loc(LocKind::If, origin);
        Cond c = is_and ? Cond(CopyRhs{Atom::var(t)}) : Cond(UnaryRhs{UnOp::Not, Atom::var(t)});
        st.node = IfStmt{std::move(c), std::move(inner), {}};
        out.push_back(std::move(st));
        return Atom::var(t);
    }

    std::vector<Atom> atoms(const std::vector<S::ExprPtr>& es, Block& out, const S::Stmt& origin) {
        std::vector<Atom> r;
        for (const auto& e : es) r.push_back(atom(e, out, origin));
        return r;
    }

    Rhs rhs(const S::ExprPtr& e, Block& out, const S::Stmt& origin) {
        return std::visit(
            [&](const auto& n) -> Rhs {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, S::Literal> || std::is_same_v<T, S::Var> ||
                              std::is_same_v<T, S::And> || std::is_same_v<T, S::Or>) {
                    return CopyRhs{atom(e, out, origin)};
                } else if constexpr (std::is_same_v<T, S::Unary>) {
                    return UnaryRhs{n.op, atom(n.operand, out, origin)};
                } else if constexpr (std::is_same_v<T, S::Binary>) {
                    Atom l = atom(n.lhs, out, origin);
                    Atom r = atom(n.rhs, out, origin);
                    return BinaryRhs{n.op, std::move(l), std::move(r)};
                } else if constexpr (std::is_same_v<T, S::Index>) {
                    Atom base = atom(n.base, out, origin);
                    if (!base.is_var())
                        throw SemanticError("indexing a literal", e->line, e->column);
                    Atom idx = atom(n.index, out, origin);
                    return IndexRhs{base.name(), std::move(idx)};
                } else if constexpr (std::is_same_v<T, S::ArrayLit>) {
                    return ArrayRhs{atoms(n.elems, out, origin)};
                } else {
                    check_arity(*e, n);
                    auto args = atoms(n.args, out, origin);
                    if (is_user(n.fn)) return UserCallRhs{n.fn, std::move(args)};
                    return LibCallRhs{n.fn, std::move(args)};
                }
            },
            e->node);
    }

    Cond cond(const S::ExprPtr& e, Block& out, const S::Stmt& origin) {
        if (const auto* u = std::get_if<S::Unary>(&e->node)) return UnaryRhs{u->op, atom(u->operand, out, origin)};
        if (const auto* b = std::get_if<S::Binary>(&e->node)) {
            Atom l = atom(b->lhs, out, origin);
            Atom r = atom(b->rhs, out, origin);
            return BinaryRhs{b->op, std::move(l), std::move(r)};
        }
        return CopyRhs{atom(e, out, origin)};
    }

    // -- statements ---------------------------------------------------------
    Block block(const S::Block& b) {
        Block out;
        for (const auto& s : b) stmt(s, out);
        return out;
    }

    void stmt(const S::Stmt& s, Block& out) {
        std::visit([&](const auto& n) { lower(n, s, out); }, s.node);
    }

    void lower(const S::Assign& n, const S::Stmt& s, Block& out) {
        check_target(n.target, s);
        Rhs r = rhs(n.value, out, s);
        emit_assign(out, s, n.target, std::move(r), false);
    }

    void lower(const S::AssignIndex& n, const S::Stmt& s, Block& out) {
        check_target(n.target, s);
        Atom idx = atom(n.index, out, s);
        Atom val = atom(n.value, out, s);
        Stmt st;
        st.loc = new_loc(LocKind::AssignIndex, s, n.target);
        st.node = AssignIndexStmt{n.target, std::move(idx), std::move(val)};
        out.push_back(std::move(st));
    }

    void lower(const S::If& n, const S::Stmt& s, Block& out) {
        Cond c = cond(n.cond, out, s);
        Stmt st;
        st.loc = new_loc(LocKind::If, s);
        Block then_b = block(n.then_block);
        Block else_b = block(n.else_block);
        st.node = IfStmt{std::move(c), std::move(then_b), std::move(else_b)};
        out.push_back(std::move(st));
    }

    void lower(const S::While& n, const S::Stmt& s, Block& out) {
        Block prelude;
        Cond c = cond(n.cond, prelude, s);
        Stmt st;
        st.loc = new_loc(LocKind::While, s);
        Block body = block(n.body);
        st.node = WhileStmt{std::move(prelude), std::move(c), std::move(body)};
        out.push_back(std::move(st));
    }

    void lower(const S::Return& n, const S::Stmt& s, Block& out) {
        ReturnStmt r;
        if (n.value) r.value = atom(n.value, out, s);
        Stmt st;
        st.loc = new_loc(LocKind::Other, s);
        st.node = std::move(r);
        out.push_back(std::move(st));
    }

    void lower(const S::Break&, const S::Stmt& s, Block& out) {
        Stmt st;
        st.loc = new_loc(LocKind::Other, s);
        st.node = BreakStmt{};
        out.push_back(std::move(st));
    }

    void lower(const S::Skip&, const S::Stmt& s, Block& out) {
        Stmt st;
        st.loc = new_loc(LocKind::Other, s);
        st.node = SkipStmt{};
        out.push_back(std::move(st));
    }

    void lower(const S::ExprStmt& n, const S::Stmt& s, Block& out) {
        const auto* c = std::get_if<S::Call>(&n.call->node);
        if (!c) throw SyntaxError("expression statement must be a call", s.line, s.column);
        Rhs r = rhs(n.call, out, s);
        Stmt st;
        st.loc = new_loc(std::holds_alternative<LibCallRhs>(r) ? LocKind::LibCall : LocKind::Other, s);
        st.node = CallStmt{std::move(r)};
        out.push_back(std::move(st));
    }

    void lower(const S::Observe& n, const S::Stmt& s, Block& out) {
        require_spec(s, "observe");
        Atom a = atom(n.value, out, s);
        Stmt st;
        st.loc = new_loc(LocKind::Observe, s);
        out_.locations[st.loc].equality = n.equality;
        st.node = ObserveStmt{std::move(a), n.equality};
        out.push_back(std::move(st));
    }

    void observe_fun(const S::ExprPtr& call, std::optional<std::string> eq, bool cover, const S::Stmt& s,
                     Block& out) {
        const auto& c = std::get<S::Call>(call->node);
        if (is_user(c.fn)) throw SemanticError("observeFun expects a library function", call->line, call->column);
        const auto& f = library(*call, c.fn);
        ObserveFunStmt o;
        o.fn = c.fn;
        o.equality = eq;
        o.cover = cover;
        if (c.args.empty()) {
            o.args.resize(f.min_arity);
        } else {
            if (c.args.size() < f.min_arity || c.args.size() > f.max_arity)
                throw SemanticError(c.fn + ": wrong number of arguments", call->line, call->column);
            for (const auto& a : c.args) {
                if (a)
                    o.args.emplace_back(atom(a, out, s));
                else
                    o.args.emplace_back(std::nullopt);
            }
        }
        Stmt st;
        st.loc = new_loc(cover ? LocKind::CoverFun : LocKind::ObserveFun, s);
        out_.locations[st.loc].equality = eq;
        st.node = std::move(o);
        out.push_back(std::move(st));
    }

    void lower(const S::ObserveFun& n, const S::Stmt& s, Block& out) {
        require_spec(s, "observeFun");
        observe_fun(n.call, n.equality, false, s, out);
    }

    void lower(const S::Cover& n, const S::Stmt& s, Block& out) {
        require_spec(s, "cover");
        if (const auto* c = std::get_if<S::Call>(&n.value->node); c && !is_user(c->fn)) {
            observe_fun(n.value, std::nullopt, true, s, out);
            return;
        }
        Atom b = atom(n.value, out, s);
        Stmt st;
        st.loc = new_loc(LocKind::CoverBound, s);
        st.node = CoverBoundStmt{std::move(b)};
        out.push_back(std::move(st));
    }

    const S::Program& src_;
    const LibraryRegistry& lib_;
    Program out_;
    std::map<std::string, std::size_t> user_fns_;
    std::set<std::string> nondet_;
    std::string fn_;
    int temps_ = 0;
};

}  // namespace

Program normalize_three_address(const surface::Program& src, Role role, std::string name) {
    return Lowerer(src, role, std::move(name)).run();
}

Program parse(const SourceUnit& unit) {
    std::string name = unit.name;
    auto surf = parse_surface(unit.text);
    if (auto n = surf.pragmas.get("name"); n && !n->empty()) name = *n;
    return normalize_three_address(surf, unit.role, std::move(name));
}

}  // namespace tracematch
