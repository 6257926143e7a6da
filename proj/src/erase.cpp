#include "tracematch/errors.hpp"
#include "tracematch/frontend.hpp"

namespace tracematch {

namespace {

class Eraser {
public:
    Eraser(Program& p, const NondetAssignment& nd) : p_(p), nd_(nd) {}

    void run() {
        for (const auto& v : p_.nondet_vars)
            if (!nd_.count(v)) throw Error("no value for nondet variable " + v);
        for (auto& f : p_.functions) block(f.body);
        p_.role = Role::Implementation;
        p_.nondet_vars.clear();
    }

private:
    void atom(Atom& a) const {
        if (!a.is_var()) return;
        auto it = nd_.find(a.name());
        if (it != nd_.end()) a = Atom::lit(Value::boolean(it->second));
    }

    template <class R>
    void expr(R& r) const {
        std::visit(
            [&](auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, CopyRhs> || std::is_same_v<T, UnaryRhs>) {
                    atom(n.a);
                } else if constexpr (std::is_same_v<T, BinaryRhs>) {
                    atom(n.lhs);
                    atom(n.rhs);
                } else if constexpr (std::is_same_v<T, IndexRhs>) {
                    atom(n.index);
                } else if constexpr (std::is_same_v<T, ArrayRhs>) {
                    for (auto& a : n.elems) atom(a);
                } else {
                    for (auto& a : n.args) atom(a);
                }
            },
            r);
    }

    StmtId add_location(const LocationInfo& like, LocKind kind, std::string target, std::string label) {
        LocationInfo info = like;
        info.id = static_cast<StmtId>(p_.locations.size());
        info.kind = kind;
        info.target = std::move(target);
        info.label = std::move(label);
        info.equality.reset();
        info.temporary = true;
        p_.locations.push_back(std::move(info));
        return p_.locations.back().id;
    }

    void block(Block& b) {
        Block out;
        for (auto& s : b) {
            if (std::holds_alternative<CoverBoundStmt>(s.node)) {
                p_.locations[s.loc].kind = LocKind::Other;
                continue;
            }
            // observe(v) keeps its location as a recorded copy of v.
            if (auto* o = std::get_if<ObserveStmt>(&s.node)) {
                LocationInfo& info = p_.locations[s.loc];
                std::string target = "$obs" + std::to_string(s.loc);
                info.kind = LocKind::Assign;
                info.target = target;
                info.equality.reset();
                info.temporary = true;
                atom(o->value);
                s.node = AssignStmt{target, CopyRhs{o->value}, kNoStmt};
                out.push_back(std::move(s));
                continue;
            }
            if (auto* o = std::get_if<ObserveFunStmt>(&s.node)) {
                LocationInfo& info = p_.locations[s.loc];
                std::string target = "$obs" + std::to_string(s.loc);
                info.kind = LocKind::LibCall;
                info.target = target;
                info.equality.reset();
                LibCallRhs call{o->fn, {}};
                for (auto& a : o->args) {
                    if (a) {
                        atom(*a);
                        call.args.push_back(*a);
                    } else {
                        call.args.push_back(Atom::lit(Value::dont_care()));
                    }
                }
                StmtId result = add_location(info, LocKind::CallResult, target, info.label + ".r");
                s.node = AssignStmt{target, std::move(call), result};
                out.push_back(std::move(s));
                continue;
            }
            std::visit(
                [&](auto& n) {
                    using T = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<T, AssignStmt>) {
                        expr(n.rhs);
                    } else if constexpr (std::is_same_v<T, AssignIndexStmt>) {
                        atom(n.index);
                        atom(n.value);
                    } else if constexpr (std::is_same_v<T, IfStmt>) {
                        expr(n.cond);
                        block(n.then_block);
                        block(n.else_block);
                    } else if constexpr (std::is_same_v<T, WhileStmt>) {
                        block(n.prelude);
                        expr(n.cond);
                        block(n.body);
                    } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                        if (n.value) atom(*n.value);
                    } else if constexpr (std::is_same_v<T, CallStmt>) {
                        expr(n.call);
                    }
                },
                s.node);
            out.push_back(std::move(s));
        }
        b = std::move(out);
    }

    Program& p_;
    const NondetAssignment& nd_;
};

}  // namespace

Program erase_specification(const Program& spec, const NondetAssignment& nd) {
    Program p = spec;
    Eraser(p, nd).run();
    return p;
}

}  // namespace tracematch
