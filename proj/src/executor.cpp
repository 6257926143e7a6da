#include "tracematch/errors.hpp"
#include "tracematch/runtime.hpp"

#include <cstdlib>
#include <sstream>

namespace tracematch {

LocId LocationTable::intern(StmtId stmt, const std::vector<StmtId>& context) {
    auto key = std::make_pair(stmt, context);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    auto id = static_cast<LocId>(entries_.size());
    entries_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<LocId> LocationTable::find(StmtId stmt, const std::vector<StmtId>& context) const {
    auto it = index_.find(std::make_pair(stmt, context));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string LocationTable::label(const Program& p, LocId id) const {
    const auto& [stmt, ctx] = entries_.at(id);
    std::string s = p.location(stmt).label;
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) s += "@" + p.location(*it).label;
    return s;
}

std::uint64_t default_step_budget() {
    if (const char* env = std::getenv("TRACEMATCH_STEP_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 10'000'000ULL;
}

namespace {

using K = Value::Kind;

enum class Flow { Normal, Break, Return };

enum class Mode { Implementation, Specification, Silent };

struct Frame {
    const Function* fn;
    std::vector<StmtId> context;
    std::map<std::string, Value> vars;
};

Value apply_unary(UnOp op, const Value& v) {
    switch (op) {
        case UnOp::Not: return Value::boolean(!v.as_bool());
        case UnOp::Neg: return Value::integer(Int(-v.as_int()));
        case UnOp::Len:
            if (v.is(K::Str)) return Value::integer(static_cast<long long>(v.as_str().size()));
            if (v.is(K::Array)) return Value::integer(static_cast<long long>(v.as_array().size()));
            throw RuntimeTypeError("|x| needs a string or array, got " + std::string(kind_name(v.kind())));
        case UnOp::ToInt:
            if (v.is(K::Char)) return Value::integer(static_cast<long long>(v.as_char()));
            if (v.is(K::Int)) return v;
            throw RuntimeTypeError("(int) needs a char or int, got " + std::string(kind_name(v.kind())));
        case UnOp::ToChar: {
            if (v.is(K::Char)) return v;
            const Int& i = v.as_int();
            if (i < 0 || i > 0x10FFFF) throw RuntimeTypeError("(char) of " + i.str() + " is not a code point");
            return Value::character(static_cast<char32_t>(i.convert_to<unsigned long>()));
        }
        case UnOp::TypeOf: return Value::string_utf8(kind_name(v.kind()));
    }
    throw RuntimeError("bad unary operator");
}

bool is_text(const Value& v) { return v.is(K::Str) || v.is(K::Char); }

std::u32string text_of(const Value& v) {
    return v.is(K::Str) ? v.as_str() : std::u32string(1, v.as_char());
}

Value apply_binary(BinOp op, const Value& x, const Value& y) {
    switch (op) {
        case BinOp::Add:
            if (x.is(K::Int) && y.is(K::Int)) return Value::integer(Int(x.as_int() + y.as_int()));
            if (is_text(x) && is_text(y) && (x.is(K::Str) || y.is(K::Str)))
                return Value::string(text_of(x) + text_of(y));
            if (x.is(K::Array) && y.is(K::Array)) {
                ValueList xs = x.as_array();
                xs.insert(xs.end(), y.as_array().begin(), y.as_array().end());
                return Value::array(std::move(xs));
            }
            throw RuntimeTypeError("cannot add " + std::string(kind_name(x.kind())) + " and " +
                                   std::string(kind_name(y.kind())));
        case BinOp::Sub: return Value::integer(Int(x.as_int() - y.as_int()));
        case BinOp::Mul: return Value::integer(Int(x.as_int() * y.as_int()));
        case BinOp::Div:
        case BinOp::Mod: {
            const Int& a = x.as_int();
            const Int& b = y.as_int();
            if (b == 0) throw RuntimeError("division by zero");
            return Value::integer(op == BinOp::Div ? Int(a / b) : Int(a % b));
        }
        case BinOp::Eq: return Value::boolean(x == y);
        case BinOp::Ne: return Value::boolean(!(x == y));
        case BinOp::Lt: return Value::boolean(compare_ordered(x, y) < 0);
        case BinOp::Le: return Value::boolean(compare_ordered(x, y) <= 0);
        case BinOp::Gt: return Value::boolean(compare_ordered(x, y) > 0);
        case BinOp::Ge: return Value::boolean(compare_ordered(x, y) >= 0);
        case BinOp::Alloc: {
            const Int& n = x.as_int();
            if (n < 0 || n > 100'000'000) throw RuntimeError("alloc size " + n.str() + " out of range");
            return Value::array(ValueList(n.convert_to<std::size_t>(), y));
        }
    }
    throw RuntimeError("bad binary operator");
}

std::size_t checked_index(const Value& idx, std::size_t size) {
    const Int& i = idx.as_int();
    if (i < 0 || i >= size)
        throw IndexOutOfBounds("index " + i.str() + " outside length " + std::to_string(size));
    return i.convert_to<std::size_t>();
}

class Executor {
public:
    Executor(const Program& p, LocationTable* locs, const ExecOptions& opts, Mode mode)
        : p_(p), locs_(locs), lib_(opts.library ? *opts.library : LibraryRegistry::standard()), opts_(opts),
          mode_(mode), budget_(opts.step_budget) {}

    ExecResult run_entry(const Assignment& inputs, const NondetAssignment& nd) {
        const Function& f = p_.entry_function();
        for (const auto& v : p_.nondet_vars) {
            auto it = nd.find(v);
            if (it == nd.end()) throw RuntimeError("no value for nondet variable " + v);
            globals_[v] = Value::boolean(it->second);
        }
        for (const auto& [k, _] : inputs) {
            bool known = false;
            for (const auto& param : f.params) known = known || param == k;
            if (!known) throw RuntimeError("input " + k + " is not a parameter of " + f.name);
        }
        Frame frame{&f, {}, {}};
        for (const auto& param : f.params) {
            auto it = inputs.find(param);
            if (it == inputs.end()) throw RuntimeError("missing input for parameter " + param);
            frame.vars[param] = it->second;
        }
        stack_.push_back(std::move(frame));
        if (block(f.body) == Flow::Return) result_.return_value = ret_;
        result_.final_store.insert(stack_.back().vars.begin(), stack_.back().vars.end());
        stack_.pop_back();
        return std::move(result_);
    }

    Value call_silent(std::string_view name, const ValueList& args) {
        const Function* f = p_.find_function(name);
        if (!f) throw RuntimeError("unknown function " + std::string(name));
        return invoke(*f, args, kNoStmt);
    }

private:
    // -- recording ----------------------------------------------------------
    LocId loc(StmtId s) { return locs_->intern(s, stack_.back().context); }

    void record(StmtId s, EntryKind kind, Value v) {
        result_.trace.entries.push_back(TraceEntry{loc(s), kind, std::move(v)});
    }

    bool impl() const { return mode_ == Mode::Implementation; }
    bool spec() const { return mode_ == Mode::Specification; }

    void step() {
        if (budget_ == 0) throw StepBudgetExceeded("step budget of " + std::to_string(opts_.step_budget) + " exhausted");
        --budget_;
    }

    // -- values -------------------------------------------------------------
    const Value& lookup(const std::string& name) const {
        const auto& vars = stack_.back().vars;
        auto it = vars.find(name);
        if (it != vars.end()) return it->second;
        auto g = globals_.find(name);
        if (g != globals_.end()) return g->second;
        throw RuntimeError("variable " + name + " is not defined");
    }

    Value atom(const Atom& a) const { return a.is_var() ? lookup(a.name()) : a.literal(); }

    ValueList atoms(const std::vector<Atom>& as) const {
        ValueList out;
        out.reserve(as.size());
        for (const auto& a : as) out.push_back(atom(a));
        return out;
    }

    template <class R>
    Value eval(const R& r) {
        return std::visit(
            [&](const auto& n) -> Value {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, CopyRhs>) {
                    return atom(n.a);
                } else if constexpr (std::is_same_v<T, UnaryRhs>) {
                    return apply_unary(n.op, atom(n.a));
                } else if constexpr (std::is_same_v<T, BinaryRhs>) {
                    return apply_binary(n.op, atom(n.lhs), atom(n.rhs));
                } else if constexpr (std::is_same_v<T, IndexRhs>) {
                    const Value& base = lookup(n.array);
                    Value idx = atom(n.index);
                    if (base.is(K::Str)) return Value::character(base.as_str()[checked_index(idx, base.as_str().size())]);
                    const ValueList& xs = base.as_array();
                    return xs[checked_index(idx, xs.size())];
                } else if constexpr (std::is_same_v<T, ArrayRhs>) {
                    return Value::array(atoms(n.elems));
                } else if constexpr (std::is_same_v<T, LibCallRhs>) {
                    return lib_.call(n.fn, atoms(n.args));
                } else {
                    const Function* f = p_.find_function(n.fn);
                    return invoke(*f, atoms(n.args), current_stmt_);
                }
            },
            r);
    }

    bool condition(const Cond& c) {
        Value v = eval(c);
        if (!v.is(K::Bool)) throw RuntimeTypeError("condition is " + std::string(kind_name(v.kind())) + ", not bool");
        return v.as_bool();
    }

    Value invoke(const Function& f, ValueList args, StmtId call_site) {
        if (stack_.size() >= opts_.max_call_depth)
            throw RuntimeError("call depth limit of " + std::to_string(opts_.max_call_depth) + " exceeded");
        std::vector<StmtId> ctx;
        bool recursive = false;
        for (const auto& fr : stack_) {
            if (fr.fn == &f) {
                ctx = fr.context;
                recursive = true;
                break;
            }
        }
        if (!recursive && !stack_.empty()) {
            ctx = stack_.back().context;
            if (call_site != kNoStmt) ctx.push_back(call_site);
        }
        Frame frame{&f, std::move(ctx), {}};
        for (std::size_t i = 0; i < f.params.size(); ++i) frame.vars[f.params[i]] = std::move(args[i]);
        stack_.push_back(std::move(frame));
        Flow flow = block(f.body);
        stack_.pop_back();
        Value out = flow == Flow::Return && ret_ ? *ret_ : Value::dont_care();
        ret_.reset();
        return out;
    }

    // -- statements ---------------------------------------------------------
    Flow block(const Block& b) {
        for (const auto& s : b) {
            Flow f = stmt(s);
            if (f != Flow::Normal) return f;
        }
        return Flow::Normal;
    }

    Flow stmt(const Stmt& s) {
        step();
        current_stmt_ = s.loc;
        return std::visit([&](const auto& n) { return exec(n, s); }, s.node);
    }

    Flow exec(const AssignStmt& n, const Stmt& s) {
        if (const auto* call = std::get_if<LibCallRhs>(&n.rhs)) {
            ValueList args = atoms(call->args);
            Value result = lib_.call(call->fn, args);
            if (impl()) {
                record(s.loc, EntryKind::Value, Value::record(call->fn, args));
                record(n.result_loc, EntryKind::CallResult, result);
            }
            stack_.back().vars[n.target] = std::move(result);
            return Flow::Normal;
        }
        Value v = eval(n.rhs);
        if (impl()) record(s.loc, EntryKind::Value, v);
        stack_.back().vars[n.target] = std::move(v);
        return Flow::Normal;
    }

    Flow exec(const AssignIndexStmt& n, const Stmt& s) {
        const Value& arr = lookup(n.target);
        Value idx = atom(n.index);
        ValueList xs = arr.as_array();
        xs[checked_index(idx, xs.size())] = atom(n.value);
        Value updated = Value::array(std::move(xs));
        if (impl()) record(s.loc, EntryKind::Value, updated);
        stack_.back().vars[n.target] = std::move(updated);
        return Flow::Normal;
    }

    Flow exec(const IfStmt& n, const Stmt&) {
        return block(condition(n.cond) ? n.then_block : n.else_block);
    }

    Flow exec(const WhileStmt& n, const Stmt& s) {
        for (;;) {
            Flow pf = block(n.prelude);
            if (pf == Flow::Return) return pf;
            current_stmt_ = s.loc;
            if (!condition(n.cond)) return Flow::Normal;
            step();
            if (impl()) record(s.loc, EntryKind::LoopIteration, Value::dont_care());
            Flow f = block(n.body);
            if (f == Flow::Break) return Flow::Normal;
            if (f == Flow::Return) return f;
        }
    }

    Flow exec(const ReturnStmt& n, const Stmt&) {
        ret_.reset();
        if (n.value) ret_ = atom(*n.value);
        return Flow::Return;
    }

    Flow exec(const BreakStmt&, const Stmt&) { return Flow::Break; }
    Flow exec(const SkipStmt&, const Stmt&) { return Flow::Normal; }

    Flow exec(const CallStmt& n, const Stmt& s) {
        if (const auto* call = std::get_if<LibCallRhs>(&n.call)) {
            ValueList args = atoms(call->args);
            lib_.call(call->fn, args);
            if (impl()) record(s.loc, EntryKind::Value, Value::record(call->fn, std::move(args)));
            return Flow::Normal;
        }
        eval(n.call);
        return Flow::Normal;
    }

    Flow exec(const ObserveStmt& n, const Stmt& s) {
        if (spec()) record(s.loc, EntryKind::Value, atom(n.value));
        return Flow::Normal;
    }

    Flow exec(const ObserveFunStmt& n, const Stmt& s) {
        if (!spec()) return Flow::Normal;
        ValueList args;
        for (const auto& a : n.args) args.push_back(a ? atom(*a) : Value::dont_care());
        record(s.loc, EntryKind::Value, Value::record(n.fn, std::move(args)));
        return Flow::Normal;
    }

    Flow exec(const CoverBoundStmt& n, const Stmt& s) {
        if (!spec()) return Flow::Normal;
        Value b = atom(n.bound);
        if (!b.is(K::Int) || b.as_int() < 0) throw RuntimeTypeError("cover bound must be a non-negative int");
        record(s.loc, EntryKind::CoverBound, std::move(b));
        return Flow::Normal;
    }

    const Program& p_;
    LocationTable* locs_;
    const LibraryRegistry& lib_;
    const ExecOptions& opts_;
    Mode mode_;
    std::uint64_t budget_;
    std::vector<Frame> stack_;
    std::map<std::string, Value> globals_;
    std::optional<Value> ret_;
    StmtId current_stmt_ = kNoStmt;
    ExecResult result_;
};

}  // namespace

ExecResult execute(const Program& p, const Assignment& inputs, const NondetAssignment& nd, LocationTable& locs,
                   const ExecOptions& opts) {
    Mode mode = p.role == Role::Implementation ? Mode::Implementation : Mode::Specification;
    return Executor(p, &locs, opts, mode).run_entry(inputs, nd);
}

Trace execute_implementation(const Program& p, const Assignment& inputs, LocationTable& locs,
                             const ExecOptions& opts) {
    if (p.role != Role::Implementation) throw Error("execute_implementation: program is a specification");
    return execute(p, inputs, {}, locs, opts).trace;
}

Trace execute_specification(const Program& p, const Assignment& inputs, const NondetAssignment& nd,
                            LocationTable& locs, const ExecOptions& opts) {
    if (p.role != Role::Specification) throw Error("execute_specification: program is an implementation");
    return execute(p, inputs, nd, locs, opts).trace;
}

bool eval_equality_fn(const Program& fns, std::string_view name, const Value& x, const Value& y,
                      std::uint64_t step_budget) {
    const Function* f = fns.find_function(name);
    if (!f) throw CustomEqualityError("equality function " + std::string(name) + " is not defined");
    if (f->params.size() != 2)
        throw CustomEqualityError("equality function " + std::string(name) + " must take two parameters");
    ExecOptions opts;
    opts.step_budget = step_budget;
    Value r;
    try {
        r = Executor(fns, nullptr, opts, Mode::Silent).call_silent(name, {x, y});
    } catch (const StepBudgetExceeded& e) {
        throw CustomEqualityError(std::string(name) + ": " + e.what());
    } catch (const RuntimeError&) {
        // The function is undefined on these values, e.g. an int where it expects a string.
        return false;
    }
    if (!r.is(K::Bool)) throw CustomEqualityError(std::string(name) + " returned " + std::string(kind_name(r.kind())));
    return r.as_bool();
}

std::string dump_trace(const Trace& t, const Program& p, const LocationTable& locs, bool full) {
    std::ostringstream out;
    for (const auto& e : t.entries) {
        if (!full && (e.kind == EntryKind::LoopIteration || e.kind == EntryKind::CallResult)) continue;
        out << locs.label(p, e.loc) << '\t';
        switch (e.kind) {
            case EntryKind::LoopIteration: out << "⊥"; break;
            case EntryKind::CoverBound: out << "cover(" << render(e.value) << ")"; break;
            default: out << render(e.value); break;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace tracematch
