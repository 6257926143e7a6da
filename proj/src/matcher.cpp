#include "tracematch/matcher.hpp"

#include "tracematch/errors.hpp"
#include "tracematch/inputs.hpp"

#include <chrono>

namespace tracematch {

std::string_view kind_name(SpecKind k) { return k == SpecKind::Efficient ? "efficient" : "inefficient"; }

std::string_view status_name(MatchStatus s) {
    switch (s) {
        case MatchStatus::Matched: return "matched";
        case MatchStatus::NotMatched: return "not-matched";
        case MatchStatus::Error: return "error";
    }
    return "?";
}

void validate_specification(const Specification& s) {
    if (s.program.role != Role::Specification) throw Error(s.name + ": program is not a specification");
    for (const auto& l : s.program.locations) {
        if (!l.equality) continue;
        auto it = s.equalities.find(*l.equality);
        if (it == s.equalities.end() || !it->second || !it->second->find_function(*l.equality))
            throw SemanticError("equality " + *l.equality + " is not defined", l.line, l.column);
        if (it->second->find_function(*l.equality)->params.size() != 2)
            throw SemanticError("equality " + *l.equality + " must take two parameters", l.line, l.column);
    }
}

std::vector<NondetAssignment> nondet_assignments(const std::vector<std::string>& vars) {
    std::vector<NondetAssignment> out;
    if (vars.size() > 20) throw Error("too many nondet variables");
    std::size_t n = vars.size();
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        NondetAssignment a;
        for (std::size_t i = 0; i < n; ++i) a[vars[i]] = (bits >> (n - 1 - i)) & 1;
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

std::vector<LocId> sorted_locations(const std::vector<Trace>& traces) {
    std::set<LocId> s;
    for (const auto& t : traces) {
        auto v = t.value_locations();
        s.insert(v.begin(), v.end());
    }
    return {s.begin(), s.end()};
}

std::vector<std::vector<LocId>> instance_groups(const Program& impl, const LocationTable& table,
                                                const std::vector<LocId>& impl_locs) {
    std::set<LocId> present(impl_locs.begin(), impl_locs.end());
    std::set<std::vector<StmtId>> contexts;
    for (LocId id = 0; id < table.size(); ++id) contexts.insert(table.context_of(id));
    std::vector<std::vector<LocId>> out;
    for (const auto& grp : one_to_many_candidates(impl)) {
        for (const auto& ctx : contexts) {
            std::vector<LocId> members;
            for (StmtId s : grp) {
                auto id = table.find(s, ctx);
                if (id && present.count(*id)) members.push_back(*id);
            }
            if (members.size() >= 2) out.push_back(std::move(members));
        }
    }
    return out;
}

std::string nondet_text(const NondetAssignment& nd) {
    std::string s;
    for (const auto& [k, v] : nd) s += (s.empty() ? "" : ",") + k + "=" + (v ? "true" : "false");
    return s.empty() ? "(none)" : s;
}

}  // namespace

MatchVerdict matches(const Specification& spec, const Program& impl, const MatchOptions& opts) {
    return matches(spec, impl, spec.inputs, opts);
}

MatchVerdict matches(const Specification& spec, const Program& impl, const std::vector<Assignment>& inputs,
                     const MatchOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    MatchVerdict v;
    v.spec_name = spec.name;
    v.criterion = opts.criterion_override.value_or(spec.criterion);
    auto finish = [&] {
        v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return v;
    };
    if (inputs.empty()) {
        v.status = MatchStatus::Error;
        v.error = "no inputs";
        return finish();
    }
    if (impl.role != Role::Implementation) {
        v.status = MatchStatus::Error;
        v.error = "the program to grade is not an implementation";
        return finish();
    }

    LocationTable impl_table;
    std::vector<Trace> impl_traces;
    for (const auto& in : inputs) {
        try {
            impl_traces.push_back(execute_implementation(impl, in, impl_table, opts.exec));
        } catch (const Error& e) {
            v.status = MatchStatus::Error;
            v.error = "implementation failed on " + format_input_assignment(in) + ": " + e.what();
            return finish();
        }
    }
    std::vector<LocId> impl_locs = sorted_locations(impl_traces);
    std::vector<std::vector<LocId>> groups;
    if (opts.one_to_many) groups = instance_groups(impl, impl_table, impl_locs);

    std::vector<NondetAssignment> nds;
    if (opts.fixed_nondet)
        nds.push_back(*opts.fixed_nondet);
    else
        nds = nondet_assignments(spec.program.nondet_vars);

    bool budget_hit = false;
    for (const auto& nd : nds) {
        LocationTable spec_table;
        EmbeddingProblem prob;
        prob.impl_traces = impl_traces;
        prob.impl_locs = impl_locs;
        prob.groups = groups;
        prob.criterion = v.criterion;
        prob.budget = opts.enumeration_budget;
        for (const auto& in : inputs) {
            try {
                prob.spec_traces.push_back(execute_specification(spec.program, in, nd, spec_table, opts.exec));
            } catch (const Error& e) {
                v.status = MatchStatus::Error;
                v.error = "specification failed on " + format_input_assignment(in) + " with " + nondet_text(nd) +
                          ": " + e.what();
                return finish();
            }
        }
        prob.spec_locs = sorted_locations(prob.spec_traces);

        ComparisonFunction delta;
        for (LocId l : prob.spec_locs) {
            const LocationInfo& info = spec.program.location(spec_table.stmt_of(l));
            if (info.kind == LocKind::CoverFun || info.kind == LocKind::CoverBound) prob.covers.optional.insert(l);
            if (info.kind == LocKind::CoverBound) prob.covers.bounded.insert(l);
            if (info.equality) {
                auto it = spec.equalities.find(*info.equality);
                if (it == spec.equalities.end()) {
                    v.status = MatchStatus::Error;
                    v.error = "equality " + *info.equality + " is not defined";
                    return finish();
                }
                std::shared_ptr<const Program> fns = it->second;
                std::string name = *info.equality;
                std::uint64_t budget = opts.exec.step_budget;
                delta.set(l, name, [fns, name, budget](const Value& x, const Value& y) {
                    return eval_equality_fn(*fns, name, x, y, budget);
                });
            }
        }
        prob.delta = &delta;

        NondetAttempt attempt;
        attempt.nondet = nd;
        EmbeddingResult res;
        try {
            res = embed(prob);
        } catch (const EnumerationBudgetExceeded&) {
            attempt.budget_exceeded = true;
            attempt.matchings_tried = opts.enumeration_budget;
            budget_hit = true;
            res.graph = build_potential_graph(prob);
        } catch (const CustomEqualityError& e) {
            v.status = MatchStatus::Error;
            v.error = std::string("custom equality failed: ") + e.what();
            return finish();
        }
        if (!attempt.budget_exceeded) attempt.matchings_tried = res.matchings_tried;
        attempt.found = res.found;
        for (std::size_t i = 0; i < res.graph.left.size(); ++i) {
            auto& list = attempt.candidates[spec_table.label(spec.program, res.graph.left[i])];
            for (std::size_t r : res.graph.adj[i]) {
                std::string lab;
                for (LocId m : res.graph.right[r]) lab += (lab.empty() ? "" : "+") + impl_table.label(impl, m);
                list.push_back(lab);
            }
        }
        v.attempts.push_back(std::move(attempt));
        if (res.found) {
            v.status = MatchStatus::Matched;
            v.nondet = nd;
            v.witness = *res.witness;
            for (const auto& [l, img] : v.witness) {
                WitnessPair wp;
                wp.spec_loc = spec_table.label(spec.program, l);
                for (LocId m : img) wp.impl_locs.push_back(impl_table.label(impl, m));
                v.witness_labels.push_back(std::move(wp));
            }
            return finish();
        }
    }
    if (budget_hit) {
        v.status = MatchStatus::Error;
        v.error = "enumeration budget of " + std::to_string(opts.enumeration_budget) + " matchings exceeded";
    } else {
        v.status = MatchStatus::NotMatched;
    }
    return finish();
}

GradeReport grade(const Program& impl, const std::vector<Specification>& registry, const MatchOptions& opts) {
    GradeReport r;
    r.impl_name = impl.name;
    for (const auto& spec : registry) {
        MatchVerdict v;
        try {
            v = matches(spec, impl, opts);
        } catch (const Error& e) {
            v.spec_name = spec.name;
            v.criterion = spec.criterion;
            v.status = MatchStatus::Error;
            v.error = e.what();
        }
        if (v.matched()) {
            r.matched.push_back(spec.name);
            r.feedback.push_back(spec.feedback);
        }
        if (v.status == MatchStatus::Error) r.any_error = true;
        r.verdicts.push_back(std::move(v));
    }
    r.unmatched = r.matched.empty();
    return r;
}

std::optional<std::string> check_functional(const Program& impl, const Program& reference,
                                            const std::vector<Assignment>& inputs, const ExecOptions& opts) {
    for (const auto& in : inputs) {
        std::optional<Value> got, want;
        try {
            LocationTable t;
            got = execute(impl, in, {}, t, opts).return_value;
        } catch (const Error& e) {
            return "implementation failed on " + format_input_assignment(in) + ": " + e.what();
        }
        try {
            LocationTable t;
            want = execute(reference, in, {}, t, opts).return_value;
        } catch (const Error& e) {
            return "reference failed on " + format_input_assignment(in) + ": " + e.what();
        }
        if (got.has_value() != want.has_value() || (got && !(*got == *want))) {
            return "on " + format_input_assignment(in) + " the implementation returns " +
                   (got ? render(*got) : "nothing") + ", the reference " + (want ? render(*want) : "nothing");
        }
    }
    return std::nullopt;
}

}  // namespace tracematch
