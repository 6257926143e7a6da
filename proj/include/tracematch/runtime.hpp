#pragma once

#include "tracematch/library.hpp"
#include "tracematch/program.hpp"
#include "tracematch/trace.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tracematch {

/// Interns (statement, call-site chain) pairs as trace locations. Statements of
/// a user function get one location per call-site chain, so two calls of the
/// same helper from different places are different locations. A recursive call
/// reuses the chain of the outermost active frame of that function.
/// Share one table across all runs of a program so ids agree between inputs.
class LocationTable {
public:
    LocId intern(StmtId stmt, const std::vector<StmtId>& context);

    StmtId stmt_of(LocId id) const { return entries_.at(id).first; }
    const std::vector<StmtId>& context_of(LocId id) const { return entries_.at(id).second; }
    std::size_t size() const { return entries_.size(); }

    /// "ℓ14" for the entry function, "ℓ14@ℓ7" for a statement reached through
    /// the call at ℓ7 (innermost call site first).
    std::string label(const Program& p, LocId id) const;

    /// Location of `stmt` in the entry function, if it was interned.
    std::optional<LocId> find(StmtId stmt, const std::vector<StmtId>& context = {}) const;

private:
    std::vector<std::pair<StmtId, std::vector<StmtId>>> entries_;
    std::map<std::pair<StmtId, std::vector<StmtId>>, LocId> index_;
};

/// TRACEMATCH_STEP_BUDGET if set, otherwise 10^7.
std::uint64_t default_step_budget();

struct ExecOptions {
    std::uint64_t step_budget = default_step_budget();
    const LibraryRegistry* library = nullptr;  // null: LibraryRegistry::standard()
    std::size_t max_call_depth = 2000;
};

struct ExecResult {
    Trace trace;
    Assignment final_store;  // variables of the entry function
    std::optional<Value> return_value;
};

/// Runs the entry function. Implementations record assignments, library
/// calls and loop iterations; specifications record observe, observeFun and
/// cover statements only.
ExecResult execute(const Program& p, const Assignment& inputs, const NondetAssignment& nd, LocationTable& locs,
                   const ExecOptions& opts = {});

Trace execute_implementation(const Program& p, const Assignment& inputs, LocationTable& locs,
                             const ExecOptions& opts = {});

Trace execute_specification(const Program& p, const Assignment& inputs, const NondetAssignment& nd,
                            LocationTable& locs, const ExecOptions& opts = {});

/// Calls the two-parameter function `name` of `fns` without recording.
/// Throws CustomEqualityError when the step budget runs out or the result is not a
/// boolean. Any other runtime error counts as "not equal".
bool eval_equality_fn(const Program& fns, std::string_view name, const Value& x, const Value& y,
                      std::uint64_t step_budget = default_step_budget());

/// Canonical dump, one `label<TAB>payload` line per entry. Loop markers and
/// library-call results are only listed when `full` is set.
std::string dump_trace(const Trace& t, const Program& p, const LocationTable& locs, bool full = false);

}  // namespace tracematch
