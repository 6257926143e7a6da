#pragma once

#include "tracematch/embedding.hpp"
#include "tracematch/program.hpp"
#include "tracematch/runtime.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tracematch {

enum class SpecKind { Efficient, Inefficient };

/// A teacher specification: program, criterion, custom equalities, inputs
/// and the feedback shown when it matches.
struct Specification {
    std::string name;
    Program program;
    Criterion criterion = Criterion::Partial;
    std::vector<Assignment> inputs;
    std::string feedback;
    /// Equality name -> program defining a two-parameter function of that name.
    std::map<std::string, std::shared_ptr<const Program>> equalities;

    SpecKind kind() const { return criterion == Criterion::Full ? SpecKind::Efficient : SpecKind::Inefficient; }
};

std::string_view kind_name(SpecKind k);

/// Checks that every custom equality named by the program resolves.
void validate_specification(const Specification& s);

struct MatchOptions {
    ExecOptions exec;
    std::uint64_t enumeration_budget = default_enumeration_budget();
    bool one_to_many = true;
    std::optional<Criterion> criterion_override;
    /// Restricts the search to one nondet assignment.
    std::optional<NondetAssignment> fixed_nondet;
};

enum class MatchStatus { Matched, NotMatched, Error };

std::string_view status_name(MatchStatus s);

/// What one nondet assignment produced.
struct NondetAttempt {
    NondetAssignment nondet;
    bool found = false;
    bool budget_exceeded = false;
    std::uint64_t matchings_tried = 0;
    /// Spec location label -> labels of candidate images that embed alone.
    std::map<std::string, std::vector<std::string>> candidates;
};

struct WitnessPair {
    std::string spec_loc;
    std::vector<std::string> impl_locs;
};

struct MatchVerdict {
    std::string spec_name;
    Criterion criterion = Criterion::Partial;
    MatchStatus status = MatchStatus::NotMatched;
    std::optional<NondetAssignment> nondet;
    MappingFunction witness;
    std::vector<WitnessPair> witness_labels;
    std::vector<NondetAttempt> attempts;
    std::string error;
    double seconds = 0;

    bool matched() const { return status == MatchStatus::Matched; }
};

/// All assignments to `vars` in lexicographic order: false before true, the
/// first variable most significant.
std::vector<NondetAssignment> nondet_assignments(const std::vector<std::string>& vars);

/// Runs `impl` once per input, then for each nondet assignment runs `spec` on
/// the same inputs and searches for an embedding witness. Stops at the first
/// witness. Inputs default to the specification's own.
MatchVerdict matches(const Specification& spec, const Program& impl, const MatchOptions& opts = {});
MatchVerdict matches(const Specification& spec, const Program& impl, const std::vector<Assignment>& inputs,
                     const MatchOptions& opts = {});

struct GradeReport {
    std::string impl_name;
    std::vector<MatchVerdict> verdicts;
    std::vector<std::string> matched;   // spec names, registry order
    std::vector<std::string> feedback;  // feedback of matched specs
    bool unmatched = false;
    bool any_error = false;
};

/// Checks `impl` against every specification (no short circuit). Errors are
/// recorded per specification.
GradeReport grade(const Program& impl, const std::vector<Specification>& registry, const MatchOptions& opts = {});

/// Compares return values of `impl` and `reference` on `inputs`. Returns a
/// description of the first difference or failure, nullopt when they agree.
std::optional<std::string> check_functional(const Program& impl, const Program& reference,
                                            const std::vector<Assignment>& inputs, const ExecOptions& opts = {});

}  // namespace tracematch
