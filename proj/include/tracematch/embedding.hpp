#pragma once

#include "tracematch/comparison.hpp"
#include "tracematch/matching.hpp"
#include "tracematch/program.hpp"
#include "tracematch/trace.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tracematch {

enum class Criterion { Partial, Full };

std::string_view criterion_name(Criterion c);

/// Specification location -> set of implementation locations. An image with
/// more than one location comes from a one-to-many group. Optional (cover)
/// locations may be absent.
using MappingFunction = std::map<LocId, std::vector<LocId>>;

/// Specification locations relaxed by cover statements.
struct CoverInfo {
    std::set<LocId> optional;  // cover(f(...)) and cover(v): may stay unmapped
    std::set<LocId> bounded;   // cover(v): count-bounded instead of ordered
};

/// Decides whether `spec` embeds into `impl` under `pi`.
///
/// Entries at ordered spec locations must appear, in order and δ-equal, at
/// image locations of `impl` (greedy left-to-right scan). Under Full the
/// number of `impl` entries at those images must equal the number of ordered
/// spec entries. A cover(v) location mapped to ℓ' instead allows at most the
/// sum of its recorded bounds of entries at ℓ'. Loop markers never take part.
bool subsequence(const Trace& spec, const Trace& impl, const ComparisonFunction& delta, Criterion c,
                 const MappingFunction& pi, const CoverInfo& covers = {});

/// Full-matching side conditions on one implementation trace: between two
/// successive iterations of the same loop some image location is recorded,
/// and every library-call record is at an image location.
bool check_observed_coverage(const MappingFunction& pi, const Trace& impl);

struct EmbeddingProblem {
    std::vector<Trace> spec_traces;  // one per input
    std::vector<Trace> impl_traces;  // same inputs, same order
    std::vector<LocId> spec_locs;    // Loc1
    std::vector<LocId> impl_locs;    // Loc2
    /// Extra candidate images from the one-to-many heuristic.
    std::vector<std::vector<LocId>> groups;
    CoverInfo covers;
    const ComparisonFunction* delta = nullptr;  // null: default equality everywhere
    Criterion criterion = Criterion::Partial;
    std::uint64_t budget = default_enumeration_budget();
};

/// Potential mapping pairs. Right vertices are candidate images: one per
/// implementation location, then one per group.
struct PotentialGraph {
    std::vector<LocId> left;
    std::vector<std::vector<LocId>> right;
    std::vector<std::vector<std::size_t>> adj;

    /// Pairs (spec, impl) of single-location edges.
    std::set<std::pair<LocId, LocId>> singleton_edges() const;
    std::size_t edge_count() const;
};

PotentialGraph build_potential_graph(const EmbeddingProblem& p);

struct EmbeddingResult {
    bool found = false;
    std::optional<MappingFunction> witness;
    std::uint64_t matchings_tried = 0;
    PotentialGraph graph;
    /// Spec locations without any candidate (and not optional).
    std::vector<LocId> unmatched_spec_locs;
};

/// Builds the potential graph, enumerates matchings that cover every spec
/// location (optional ones may stay unmapped) and returns the first one that
/// verifies on every input, including the coverage conditions under Full.
EmbeddingResult embed(const EmbeddingProblem& p);

/// Groups of locations that assign the same variable in different branches
/// of one if statement, following else-if chains. Each group has one
/// location per branch (the value location of the branch's last top-level
/// assignment to the variable) and at least two members.
std::vector<std::vector<StmtId>> one_to_many_candidates(const Program& impl);

}  // namespace tracematch
