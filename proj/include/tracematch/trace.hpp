#pragma once

#include "tracematch/value.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace tracematch {

/// Identifier of a (possibly context-instanced) program location.
using LocId = std::uint32_t;

enum class EntryKind {
    Value,          // assignment value, library record, or observed value
    LoopIteration,  // (loc, ⊥): a while body was entered
    CallResult,     // result of a library call, at the call's companion location
    CoverBound,     // cover(v): value holds the iteration bound
};

struct TraceEntry {
    LocId loc;
    EntryKind kind;
    Value value;

    bool operator==(const TraceEntry&) const = default;
};

struct Trace {
    std::vector<TraceEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }

    /// Keeps only entries whose location is in `locs`, preserving order.
    Trace restrict_to(const std::set<LocId>& locs) const;

    /// Locations of entries other than loop-iteration markers.
    std::set<LocId> value_locations() const;

    bool operator==(const Trace&) const = default;
};

}  // namespace tracematch
