#include "tracematch/trace.hpp"

namespace tracematch {

Trace Trace::restrict_to(const std::set<LocId>& locs) const {
    Trace out;
    for (const auto& e : entries)
        if (locs.count(e.loc)) out.entries.push_back(e);
    return out;
}

std::set<LocId> Trace::value_locations() const {
    std::set<LocId> out;
    for (const auto& e : entries)
        if (e.kind != EntryKind::LoopIteration) out.insert(e.loc);
    return out;
}

}  // namespace tracematch
