#include "tracematch/comparison.hpp"

namespace tracematch {

void ComparisonFunction::set(LocId loc, std::string name, EqualityFn fn) {
    custom_[loc] = Entry{std::move(name), std::move(fn)};
}

std::optional<std::string> ComparisonFunction::name_at(LocId loc) const {
    auto it = custom_.find(loc);
    if (it == custom_.end()) return std::nullopt;
    return it->second.name;
}

bool ComparisonFunction::equal(LocId loc, const Value& spec_value, const Value& impl_value) const {
    auto it = custom_.find(loc);
    if (it == custom_.end()) return values_equal_default(spec_value, impl_value);
    return it->second.fn(spec_value, impl_value);
}

bool values_equal(const ComparisonFunction& delta, LocId loc, const Value& x, const Value& y) {
    return delta.equal(loc, x, y);
}

}  // namespace tracematch
