#pragma once

#include "tracematch/trace.hpp"
#include "tracematch/value.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace tracematch {

using EqualityFn = std::function<bool(const Value&, const Value&)>;

/// Per-location equality relation of a specification. Locations without an
/// entry use the default equality.
class ComparisonFunction {
public:
    void set(LocId loc, std::string name, EqualityFn fn);

    /// Name of the custom relation at `loc`, or nullopt for the default.
    std::optional<std::string> name_at(LocId loc) const;

    bool is_default_everywhere() const { return custom_.empty(); }

    bool equal(LocId loc, const Value& spec_value, const Value& impl_value) const;

private:
    struct Entry {
        std::string name;
        EqualityFn fn;
    };
    std::map<LocId, Entry> custom_;
};

bool values_equal(const ComparisonFunction& delta, LocId loc, const Value& x, const Value& y);

}  // namespace tracematch
