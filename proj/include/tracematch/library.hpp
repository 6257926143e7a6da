#pragma once

#include "tracematch/value.hpp"

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tracematch {

/// A pure library function. Arity is the inclusive range [min_arity, max_arity].
struct LibraryFunction {
    std::string name;
    std::size_t min_arity = 0;
    std::size_t max_arity = 0;
    std::function<Value(const ValueList&)> impl;
    std::string summary;
};

/// Name -> function table. All shipped functions are deterministic.
class LibraryRegistry {
public:
    /// The functions documented in docs/library.md.
    static const LibraryRegistry& standard();

    void add(LibraryFunction fn);
    const LibraryFunction* find(std::string_view name) const;
    std::vector<std::string> names() const;

    /// Applies `name`. If any argument is `?` the result is `?` (only erased
    /// specifications pass don't-care arguments).
    Value call(std::string_view name, const ValueList& args) const;

private:
    std::map<std::string, LibraryFunction, std::less<>> fns_;
};

}  // namespace tracematch
