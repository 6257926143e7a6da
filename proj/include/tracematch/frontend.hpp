#pragma once

#include "tracematch/program.hpp"
#include "tracematch/surface.hpp"

#include <string>

namespace tracematch {

struct SourceUnit {
    Role role = Role::Implementation;
    std::string text;
    std::string name;
};

/// Parses source text into the surface tree. Pragma lines (`#key value`) are
/// collected wherever they appear.
surface::Program parse_surface(const std::string& text);

/// Lowers a surface tree to three-address form and assigns locations.
/// Temporaries are introduced left to right and named `$1`, `$2`, ...
Program normalize_three_address(const surface::Program& src, Role role, std::string name = {});

/// parse_surface followed by normalize_three_address.
Program parse(const SourceUnit& unit);

/// Turns a specification into an implementation for the self-match check:
/// observe(v) becomes a recorded copy of v at the same location, cover(v) is
/// dropped, observeFun/cover(f) become library calls with `?` for elided
/// arguments, and nondet reads become literals.
Program erase_specification(const Program& spec, const NondetAssignment& nd);

}  // namespace tracematch
