#pragma once

#include "tracematch/program.hpp"

#include <string>
#include <string_view>

namespace tracematch {

/// Parses `name=value,name=value,...`.
///
///   value := int | true | false | 'c' | "text" | [value, ...] | bare text
///
/// Bare text runs to the next top-level comma and is a string, so `s=aab`
/// binds the string "aab". Quote strings that look like numbers or booleans.
Assignment parse_input_assignment(std::string_view text);

/// Parses a single value with the grammar above.
Value parse_input_value(std::string_view text);

/// Same syntax restricted to booleans, for nondet flags.
NondetAssignment parse_nondet_assignment(std::string_view text);

/// Inverse of parse_input_assignment (always quotes strings).
std::string format_input_assignment(const Assignment& a);

}  // namespace tracematch
