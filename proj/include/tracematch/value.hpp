#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tracematch {

using Int = boost::multiprecision::cpp_int;

class Value;
using ValueList = std::vector<Value>;

/// The don't-care element `?`; equal to every value under the default relation.
struct DontCare {
    bool operator==(const DontCare&) const = default;
};

/// A recorded library call: function name plus argument values.
struct LibRecord {
    std::string name;
    ValueList args;
};

/// Element of the computation domain. Immutable; arrays and records share
/// their storage, so copies are cheap and traces can hold deep snapshots.
class Value {
public:
    enum class Kind { Int, Bool, Char, Str, Array, DontCare, Record };

    Value();  // DontCare

    static Value integer(Int v);
    static Value integer(long long v) { return integer(Int(v)); }
    static Value boolean(bool v);
    static Value character(char32_t c);
    static Value string(std::u32string s);
    static Value string_utf8(std::string_view s);
    static Value array(ValueList elems);
    static Value dont_care();
    static Value record(std::string name, ValueList args);

    Kind kind() const;
    bool is(Kind k) const { return kind() == k; }

    const Int& as_int() const;
    bool as_bool() const;
    char32_t as_char() const;
    const std::u32string& as_str() const;
    const ValueList& as_array() const;
    const LibRecord& as_record() const;

    /// Strict structural equality (`?` only equals `?`).
    bool operator==(const Value& other) const;

private:
    using Storage = std::variant<Int, bool, char32_t, std::u32string,
                                 std::shared_ptr<const ValueList>, DontCare,
                                 std::shared_ptr<const LibRecord>>;
    explicit Value(Storage s) : storage_(std::move(s)) {}
    Storage storage_;
};

std::string_view kind_name(Value::Kind k);

/// Default equality relation: `?` matches anything, plain data compares
/// structurally within one kind, records need equal names and arity with
/// pairwise default-equal arguments.
bool values_equal_default(const Value& x, const Value& y);

/// Total order used by sorting library functions. Only defined between
/// values of the same orderable kind (Int, Char, Str, Bool).
std::strong_ordering compare_ordered(const Value& x, const Value& y);

/// Canonical textual rendering (used by trace dumps and reports).
std::string render(const Value& v);

std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);
std::string utf8_encode(char32_t c);

}  // namespace tracematch
