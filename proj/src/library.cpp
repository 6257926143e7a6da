#include "tracematch/library.hpp"

#include "tracematch/errors.hpp"

#include <algorithm>

namespace tracematch {

namespace {

using K = Value::Kind;

[[noreturn]] void bad_arg(std::string_view fn, const Value& v) {
    throw RuntimeTypeError(std::string(fn) + ": unsupported argument of kind " + std::string(kind_name(v.kind())));
}

long long to_index(std::string_view fn, const Value& v) {
    const Int& i = v.as_int();
    if (i < -1'000'000'000 || i > 1'000'000'000)
        throw IndexOutOfBounds(std::string(fn) + ": index " + i.str() + " out of range");
    return i.convert_to<long long>();
}

/// Strings and char arrays as code point sequences.
std::u32string chars_of(std::string_view fn, const Value& v) {
    if (v.is(K::Str)) return v.as_str();
    if (v.is(K::Char)) return std::u32string(1, v.as_char());
    bad_arg(fn, v);
}

void check_range(std::string_view fn, long long start, long long count, std::size_t size) {
    if (start < 0 || count < 0 || static_cast<unsigned long long>(start + count) > size)
        throw IndexOutOfBounds(std::string(fn) + ": range [" + std::to_string(start) + ", " +
                               std::to_string(start + count) + ") outside length " + std::to_string(size));
}

Value split(const ValueList& a) {
    const std::u32string& s = a[0].as_str();
    std::u32string sep = chars_of("Split", a[1]);
    ValueList parts;
    if (sep.empty()) {
        parts.push_back(Value::string(s));
        return Value::array(std::move(parts));
    }
    std::size_t from = 0;
    for (;;) {
        std::size_t at = s.find(sep, from);
        if (at == std::u32string::npos) break;
        parts.push_back(Value::string(s.substr(from, at - from)));
        from = at + sep.size();
    }
    parts.push_back(Value::string(s.substr(from)));
    return Value::array(std::move(parts));
}

Value index_of(const ValueList& a, bool last) {
    std::string_view fn = last ? "LastIndexOf" : "IndexOf";
    if (a[0].is(K::Str)) {
        const std::u32string& s = a[0].as_str();
        std::u32string needle = chars_of(fn, a[1]);
        std::size_t at = last ? s.rfind(needle) : s.find(needle);
        return Value::integer(at == std::u32string::npos ? -1LL : static_cast<long long>(at));
    }
    if (a[0].is(K::Array)) {
        const ValueList& xs = a[0].as_array();
        long long found = -1;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] == a[1]) {
                found = static_cast<long long>(i);
                if (!last) break;
            }
        }
        return Value::integer(found);
    }
    bad_arg(fn, a[0]);
}

Value remove(const ValueList& a) {
    long long start = to_index("Remove", a[1]);
    std::size_t size = a[0].is(K::Str) ? a[0].as_str().size() : a[0].as_array().size();
    long long count = a.size() > 2 ? to_index("Remove", a[2]) : static_cast<long long>(size) - start;
    check_range("Remove", start, count, size);
    if (a[0].is(K::Str)) {
        std::u32string s = a[0].as_str();
        s.erase(static_cast<std::size_t>(start), static_cast<std::size_t>(count));
        return Value::string(std::move(s));
    }
    ValueList xs = a[0].as_array();
    xs.erase(xs.begin() + start, xs.begin() + start + count);
    return Value::array(std::move(xs));
}

Value substring(const ValueList& a) {
    long long start = to_index("Substring", a[1]);
    std::size_t size = a[0].is(K::Str) ? a[0].as_str().size() : a[0].as_array().size();
    long long count = a.size() > 2 ? to_index("Substring", a[2]) : static_cast<long long>(size) - start;
    check_range("Substring", start, count, size);
    if (a[0].is(K::Str))
        return Value::string(a[0].as_str().substr(static_cast<std::size_t>(start), static_cast<std::size_t>(count)));
    const ValueList& xs = a[0].as_array();
    return Value::array(ValueList(xs.begin() + start, xs.begin() + start + count));
}

Value insert(const ValueList& a) {
    long long at = to_index("Insert", a[1]);
    if (a[0].is(K::Str)) {
        std::u32string s = a[0].as_str();
        check_range("Insert", at, 0, s.size());
        s.insert(static_cast<std::size_t>(at), chars_of("Insert", a[2]));
        return Value::string(std::move(s));
    }
    ValueList xs = a[0].as_array();
    check_range("Insert", at, 0, xs.size());
    xs.insert(xs.begin() + at, a[2]);
    return Value::array(std::move(xs));
}

Value sort(const ValueList& a) {
    if (a[0].is(K::Str)) {
        std::u32string s = a[0].as_str();
        std::sort(s.begin(), s.end());
        return Value::string(std::move(s));
    }
    ValueList xs = a[0].as_array();
    std::stable_sort(xs.begin(), xs.end(), [](const Value& x, const Value& y) { return compare_ordered(x, y) < 0; });
    return Value::array(std::move(xs));
}

Value reverse(const ValueList& a) {
    if (a[0].is(K::Str)) {
        std::u32string s = a[0].as_str();
        std::reverse(s.begin(), s.end());
        return Value::string(std::move(s));
    }
    ValueList xs = a[0].as_array();
    std::reverse(xs.begin(), xs.end());
    return Value::array(std::move(xs));
}

char32_t upper(char32_t c) { return (c >= U'a' && c <= U'z') ? c - 32 : c; }
char32_t lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }

Value map_case(const Value& v, char32_t (*f)(char32_t), std::string_view fn) {
    if (v.is(K::Char)) return Value::character(f(v.as_char()));
    if (!v.is(K::Str)) bad_arg(fn, v);
    std::u32string s = v.as_str();
    for (auto& c : s) c = f(c);
    return Value::string(std::move(s));
}

std::u32string join_piece(const Value& v) {
    switch (v.kind()) {
        case K::Str: return v.as_str();
        case K::Char: return std::u32string(1, v.as_char());
        case K::Int: return utf8_decode(v.as_int().str());
        case K::Bool: return v.as_bool() ? U"True" : U"False";
        default: bad_arg("Join", v);
    }
}

Value join(const ValueList& a) {
    std::u32string sep = chars_of("Join", a[0]);
    std::u32string out;
    const ValueList& xs = a[1].as_array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += join_piece(xs[i]);
    }
    return Value::string(std::move(out));
}

ValueList elements(std::string_view fn, const Value& v) {
    if (v.is(K::Array)) return v.as_array();
    if (v.is(K::Str)) {
        ValueList out;
        for (char32_t c : v.as_str()) out.push_back(Value::character(c));
        return out;
    }
    bad_arg(fn, v);
}

Value length(const ValueList& a) {
    if (a[0].is(K::Str)) return Value::integer(static_cast<long long>(a[0].as_str().size()));
    if (a[0].is(K::Array)) return Value::integer(static_cast<long long>(a[0].as_array().size()));
    bad_arg("Length", a[0]);
}

Value count(const ValueList& a) {
    if (a.size() == 1) return length(a);
    ValueList xs = elements("Count", a[0]);
    return Value::integer(static_cast<long long>(std::count(xs.begin(), xs.end(), a[1])));
}

bool is_letter(char32_t c) {
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
    // Latin-1 supplement and Latin Extended letters, excluding × and ÷.
    return c >= 0xC0 && c <= 0x24F && c != 0xD7 && c != 0xF7;
}

}  // namespace

void LibraryRegistry::add(LibraryFunction fn) {
    std::string key = fn.name;
    fns_[key] = std::move(fn);
}

const LibraryFunction* LibraryRegistry::find(std::string_view name) const {
    auto it = fns_.find(name);
    return it == fns_.end() ? nullptr : &it->second;
}

std::vector<std::string> LibraryRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : fns_) out.push_back(k);
    return out;
}

Value LibraryRegistry::call(std::string_view name, const ValueList& args) const {
    const LibraryFunction* f = find(name);
    if (!f) throw RuntimeError("unknown library function " + std::string(name));
    if (args.size() < f->min_arity || args.size() > f->max_arity)
        throw RuntimeError(std::string(name) + ": wrong number of arguments (" + std::to_string(args.size()) + ")");
    for (const auto& a : args)
        if (a.is(K::DontCare)) return Value::dont_care();
    return f->impl(args);
}

const LibraryRegistry& LibraryRegistry::standard() {
    static const LibraryRegistry reg = [] {
        LibraryRegistry r;
        r.add({"Split", 2, 2, split, "Split(s, sep): pieces of s between occurrences of sep"});
        r.add({"IndexOf", 2, 2, [](const ValueList& a) { return index_of(a, false); },
               "IndexOf(x, v): first position of v in x, or -1"});
        r.add({"LastIndexOf", 2, 2, [](const ValueList& a) { return index_of(a, true); },
               "LastIndexOf(x, v): last position of v in x, or -1"});
        r.add({"Remove", 2, 3, remove, "Remove(x, i[, n]): x without n elements from i (default: to the end)"});
        r.add({"Substring", 2, 3, substring, "Substring(x, i[, n]): n elements of x from i (default: to the end)"});
        r.add({"Insert", 3, 3, insert, "Insert(x, i, v): x with v inserted before position i"});
        r.add({"Sort", 1, 1, sort, "Sort(x): ascending copy of a string or array"});
        r.add({"Reverse", 1, 1, reverse, "Reverse(x): reversed copy of a string or array"});
        r.add({"ToCharArray", 1, 1,
               [](const ValueList& a) { return Value::array(elements("ToCharArray", Value::string(a[0].as_str()))); },
               "ToCharArray(s): array of the characters of s"});
        r.add({"ToUpper", 1, 1, [](const ValueList& a) { return map_case(a[0], upper, "ToUpper"); },
               "ToUpper(x): ASCII upper-case of a string or character"});
        r.add({"ToLower", 1, 1, [](const ValueList& a) { return map_case(a[0], lower, "ToLower"); },
               "ToLower(x): ASCII lower-case of a string or character"});
        r.add({"Join", 2, 2, join, "Join(sep, xs): elements of xs concatenated with sep between them"});
        r.add({"Length", 1, 1, length, "Length(x): number of elements of a string or array"});
        r.add({"Count", 1, 2, count, "Count(x[, v]): number of elements, or of elements equal to v"});
        r.add({"SequenceEqual", 2, 2,
               [](const ValueList& a) {
                   return Value::boolean(elements("SequenceEqual", a[0]) == elements("SequenceEqual", a[1]));
               },
               "SequenceEqual(x, y): element-wise equality of strings or arrays"});
        r.add({"IsLetter", 1, 1, [](const ValueList& a) { return Value::boolean(is_letter(a[0].as_char())); },
               "IsLetter(c): c is a Latin letter"});
        r.add({"Ord", 1, 1, [](const ValueList& a) { return Value::integer(static_cast<long long>(a[0].as_char())); },
               "Ord(c): code point of c"});
        r.add({"Chr", 1, 1,
               [](const ValueList& a) {
                   const Int& i = a[0].as_int();
                   if (i < 0 || i > 0x10FFFF) throw RuntimeTypeError("Chr: " + i.str() + " is not a code point");
                   return Value::character(static_cast<char32_t>(i.convert_to<unsigned long>()));
               },
               "Chr(i): character with code point i"});
        return r;
    }();
    return reg;
}

}  // namespace tracematch
