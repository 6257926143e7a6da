#include "tracematch/value.hpp"

#include "tracematch/errors.hpp"

#include <sstream>

namespace tracematch {

Value::Value() : storage_(DontCare{}) {}

Value Value::integer(Int v) { return Value(Storage(std::in_place_index<0>, std::move(v))); }
Value Value::boolean(bool v) { return Value(Storage(std::in_place_index<1>, v)); }
Value Value::character(char32_t c) { return Value(Storage(std::in_place_index<2>, c)); }
Value Value::string(std::u32string s) { return Value(Storage(std::in_place_index<3>, std::move(s))); }
Value Value::string_utf8(std::string_view s) { return string(utf8_decode(s)); }

Value Value::array(ValueList elems) {
    return Value(Storage(std::in_place_index<4>,
                         std::make_shared<const ValueList>(std::move(elems))));
}

Value Value::dont_care() { return Value(); }

Value Value::record(std::string name, ValueList args) {
    return Value(Storage(std::in_place_index<6>,
                         std::make_shared<const LibRecord>(LibRecord{std::move(name), std::move(args)})));
}

Value::Kind Value::kind() const { return static_cast<Kind>(storage_.index()); }

namespace {

[[noreturn]] void wrong_kind(Value::Kind want, Value::Kind got) {
    throw RuntimeTypeError("expected " + std::string(kind_name(want)) + ", got " +
                           std::string(kind_name(got)));
}

}  // namespace

const Int& Value::as_int() const {
    if (kind() != Kind::Int) wrong_kind(Kind::Int, kind());
    return std::get<0>(storage_);
}

bool Value::as_bool() const {
    if (kind() != Kind::Bool) wrong_kind(Kind::Bool, kind());
    return std::get<1>(storage_);
}

char32_t Value::as_char() const {
    if (kind() != Kind::Char) wrong_kind(Kind::Char, kind());
    return std::get<2>(storage_);
}

const std::u32string& Value::as_str() const {
    if (kind() != Kind::Str) wrong_kind(Kind::Str, kind());
    return std::get<3>(storage_);
}

const ValueList& Value::as_array() const {
    if (kind() != Kind::Array) wrong_kind(Kind::Array, kind());
    return *std::get<4>(storage_);
}

const LibRecord& Value::as_record() const {
    if (kind() != Kind::Record) wrong_kind(Kind::Record, kind());
    return *std::get<6>(storage_);
}

bool Value::operator==(const Value& other) const {
    if (kind() != other.kind()) return false;
    switch (kind()) {
        case Kind::Int: return as_int() == other.as_int();
        case Kind::Bool: return as_bool() == other.as_bool();
        case Kind::Char: return as_char() == other.as_char();
        case Kind::Str: return as_str() == other.as_str();
        case Kind::Array: {
            const auto& a = std::get<4>(storage_);
            const auto& b = std::get<4>(other.storage_);
            return a == b || *a == *b;
        }
        case Kind::DontCare: return true;
        case Kind::Record: {
            const auto& a = as_record();
            const auto& b = other.as_record();
            return a.name == b.name && a.args == b.args;
        }
    }
    return false;
}

std::string_view kind_name(Value::Kind k) {
    switch (k) {
        case Value::Kind::Int: return "int";
        case Value::Kind::Bool: return "bool";
        case Value::Kind::Char: return "char";
        case Value::Kind::Str: return "str";
        case Value::Kind::Array: return "array";
        case Value::Kind::DontCare: return "?";
        case Value::Kind::Record: return "record";
    }
    return "unknown";
}

bool values_equal_default(const Value& x, const Value& y) {
    using K = Value::Kind;
    if (x.is(K::DontCare) || y.is(K::DontCare)) return true;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
        case K::Array: {
            const auto& a = x.as_array();
            const auto& b = y.as_array();
            if (&a == &b) return true;
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!values_equal_default(a[i], b[i])) return false;
            return true;
        }
        case K::Record: {
            const auto& a = x.as_record();
            const auto& b = y.as_record();
            if (a.name != b.name || a.args.size() != b.args.size()) return false;
            for (std::size_t i = 0; i < a.args.size(); ++i)
                if (!values_equal_default(a.args[i], b.args[i])) return false;
            return true;
        }
        default: return x == y;
    }
}

std::strong_ordering compare_ordered(const Value& x, const Value& y) {
    using K = Value::Kind;
    if (x.kind() != y.kind())
        throw RuntimeTypeError("cannot order " + std::string(kind_name(x.kind())) + " against " +
                               std::string(kind_name(y.kind())));
    switch (x.kind()) {
        case K::Int: {
            int c = x.as_int().compare(y.as_int());
            return c < 0 ? std::strong_ordering::less
                         : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        case K::Bool: return x.as_bool() <=> y.as_bool();
        case K::Char: return x.as_char() <=> y.as_char();
        case K::Str: {
            int c = x.as_str().compare(y.as_str());
            return c < 0 ? std::strong_ordering::less
                         : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        default:
            throw RuntimeTypeError("values of kind " + std::string(kind_name(x.kind())) +
                                   " are not ordered");
    }
}

namespace {

void render_escaped(std::ostringstream& out, char32_t c, char32_t quote) {
    switch (c) {
        case U'\\': out << "\\\\"; return;
        case U'\n': out << "\\n"; return;
        case U'\t': out << "\\t"; return;
        case U'\r': out << "\\r"; return;
        case U'\0': out << "\\0"; return;
        default: break;
    }
    if (c == quote) {
        out << '\\' << static_cast<char>(c);
    } else if (c < 0x20 || c == 0x7f) {
        out << "\\u{" << std::hex << static_cast<std::uint32_t>(c) << std::dec << "}";
    } else {
        out << utf8_encode(c);
    }
}

void render_into(std::ostringstream& out, const Value& v) {
    using K = Value::Kind;
    switch (v.kind()) {
        case K::Int: out << v.as_int().str(); break;
        case K::Bool: out << (v.as_bool() ? "true" : "false"); break;
        case K::Char:
            out << '\'';
            render_escaped(out, v.as_char(), U'\'');
            out << '\'';
            break;
        case K::Str:
            out << '"';
            for (char32_t c : v.as_str()) render_escaped(out, c, U'"');
            out << '"';
            break;
        case K::Array: {
            out << '[';
            bool first = true;
            for (const auto& e : v.as_array()) {
                if (!first) out << ',';
                first = false;
                render_into(out, e);
            }
            out << ']';
            break;
        }
        case K::DontCare: out << '?'; break;
        case K::Record: {
            const auto& r = v.as_record();
            out << r.name << '(';
            for (std::size_t i = 0; i < r.args.size(); ++i) {
                if (i) out << ',';
                render_into(out, r.args[i]);
            }
            out << ')';
            break;
        }
    }
}

}  // namespace

std::string render(const Value& v) {
    std::ostringstream out;
    render_into(out, v);
    return out.str();
}

std::u32string utf8_decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto b = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        std::size_t len = 1;
        if (b < 0x80) {
            cp = b;
        } else if ((b >> 5) == 0x6) {
            cp = b & 0x1f;
            len = 2;
        } else if ((b >> 4) == 0xe) {
            cp = b & 0x0f;
            len = 3;
        } else if ((b >> 3) == 0x1e) {
            cp = b & 0x07;
            len = 4;
        } else {
            throw Error("invalid UTF-8 lead byte");
        }
        if (i + len > s.size()) throw Error("truncated UTF-8 sequence");
        for (std::size_t k = 1; k < len; ++k) {
            auto c = static_cast<unsigned char>(s[i + k]);
            if ((c >> 6) != 0x2) throw Error("invalid UTF-8 continuation byte");
            cp = (cp << 6) | (c & 0x3f);
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(char32_t c) {
    std::string out;
    auto cp = static_cast<std::uint32_t>(c);
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
    return out;
}

std::string utf8_encode(std::u32string_view s) {
    std::string out;
    for (char32_t c : s) out += utf8_encode(c);
    return out;
}

}  // namespace tracematch
