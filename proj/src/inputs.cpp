#include "tracematch/inputs.hpp"

#include "tracematch/errors.hpp"

#include <cctype>

namespace tracematch {

namespace {

class InputParser {
public:
    explicit InputParser(std::string_view s) : s_(s) {}

    Assignment assignment() {
        Assignment out;
        skip();
        if (pos_ == s_.size()) return out;
        for (;;) {
            skip();
            std::size_t eq = s_.find('=', pos_);
            if (eq == std::string_view::npos) fail("expected name=value");
            std::string name(trim(s_.substr(pos_, eq - pos_)));
            if (name.empty()) fail("empty input name");
            pos_ = eq + 1;
            Value v = value(true);
            if (!out.emplace(name, std::move(v)).second) fail("input " + name + " given twice");
            skip();
            if (pos_ == s_.size()) return out;
            if (s_[pos_] != ',') fail("expected ','");
            ++pos_;
        }
    }

    Value single() {
        Value v = value(true);
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return v;
    }

private:
    static std::string_view trim(std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("input syntax, column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }

    std::u32string quoted(char q) {
        ++pos_;
        std::string raw;
        for (;;) {
            if (pos_ >= s_.size()) fail("unterminated quote");
            char c = s_[pos_++];
            if (c == q) break;
            if (c == '\\' && pos_ < s_.size()) {
                char e = s_[pos_++];
                switch (e) {
                    case 'n': raw.push_back('\n'); break;
                    case 't': raw.push_back('\t'); break;
                    case 'r': raw.push_back('\r'); break;
                    case '0': raw.push_back('\0'); break;
                    default: raw.push_back(e); break;
                }
                continue;
            }
            raw.push_back(c);
        }
        return utf8_decode(raw);
    }

    Value value(bool top) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '"') return Value::string(quoted('"'));
        if (pos_ < s_.size() && s_[pos_] == '\'') {
            auto c = quoted('\'');
            if (c.size() != 1) fail("character literal must hold one character");
            return Value::character(c[0]);
        }
        if (pos_ < s_.size() && s_[pos_] == '[') {
            ++pos_;
            ValueList xs;
            skip();
            if (pos_ < s_.size() && s_[pos_] == ']') {
                ++pos_;
                return Value::array(std::move(xs));
            }
            for (;;) {
                xs.push_back(value(false));
                skip();
                if (pos_ >= s_.size()) fail("unterminated array");
                if (s_[pos_] == ']') {
                    ++pos_;
                    return Value::array(std::move(xs));
                }
                if (s_[pos_] != ',') fail("expected ',' or ']'");
                ++pos_;
            }
        }
        std::size_t b = pos_;
        while (pos_ < s_.size() && s_[pos_] != ',' && (top || s_[pos_] != ']')) ++pos_;
        std::string_view word = trim(s_.substr(b, pos_ - b));
        if (word == "true") return Value::boolean(true);
        if (word == "false") return Value::boolean(false);
        std::string_view digits = word;
        if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
        bool numeric = !digits.empty();
        for (char c : digits) numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
        if (numeric) return Value::integer(Int(std::string(word)));
        return Value::string_utf8(word);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string quote(const Value& v) {
    if (v.is(Value::Kind::Array)) {
        std::string out = "[";
        const auto& xs = v.as_array();
        for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + quote(xs[i]);
        return out + "]";
    }
    return render(v);
}

}  // namespace

Assignment parse_input_assignment(std::string_view text) { return InputParser(text).assignment(); }

Value parse_input_value(std::string_view text) { return InputParser(text).single(); }

NondetAssignment parse_nondet_assignment(std::string_view text) {
    NondetAssignment out;
    for (const auto& [k, v] : parse_input_assignment(text)) {
        if (!v.is(Value::Kind::Bool)) throw Error("nondet value for " + k + " must be true or false");
        out[k] = v.as_bool();
    }
    return out;
}

std::string format_input_assignment(const Assignment& a) {
    std::string out;
    for (const auto& [k, v] : a) {
        if (!out.empty()) out += ",";
        out += k + "=" + quote(v);
    }
    return out;
}

}  // namespace tracematch
