#include "doctest.h"

#include "tracematch/comparison.hpp"
#include "tracematch/errors.hpp"
#include "tracematch/inputs.hpp"
#include "tracematch/library.hpp"
#include "tracematch/trace.hpp"

#include <random>

using namespace tracematch;

namespace {

Value S(const char* s) { return Value::string_utf8(s); }
Value I(long long v) { return Value::integer(v); }
Value C(char32_t c) { return Value::character(c); }
Value A(ValueList xs) { return Value::array(std::move(xs)); }
const Value Q = Value::dont_care();

Value random_value(std::mt19937& rng, int depth, bool allow_dc) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    switch (pick(depth > 0 ? 8 : 6)) {
        case 0: return I(pick(3));
        case 1: return Value::boolean(pick(2));
        case 2: return C(U'a' + pick(2));
        case 3: return Value::string(std::u32string(pick(2) + 1, U'a' + pick(2)));
        case 4: return allow_dc ? Q : I(pick(3));
        case 5: return I(pick(3));
        case 6: {
            ValueList xs;
            for (int i = pick(3); i > 0; --i) xs.push_back(random_value(rng, depth - 1, allow_dc));
            return A(std::move(xs));
        }
        default: {
            ValueList xs;
            for (int i = pick(3); i > 0; --i) xs.push_back(random_value(rng, depth - 1, allow_dc));
            return Value::record(pick(2) ? "Split" : "Sort", std::move(xs));
        }
    }
}

}  // namespace

TEST_CASE("default equality") {
    CHECK(values_equal_default(Q, I(5)));
    CHECK(values_equal_default(S("x"), Q));
    CHECK_FALSE(values_equal_default(I(1), C(U'1')));
    CHECK_FALSE(values_equal_default(S("ab"), A({C(U'a'), C(U'b')})));
    CHECK(values_equal_default(A({I(1), Q}), A({I(1), I(7)})));
    CHECK_FALSE(values_equal_default(A({I(1)}), A({I(1), I(2)})));
    CHECK(values_equal_default(Value::record("Split", {Q, Q}), Value::record("Split", {S("aab"), C(U'a')})));
    CHECK_FALSE(values_equal_default(Value::record("Split", {Q}), Value::record("Split", {S("aab"), C(U'a')})));
    CHECK_FALSE(values_equal_default(Value::record("Split", {Q, Q}), Value::record("Join", {S("a"), S("b")})));
    CHECK(values_equal_default(Value::integer(Int("123456789012345678901234567890")), Value::integer(Int("123456789012345678901234567890"))));
}

TEST_CASE("default equality is symmetric, and reflexive and structural without don't-cares") {
    std::mt19937 rng(11);
    for (int i = 0; i < 3000; ++i) {
        Value x = random_value(rng, 2, true), y = random_value(rng, 2, true);
        CHECK(values_equal_default(x, y) == values_equal_default(y, x));
        Value a = random_value(rng, 2, false), b = random_value(rng, 2, false);
        CHECK(values_equal_default(a, a));
        CHECK(values_equal_default(a, b) == (a == b));
    }
}

TEST_CASE("trace restriction keeps order and composes") {
    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
        Trace t;
        for (int k = std::uniform_int_distribution<int>(0, 15)(rng); k > 0; --k)
            t.entries.push_back({LocId(rng() % 5), EntryKind::Value, I(rng() % 3)});
        std::set<LocId> a, b, both;
        for (LocId l = 0; l < 5; ++l) {
            if (rng() % 2) a.insert(l);
            if (rng() % 2) b.insert(l);
            if (a.count(l) && b.count(l)) both.insert(l);
        }
        CHECK(t.restrict_to(a).restrict_to(a) == t.restrict_to(a));
        CHECK(t.restrict_to(a).restrict_to(b) == t.restrict_to(both));
        Trace r = t.restrict_to(a);
        std::size_t j = 0;
        for (const auto& e : t.entries)
            if (a.count(e.loc)) CHECK(r.entries[j++] == e);
        CHECK(j == r.size());
    }
}

TEST_CASE("comparison function dispatches per location") {
    ComparisonFunction d;
    d.set(3, "Loose", [](const Value&, const Value&) { return true; });
    CHECK(d.name_at(3) == std::optional<std::string>("Loose"));
    CHECK_FALSE(d.name_at(4));
    CHECK(values_equal(d, 3, I(1), I(2)));
    CHECK_FALSE(values_equal(d, 4, I(1), I(2)));
    CHECK(values_equal(d, 4, Q, I(2)));
    CHECK(ComparisonFunction{}.is_default_everywhere());
}

TEST_CASE("library functions") {
    const auto& lib = LibraryRegistry::standard();
    auto call = [&](const char* f, ValueList args) { return lib.call(f, args); };
    CHECK(call("Split", {S("aab"), C(U'a')}) == A({S(""), S(""), S("b")}));
    CHECK(call("Split", {S("baa"), C(U'a')}) == A({S("b"), S(""), S("")}));
    CHECK(call("Split", {S("xyz"), C(U'a')}) == A({S("xyz")}));
    CHECK(call("IndexOf", {S("silent"), C(U'l')}) == I(2));
    CHECK(call("IndexOf", {S("silent"), C(U'q')}) == I(-1));
    CHECK(call("LastIndexOf", {S("abca"), C(U'a')}) == I(3));
    CHECK(call("Remove", {S("silent"), I(2), I(1)}) == S("sient"));
    CHECK(call("Remove", {S("silent"), I(2)}) == S("si"));
    CHECK(call("Substring", {S("listen"), I(2)}) == S("sten"));
    CHECK(call("Substring", {S("listen"), I(0), I(3)}) == S("lis"));
    CHECK(call("Insert", {A({C(U'a'), C(U'c')}), I(1), C(U'b')}) == A({C(U'a'), C(U'b'), C(U'c')}));
    CHECK(call("Sort", {A({C(U'b'), C(U'a'), C(U'c')})}) == A({C(U'a'), C(U'b'), C(U'c')}));
    CHECK(call("Reverse", {A({I(1), I(2)})}) == A({I(2), I(1)}));
    CHECK(call("ToCharArray", {S("ab")}) == A({C(U'a'), C(U'b')}));
    CHECK(call("Join", {S(""), A({C(U'a'), C(U'b')})}) == S("ab"));
    CHECK(call("SequenceEqual", {A({I(1)}), A({I(1)})}) == Value::boolean(true));
    CHECK(call("ToUpper", {S("abZ")}) == S("ABZ"));
    CHECK(call("IsLetter", {C(U'é')}) == Value::boolean(true));
    CHECK(call("IsLetter", {C(U'#')}) == Value::boolean(false));
    CHECK(call("Count", {S("banana"), C(U'a')}) == I(3));
    CHECK(call("Split", {Q, C(U'a')}).is(Value::Kind::DontCare));
    CHECK_THROWS_AS(call("Remove", {S("ab"), I(5), I(1)}), RuntimeError);
    CHECK_THROWS(call("Split", {S("ab")}));
    CHECK(lib.find("NoSuchFunction") == nullptr);
}

TEST_CASE("input assignments") {
    Assignment a = parse_input_assignment("s=aab,t=\"a,b\",n=3,b=true,c='x',xs=[1,[2,3]]");
    CHECK(a.at("s") == S("aab"));
    CHECK(a.at("t") == S("a,b"));
    CHECK(a.at("n") == I(3));
    CHECK(a.at("b") == Value::boolean(true));
    CHECK(a.at("c") == C(U'x'));
    CHECK(a.at("xs") == A({I(1), A({I(2), I(3)})}));
    CHECK(parse_input_assignment(format_input_assignment(a)) == a);
    CHECK(parse_input_assignment("s=").at("s") == S(""));
    CHECK(parse_nondet_assignment("nd1=false,nd2=true") == NondetAssignment{{"nd1", false}, {"nd2", true}});
    CHECK_THROWS(parse_nondet_assignment("nd1=3"));
    CHECK_THROWS(parse_input_assignment("s"));
}
