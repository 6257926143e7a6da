#include "doctest.h"
#include "surface_eval.hpp"

#include "tracematch/embedding.hpp"
#include "tracematch/errors.hpp"
#include "tracematch/frontend.hpp"
#include "tracematch/inputs.hpp"
#include "tracematch/runtime.hpp"

#include <random>
#include <sstream>

using namespace tracematch;

namespace {

Program impl(const std::string& text) { return parse(SourceUnit{Role::Implementation, text, "t"}); }
Program spec(const std::string& text) { return parse(SourceUnit{Role::Specification, text, "t"}); }

std::vector<std::string> body_lines(const Program& p) {
    std::vector<std::string> out;
    std::istringstream in(pretty_print(p));
    for (std::string line; std::getline(in, line);) {
        auto pos = line.find_first_not_of(' ', line.find(' '));
        if (line.rfind("ℓ", 0) == 0 && pos != std::string::npos) out.push_back(line.substr(pos));
    }
    return out;
}

// Random programs over ints, bools and a three-element array.
class ProgramGen {
public:
    explicit ProgramGen(std::mt19937& rng) : rng_(rng) {}

    std::string program() {
        std::string body = "  z := 0;\n  b := false;\n";
        for (int n = pick(2, 6); n > 0; --n) body += stmt(0, false);
        return "fun P(x, y, a) {\n" + body + "}\n";
    }

private:
    std::mt19937& rng_;
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::string int_expr(int d) {
        if (d == 0 || pick(0, 3) == 0) {
            switch (pick(0, 5)) {
                case 0: return std::to_string(pick(-5, 5));
                case 1: return "x";
                case 2: return "y";
                case 3: return "z";
                case 4: return "a[" + std::to_string(pick(0, 2)) + "]";
                default: return "|a|";
            }
        }
        switch (pick(0, 4)) {
            case 0: return "(" + int_expr(d - 1) + " + " + int_expr(d - 1) + ")";
            case 1: return "(" + int_expr(d - 1) + " - " + int_expr(d - 1) + ")";
            case 2: return int_expr(d - 1) + " * " + int_expr(d - 1);
            case 3: return "-(" + int_expr(d - 1) + ")";
            default: return "[" + int_expr(d - 1) + ", 1, 2][" + std::to_string(pick(0, 2)) + "]";
        }
    }

    std::string bool_expr(int d) {
        static const char* cmp[] = {"<", "<=", ">", ">=", "==", "!="};
        if (d == 0 || pick(0, 2) == 0) {
            switch (pick(0, 3)) {
                case 0: return pick(0, 1) ? "true" : "false";
                case 1: return "b";
                default: return int_expr(1) + " " + cmp[pick(0, 5)] + " " + int_expr(1);
            }
        }
        switch (pick(0, 2)) {
            case 0: return "!(" + bool_expr(d - 1) + ")";
            case 1: return "(" + bool_expr(d - 1) + " && " + bool_expr(d - 1) + ")";
            default: return "(" + bool_expr(d - 1) + " || " + bool_expr(d - 1) + ")";
        }
    }

    std::string block(int depth, bool in_loop) {
        std::string s;
        for (int n = pick(1, 3); n > 0; --n) s += stmt(depth + 1, in_loop);
        return s;
    }

    std::string stmt(int depth, bool in_loop) {
        int k = pick(0, depth < 2 ? 9 : 5);
        switch (k) {
            case 0:
            case 1: return "z := " + int_expr(2) + ";\n";
            case 2: return (pick(0, 1) ? "x" : "y") + std::string(" := ") + int_expr(2) + ";\n";
            case 3: return "b := " + bool_expr(2) + ";\n";
            case 4: return "a[" + std::to_string(pick(0, 2)) + "] := " + int_expr(2) + ";\n";
            case 5:
                if (in_loop && pick(0, 2) == 0) return "if (" + bool_expr(1) + ") break;\n";
                if (pick(0, 5) == 0) return "if (" + bool_expr(1) + ") return;\n";
                return "skip;\n";
            case 6:
            case 7:
                return "if (" + bool_expr(2) + ") {\n" + block(depth, in_loop) + "} else {\n" +
                       block(depth, in_loop) + "}\n";
            default: {
                std::string i = "i" + std::to_string(depth);
                return i + " := 0;\nwhile (" + i + " < 3 && " + bool_expr(1) + ") {\n" + block(depth, true) + i +
                       " := " + i + " + 1;\n}\n";
            }
        }
    }
};

}  // namespace

TEST_CASE("nested operands become temporaries") {
    auto lines = body_lines(impl("fun F(a, b, c, d) { v1 := v2 + (a + b); }"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "$1 := a + b");
    CHECK(lines[1] == "v1 := v2 + $1");
    CHECK(body_lines(impl("fun F(x, y) { x := y; }")) == std::vector<std::string>{"x := y"});
    auto prod = body_lines(impl("fun F(a, b, c, d) { z := (a+b) * (c+d); }"));
    CHECK(prod == std::vector<std::string>{"$1 := a + b", "$2 := c + d", "z := $1 * $2"});
}

TEST_CASE("conditions keep their top-level operator") {
    auto lines = body_lines(impl("fun F(s, c) { if (s[0] == c) skip; }"));
    CHECK(lines == std::vector<std::string>{"$1 := s[0]", "if ($1 == c) {", "skip"});
}

TEST_CASE("syntax errors carry positions") {
    try {
        impl("fun F(x) {\n  x := ;\n}");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(impl("fun F(x) { x := 1 }"), SyntaxError);
    CHECK_THROWS_AS(impl("fun F(x) { x = 1; }"), SyntaxError);
    CHECK_THROWS_AS(impl(""), SyntaxError);
    CHECK_THROWS_AS(impl("fun F(x) { observeFun(Split(_, x)); }"), RoleViolation);
    CHECK_THROWS_AS(impl("fun F(x) { x := Split(_, x); }"), SyntaxError);
}

TEST_CASE("role rules") {
    CHECK_THROWS_AS(impl("fun F(x) { observe(x); }"), RoleViolation);
    CHECK_THROWS_AS(impl("fun F(x) { cover(3); }"), RoleViolation);
    CHECK_THROWS_AS(impl("fun F(x) { skip; }\nnondet nd;"), RoleViolation);
    CHECK_THROWS_AS(spec("fun F(x) { nd := true; }\nnondet nd;"), SemanticError);
    CHECK_THROWS_AS(impl("fun F(x) { y := Frobnicate(x); }"), SemanticError);
    CHECK_THROWS_AS(impl("fun F(x) { y := Split(x); }"), SemanticError);
    CHECK_THROWS_AS(impl("fun F(x) { y := G(x, x); }\nfun G(a) { return a; }"), SemanticError);
    CHECK_THROWS_AS(impl("fun F(x) { skip; }\nfun F(y) { skip; }"), SemanticError);
    CHECK_NOTHROW(spec("fun F(s) { observeFun(Split(_, 'a')); cover(Split()); cover(|s|); }"));
}

TEST_CASE("user functions shadow library functions") {
    Program p = impl("fun F(s) { r := Sort(s); }\nfun Sort(x) { return 7; }");
    LocationTable t;
    CHECK(execute(p, parse_input_assignment("s=ba"), {}, t).final_store.at("r") == Value::integer(7));
}

TEST_CASE("location ids and labels are stable across parses") {
    const std::string text = "fun F(s) {\n  i := 0; j := 1;\n  while (i < |s|) {\n    i++;\n  }\n}\n";
    Program a = impl(text), b = impl(text);
    REQUIRE(a.locations.size() == b.locations.size());
    for (std::size_t i = 0; i < a.locations.size(); ++i) {
        CHECK(a.locations[i].id == b.locations[i].id);
        CHECK(a.locations[i].label == b.locations[i].label);
        CHECK(a.locations[i].kind == b.locations[i].kind);
    }
    CHECK(pretty_print(a) == pretty_print(b));
    CHECK(a.locations[0].label == "ℓ2.1");
    CHECK(a.locations[1].label == "ℓ2.2");
}

TEST_CASE("library calls get a companion result location") {
    Program p = impl("fun F(s) {\n  n := Split(s, 'a');\n}");
    REQUIRE(p.locations.size() == 2);
    CHECK(p.locations[0].kind == LocKind::LibCall);
    CHECK(p.locations[0].label == "ℓ2");
    CHECK(p.locations[1].kind == LocKind::CallResult);
    CHECK(p.locations[1].label == "ℓ2.r");
}

TEST_CASE("erasing a specification") {
    Program s = spec(
        "fun F(s) {\n  if (nd1) observe(s);\n  observeFun(Split(_, 'a'));\n  cover(ToCharArray());\n  cover(3);\n}\n"
        "nondet nd1;");
    Program e = erase_specification(s, {{"nd1", true}});
    CHECK(e.role == Role::Implementation);
    CHECK(e.nondet_vars.empty());
    LocationTable t;
    Trace tr = execute_implementation(e, parse_input_assignment("s=aab"), t);
    std::vector<Value> values;
    for (const auto& x : tr.entries)
        if (x.kind == EntryKind::Value) values.push_back(x.value);
    REQUIRE(values.size() == 3);
    CHECK(values[0] == Value::string(U"aab"));
    CHECK(values[1] == Value::record("Split", {Value::dont_care(), Value::character(U'a')}));
    CHECK(values[2] == Value::record("ToCharArray", {Value::dont_care()}));
}

TEST_CASE("one-to-many groups") {
    Program r5 = impl(
        "fun F(cp, j) {\n"
        "  if (j == 0) { cp := (char) 0 + Substring(cp, 1); }\n"
        "  else if (j == |cp| - 1) { cp := Substring(cp, 0, j) + (char) 0; }\n"
        "  else { cp := Substring(cp, 0, j) + (char) 0 + Substring(cp, j + 1); }\n"
        "}");
    auto groups = one_to_many_candidates(r5);
    REQUIRE(groups.size() == 1);
    REQUIRE(groups[0].size() == 3);
    for (StmtId s : groups[0]) CHECK(r5.location(s).target == "cp");
    CHECK(one_to_many_candidates(impl("fun F(x) { x := 1; y := 2; }")).empty());
    CHECK(one_to_many_candidates(impl("fun F(x) { if (x) { y := 1; } else { z := 2; } }")).empty());
    auto lib = one_to_many_candidates(impl("fun F(s) { if (s == \"\") { t := Split(s, 'a'); } else { t := Sort(s); } }"));
    REQUIRE(lib.size() == 1);
    for (StmtId s : lib[0]) CHECK(impl("fun F(s) { if (s == \"\") { t := Split(s, 'a'); } else { t := Sort(s); } }")
                                      .location(s)
                                      .kind == LocKind::CallResult);
}

TEST_CASE("normalization preserves final stores") {
    std::mt19937 rng(424242);
    ProgramGen gen(rng);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        std::string text = gen.program();
        CAPTURE(text);
        for (int k = 0; k < 20; ++k) {
            auto v = [&] { return Value::integer(std::uniform_int_distribution<int>(-4, 4)(rng)); };
            Assignment in{{"x", v()}, {"y", v()}, {"a", Value::array({v(), v(), v()})}};
            surface_eval::Evaluator ev(in);
            ev.run(parse_surface(text).functions.at(0).body);
            LocationTable t;
            Assignment got = execute(impl(text), in, {}, t).final_store;
            std::erase_if(got, [](const auto& kv) { return kv.first.rfind('$', 0) == 0; });
            REQUIRE(got == ev.store());
            ++checked;
        }
    }
    CHECK(checked == 6000);
}
