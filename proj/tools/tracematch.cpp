// tracematch: command-line front end.
//
//   trace <file> --role impl|spec --input k=v,... [--nd b=true,...] [--full] [--json]
//   parse <file> --role impl|spec
//   match <impl> <spec> [--input ...] [--json] [--timings]
//   grade <impl> <bundle> [--reference ref.l] [--json] [--timings]
//   corpus-run <bundle> <dir> [--jobs N] [--json] [--timings]
//   bundle <out-dir> <spec files...>
//
// Exit codes: 0 success / matched, 2 error, 3 unmatched, 4 not graded
// (functional check against the reference failed).

#include "tracematch/bundle.hpp"
#include "tracematch/errors.hpp"
#include "tracematch/frontend.hpp"
#include "tracematch/inputs.hpp"
#include "tracematch/matcher.hpp"
#include "tracematch/runtime.hpp"

#include <algorithm>
#include <future>
#include <iostream>

#include "CLI11.hpp"

namespace fs = std::filesystem;
using namespace tracematch;

namespace {

constexpr int kOk = 0;
constexpr int kError = 2;
constexpr int kUnmatched = 3;
constexpr int kNotGraded = 4;

Role parse_role(const std::string& r) {
    if (r == "impl" || r == "implementation") return Role::Implementation;
    if (r == "spec" || r == "specification") return Role::Specification;
    throw Error("unknown role " + r + " (use impl or spec)");
}

std::vector<Assignment> all_inputs(const std::vector<Specification>& specs) {
    std::vector<Assignment> out;
    for (const auto& s : specs)
        for (const auto& in : s.inputs)
            if (std::find(out.begin(), out.end(), in) == out.end()) out.push_back(in);
    return out;
}

int cmd_trace(const std::string& file, const std::string& role, const std::string& input, const std::string& nd,
              bool full, bool json) {
    Program p = load_program(file, parse_role(role));
    LocationTable table;
    ExecResult r = execute(p, parse_input_assignment(input), parse_nondet_assignment(nd), table);
    if (!json) {
        std::cout << dump_trace(r.trace, p, table, full);
        return kOk;
    }
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : r.trace.entries) {
        if (!full && (e.kind == EntryKind::LoopIteration || e.kind == EntryKind::CallResult)) continue;
        nlohmann::ordered_json j;
        j["loc"] = table.label(p, e.loc);
        switch (e.kind) {
            case EntryKind::LoopIteration: j["kind"] = "loop"; break;
            case EntryKind::CallResult: j["kind"] = "result"; break;
            case EntryKind::CoverBound: j["kind"] = "cover"; break;
            case EntryKind::Value: j["kind"] = "value"; break;
        }
        if (e.kind != EntryKind::LoopIteration) j["value"] = render(e.value);
        entries.push_back(j);
    }
    nlohmann::ordered_json out;
    out["program"] = p.name;
    out["trace"] = entries;
    if (r.return_value) out["return"] = render(*r.return_value);
    std::cout << out.dump(2) << "\n";
    return kOk;
}

int cmd_parse(const std::string& file, const std::string& role) {
    std::cout << pretty_print(load_program(file, parse_role(role)));
    return kOk;
}

int cmd_match(const std::string& impl_file, const std::string& spec_file, const std::vector<std::string>& inputs,
              bool json, bool timings) {
    Specification spec = load_specification(spec_file);
    Program impl = load_program(impl_file, Role::Implementation);
    std::vector<Assignment> in = spec.inputs;
    if (!inputs.empty()) {
        in.clear();
        for (const auto& s : inputs) in.push_back(parse_input_assignment(s));
    }
    MatchVerdict v = matches(spec, impl, in);
    if (json) {
        std::cout << verdict_json(v, &spec, timings).dump(2) << "\n";
    } else {
        GradeReport r;
        r.impl_name = impl.name;
        r.unmatched = !v.matched();
        if (v.matched()) r.matched.push_back(spec.name);
        r.verdicts.push_back(v);
        std::cout << report_text(r, {spec});
    }
    if (v.status == MatchStatus::Error) {
        std::cerr << "error: " << v.error << "\n";
        return kError;
    }
    return v.matched() ? kOk : kUnmatched;
}

int cmd_grade(const std::string& impl_file, const std::string& bundle, const std::string& reference, bool json,
              bool timings) {
    auto registry = load_bundle(bundle);
    Program impl = load_program(impl_file, Role::Implementation);
    if (!reference.empty()) {
        Program ref = load_program(reference, Role::Implementation);
        if (auto diff = check_functional(impl, ref, all_inputs(registry))) {
            if (json) {
                nlohmann::ordered_json j;
                j["implementation"] = impl.name;
                j["status"] = "NOT-GRADED-FOR-PERFORMANCE";
                j["reason"] = *diff;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "NOT-GRADED-FOR-PERFORMANCE: " << *diff << "\n";
            }
            return kNotGraded;
        }
    }
    GradeReport r = grade(impl, registry);
    if (json)
        std::cout << report_json(r, registry, timings).dump(2) << "\n";
    else
        std::cout << report_text(r, registry);
    if (r.any_error && r.unmatched) return kError;
    return r.unmatched ? kUnmatched : kOk;
}

int cmd_corpus(const std::string& bundle, const std::string& dir, unsigned jobs, bool json, bool timings) {
    auto registry = load_bundle(bundle);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".l") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::vector<GradeReport> reports(files.size());
    std::vector<std::string> errors(files.size());
    auto work = [&](std::size_t i) {
        try {
            reports[i] = grade(load_program(files[i], Role::Implementation), registry);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    jobs = std::max(1u, jobs);
    for (std::size_t b = 0; b < files.size(); b += jobs) {
        std::vector<std::future<void>> fs;
        for (std::size_t i = b; i < std::min(files.size(), b + jobs); ++i) fs.push_back(std::async(std::launch::async, work, i));
        for (auto& f : fs) f.get();
    }

    bool failed = false;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!errors[i].empty()) {
            failed = true;
            if (json)
                arr.push_back({{"file", files[i].filename().string()}, {"error", errors[i]}});
            else
                std::cout << files[i].filename().string() << ": error: " << errors[i] << "\n";
            continue;
        }
        failed = failed || reports[i].any_error;
        if (json) {
            auto j = report_json(reports[i], registry, timings);
            nlohmann::ordered_json row;
            row["file"] = files[i].filename().string();
            for (auto it = j.begin(); it != j.end(); ++it) row[it.key()] = it.value();
            arr.push_back(row);
        } else {
            std::cout << files[i].filename().string() << ": ";
            if (reports[i].unmatched) {
                std::cout << "UNMATCHED\n";
            } else {
                for (std::size_t k = 0; k < reports[i].matched.size(); ++k)
                    std::cout << (k ? ", " : "") << reports[i].matched[k];
                std::cout << "\n";
            }
        }
    }
    if (json) std::cout << arr.dump(2) << "\n";
    return failed ? kError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Match programs against teacher specifications by trace embedding"};
    app.require_subcommand(1);

    std::string file, role = "impl", input, nd, impl_file, spec_file, bundle, reference, dir, out_dir;
    std::vector<std::string> inputs, spec_files;
    bool full = false, json = false, timings = false;
    unsigned jobs = 1;

    auto* trace = app.add_subcommand("trace", "Run a program and print its trace");
    trace->add_option("file", file, "Source file")->required();
    trace->add_option("--role", role, "impl or spec");
    trace->add_option("--input", input, "Input assignment, e.g. s=aab,t=aba");
    trace->add_option("--nd", nd, "Nondet assignment, e.g. nd1=false");
    trace->add_flag("--full", full, "Also list loop iterations and library-call results");
    trace->add_flag("--json", json, "JSON output");

    auto* parse_cmd = app.add_subcommand("parse", "Print the three-address form with location labels");
    parse_cmd->add_option("file", file, "Source file")->required();
    parse_cmd->add_option("--role", role, "impl or spec");

    auto* match = app.add_subcommand("match", "Match one implementation against one specification");
    match->add_option("impl", impl_file, "Implementation file")->required();
    match->add_option("spec", spec_file, "Specification file")->required();
    match->add_option("--input", inputs, "Input assignment (repeatable); defaults to the spec's #input lines");
    match->add_flag("--json", json, "JSON output");
    match->add_flag("--timings", timings, "Include timings in JSON output");

    auto* grade_cmd = app.add_subcommand("grade", "Check an implementation against every spec of a bundle");
    grade_cmd->add_option("impl", impl_file, "Implementation file")->required();
    grade_cmd->add_option("bundle", bundle, "Bundle directory")->required();
    grade_cmd->add_option("--reference", reference, "Reference solution for the functional check");
    grade_cmd->add_flag("--json", json, "JSON output");
    grade_cmd->add_flag("--timings", timings, "Include timings in JSON output");

    auto* corpus = app.add_subcommand("corpus-run", "Grade every .l file of a directory");
    corpus->add_option("bundle", bundle, "Bundle directory")->required();
    corpus->add_option("dir", dir, "Directory of implementations")->required();
    corpus->add_option("--jobs", jobs, "Worker threads");
    corpus->add_flag("--json", json, "JSON output");
    corpus->add_flag("--timings", timings, "Include timings in JSON output");

    auto* bundle_cmd = app.add_subcommand("bundle", "Assemble and validate a bundle directory");
    bundle_cmd->add_option("out", out_dir, "Output directory")->required();
    bundle_cmd->add_option("specs", spec_files, "Specification files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (trace->parsed()) return cmd_trace(file, role, input, nd, full, json);
        if (parse_cmd->parsed()) return cmd_parse(file, role);
        if (match->parsed()) return cmd_match(impl_file, spec_file, inputs, json, timings);
        if (grade_cmd->parsed()) return cmd_grade(impl_file, bundle, reference, json, timings);
        if (corpus->parsed()) return cmd_corpus(bundle, dir, jobs, json, timings);
        if (bundle_cmd->parsed()) {
            std::vector<fs::path> paths(spec_files.begin(), spec_files.end());
            write_bundle(paths, out_dir);
            std::cout << "wrote " << paths.size() << " specification(s) to " << out_dir << "\n";
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
