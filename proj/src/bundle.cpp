#include "tracematch/bundle.hpp"

#include "tracematch/errors.hpp"
#include "tracematch/frontend.hpp"
#include "tracematch/inputs.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace tracematch {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Program load_program(const fs::path& file, Role role) {
    try {
        return parse(SourceUnit{role, read_file(file), file.stem().string()});
    } catch (const SourceError& e) {
        throw Error(file.string() + ":" + e.what());
    }
}

namespace {

std::pair<std::string, std::string> split_eq(const std::string& s, const fs::path& file) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(file.string() + ": expected Name=file in #equality");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

std::vector<std::pair<std::string, fs::path>> equality_refs(const Program& p, const fs::path& file) {
    std::vector<std::pair<std::string, fs::path>> out;
    for (const auto& e : p.pragmas.get_all("equality")) {
        auto [name, rel] = split_eq(e, file);
        out.emplace_back(name, file.parent_path() / rel);
    }
    return out;
}

}  // namespace

Specification load_specification(const fs::path& file) {
    Specification s;
    s.program = load_program(file, Role::Specification);
    s.name = s.program.name;
    const Pragmas& pr = s.program.pragmas;
    auto crit = pr.get("criterion");
    if (!crit) throw Error(file.string() + ": missing #criterion");
    if (*crit == "partial")
        s.criterion = Criterion::Partial;
    else if (*crit == "full")
        s.criterion = Criterion::Full;
    else
        throw Error(file.string() + ": #criterion must be partial or full");
    for (const auto& f : pr.get_all("feedback")) s.feedback += (s.feedback.empty() ? "" : "\n") + f;
    for (const auto& in : pr.get_all("input")) {
        try {
            s.inputs.push_back(parse_input_assignment(in));
        } catch (const Error& e) {
            throw Error(file.string() + ": #input: " + e.what());
        }
    }
    if (s.inputs.empty()) throw Error(file.string() + ": no #input");
    for (const auto& [name, path] : equality_refs(s.program, file))
        s.equalities[name] = std::make_shared<const Program>(load_program(path, Role::Implementation));
    try {
        validate_specification(s);
    } catch (const SourceError& e) {
        throw Error(file.string() + ":" + e.what());
    }
    return s;
}

std::vector<Specification> load_bundle(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".l") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Specification> out;
    for (const auto& f : files) {
        if (!parse_surface(read_file(f)).pragmas.get("criterion")) continue;
        out.push_back(load_specification(f));
    }
    if (out.empty()) throw Error(dir.string() + " contains no specification");
    return out;
}

void write_bundle(const std::vector<fs::path>& spec_files, const fs::path& out) {
    fs::create_directories(out);
    for (const auto& f : spec_files) {
        Specification s = load_specification(f);
        fs::copy_file(f, out / f.filename(), fs::copy_options::overwrite_existing);
        for (const auto& [name, path] : equality_refs(s.program, f)) {
            auto rel = fs::relative(path, f.parent_path());
            fs::create_directories((out / rel).parent_path());
            fs::copy_file(path, out / rel, fs::copy_options::overwrite_existing);
        }
    }
    load_bundle(out);
}

nlohmann::ordered_json verdict_json(const MatchVerdict& v, const Specification* spec, bool timings) {
    nlohmann::ordered_json j;
    j["spec"] = v.spec_name;
    j["criterion"] = std::string(criterion_name(v.criterion));
    if (spec) j["kind"] = std::string(kind_name(spec->kind()));
    j["status"] = std::string(status_name(v.status));
    j["matched"] = v.matched();
    if (v.nondet) {
        nlohmann::ordered_json nd = nlohmann::ordered_json::object();
        for (const auto& [k, b] : *v.nondet) nd[k] = b;
        j["nondet"] = nd;
    }
    if (v.matched()) {
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (const auto& p : v.witness_labels) w.push_back({{"spec", p.spec_loc}, {"impl", p.impl_locs}});
        j["witness"] = w;
    }
    if (!v.error.empty()) j["error"] = v.error;
    nlohmann::ordered_json attempts = nlohmann::ordered_json::array();
    for (const auto& a : v.attempts) {
        nlohmann::ordered_json aj;
        nlohmann::ordered_json nd = nlohmann::ordered_json::object();
        for (const auto& [k, b] : a.nondet) nd[k] = b;
        aj["nondet"] = nd;
        aj["found"] = a.found;
        aj["matchings_tried"] = a.matchings_tried;
        if (a.budget_exceeded) aj["budget_exceeded"] = true;
        nlohmann::ordered_json cands = nlohmann::ordered_json::object();
        for (const auto& [l, c] : a.candidates) cands[l] = c;
        aj["candidates"] = cands;
        attempts.push_back(aj);
    }
    j["attempts"] = attempts;
    if (timings) j["seconds"] = v.seconds;
    return j;
}

nlohmann::ordered_json report_json(const GradeReport& r, const std::vector<Specification>& registry, bool timings) {
    nlohmann::ordered_json j;
    j["implementation"] = r.impl_name;
    j["matched"] = r.matched;
    j["feedback"] = r.feedback;
    j["unmatched"] = r.unmatched;
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    for (const auto& v : r.verdicts) {
        const Specification* spec = nullptr;
        for (const auto& s : registry)
            if (s.name == v.spec_name) spec = &s;
        vs.push_back(verdict_json(v, spec, timings));
    }
    j["verdicts"] = vs;
    return j;
}

std::string report_text(const GradeReport& r, const std::vector<Specification>& registry) {
    std::ostringstream out;
    out << "implementation: " << r.impl_name << "\n";
    for (const auto& v : r.verdicts) {
        out << "  " << v.spec_name << " (" << criterion_name(v.criterion) << "): " << status_name(v.status);
        if (v.nondet && !v.nondet->empty()) {
            out << " with";
            for (const auto& [k, b] : *v.nondet) out << " " << k << "=" << (b ? "true" : "false");
        }
        if (!v.error.empty()) out << " [" << v.error << "]";
        out << "\n";
        for (const auto& p : v.witness_labels) {
            out << "    " << p.spec_loc << " -> ";
            for (std::size_t i = 0; i < p.impl_locs.size(); ++i) out << (i ? ", " : "") << p.impl_locs[i];
            out << "\n";
        }
    }
    if (r.unmatched) {
        out << "UNMATCHED: no specification matches this implementation\n";
    } else {
        for (const auto& name : r.matched)
            for (const auto& s : registry)
                if (s.name == name) out << "feedback [" << name << "]: " << s.feedback << "\n";
    }
    return out.str();
}

}  // namespace tracematch
