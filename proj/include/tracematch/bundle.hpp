#pragma once

#include "tracematch/matcher.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace tracematch {

std::string read_file(const std::filesystem::path& p);

/// Parses a source file. The program name defaults to the file stem.
Program load_program(const std::filesystem::path& file, Role role);

/// Loads a specification file with its pragmas:
///   #criterion partial|full      (required)
///   #feedback <text>             (repeatable, joined by newlines)
///   #input name=value,...        (repeatable, one input per line)
///   #equality Name=file.l        (relative to the spec file)
///   #name <name>                 (optional, defaults to the file stem)
Specification load_specification(const std::filesystem::path& file);

/// Every `*.l` file of `dir` carrying a #criterion pragma, sorted by file name.
std::vector<Specification> load_bundle(const std::filesystem::path& dir);

/// Copies the given specification files and the equality files they
/// reference into `out`, then reloads the result to validate it.
void write_bundle(const std::vector<std::filesystem::path>& spec_files, const std::filesystem::path& out);

nlohmann::ordered_json verdict_json(const MatchVerdict& v, const Specification* spec, bool timings);
nlohmann::ordered_json report_json(const GradeReport& r, const std::vector<Specification>& registry, bool timings);

/// Human-readable summary of a report.
std::string report_text(const GradeReport& r, const std::vector<Specification>& registry);

}  // namespace tracematch
