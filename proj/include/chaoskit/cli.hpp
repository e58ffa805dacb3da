#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaoskit/suites.hpp"

namespace chaoskit::cli {

/// Bumped whenever the JSON or CSV layout changes.
inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kCsvHeader = "section,group,check,status,left,relation,right,std_error,inputs,note";

enum ExitStatus : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_usage = 2,        // config or argument error; nothing ran
    exit_unconverged = 3,  // a quadrature refinement failed; the report is partial
};

/// One subcommand's suite output.
struct Section {
    std::string command;
    std::string verifies;  // one line naming the result being checked
    SuiteResult groups;
};

struct RunReport {
    std::string command;
    std::uint64_t seed = kDefaultSeed;
    /// Effective settings in registration order. Execution-only settings
    /// (workers, output location, formats) are left out so that reports from
    /// different machines and worker counts compare byte for byte.
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<Section> sections;
    bool partial = false;  // a suite stopped early
    double seconds = 0.0;  // wall clock, written to the text format only
};

/// exit_unconverged if any record is unconverged or the report is partial,
/// else exit_check_failed if any record failed, else exit_ok.
int exit_status(const RunReport& report);

std::string to_json(const RunReport& report);
std::string to_csv(const RunReport& report);
std::string to_text(const RunReport& report);
/// One line per section plus one per report group.
std::string summary(const RunReport& report);

/// Parses the command line, runs the suite, writes the reports, and returns
/// the exit status. Summary lines go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chaoskit::cli
