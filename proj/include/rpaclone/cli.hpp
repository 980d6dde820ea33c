#pragma once

#include "rpaclone/error.hpp"
#include "rpaclone/ingest.hpp"
#include "rpaclone/report.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rpaclone::cli {

enum class Command { scan, normalize, match, report };

std::string_view to_string(Command command);

struct RunConfig {
    Command command = Command::report;
    std::vector<std::string> inputs;
    std::optional<std::string> dictionary_path;  ///< builtin when unset
    MatchMode mode = MatchMode::repeats;
    std::size_t min_length = kDefaultMinLength;
    Format format = Format::text;
    LookupCase lookup_case = LookupCase::insensitive;
    bool allow_intra = false;
    Scoring scoring = Scoring::length_x_processes;
    std::size_t top = 20;
    std::optional<std::string> out;
    bool logs = false;
    ColumnMap columns;
    ScanOptions scan;
    /// Accepted-but-suspicious settings, carried into report metadata.
    std::vector<std::string> warnings;
};

/// --help was given; what() holds the help text.
class HelpRequested : public UsageError {
public:
    using UsageError::UsageError;
};

enum ExitStatus : int { kSuccess = 0, kOperationalError = 1, kUsageError = 2 };

/// `args` excludes the program name. Throws UsageError (help text included).
RunConfig parse_args(std::span<const std::string> args);

/// Runs one command, writing artifacts to `config.out` or `out` and
/// diagnostics to `err`. Returns an ExitStatus.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-status mapping, as used by main().
int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rpaclone::cli
