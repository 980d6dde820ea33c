#pragma once

#include "rpaclone/ingest.hpp"
#include "rpaclone/similarity.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rpaclone {

/// Bumped whenever the JSON report layout changes.
inline constexpr int kReportSchemaVersion = 1;

enum class Scoring {
    length_x_processes,   ///< default: block size times reuse breadth
    length_x_occurrences,
    length,
};

std::string_view to_string(Scoring scoring);
Scoring scoring_from_string(std::string_view text);

double score(const Match& match, Scoring scoring = Scoring::length_x_processes);

struct RefactorCandidate {
    Match match;
    double score = 0;
    std::size_t rank = 0;

    friend bool operator==(const RefactorCandidate&, const RefactorCandidate&) = default;
};

/// Ranks 1..n by (score desc, length desc, tokens asc).
std::vector<RefactorCandidate> rank_candidates(const MatchSet& ms, Scoring scoring = Scoring::length_x_processes);

struct ProcessSummary {
    std::string process_id;
    std::size_t tokens = 0;

    friend bool operator==(const ProcessSummary&, const ProcessSummary&) = default;
};

struct CorpusSummary {
    std::size_t process_count = 0;
    std::size_t token_count = 0;
    std::vector<ProcessSummary> processes;
    std::vector<SkipRecord> skipped;

    friend bool operator==(const CorpusSummary&, const CorpusSummary&) = default;
};

struct RunParameters {
    MatchMode mode = MatchMode::repeats;
    std::size_t min_length = kDefaultMinLength;
    LookupCase lookup_case = LookupCase::insensitive;
    bool allow_intra = false;
    Scoring scoring = Scoring::length_x_processes;

    friend bool operator==(const RunParameters&, const RunParameters&) = default;
};

struct Report {
    CorpusSummary corpus;
    std::string dictionary_name;
    std::string dictionary_version;
    RunParameters parameters;
    std::string corpus_fingerprint;
    std::vector<std::string> warnings;
    std::vector<RefactorCandidate> candidates;
    Histogram histogram;

    friend bool operator==(const Report&, const Report&) = default;
};

Report make_report(std::span<const MetaProcess> processes, std::vector<SkipRecord> skipped,
                   const ActivityDictionary& dict, const RunParameters& parameters, const MatchSet& ms,
                   std::vector<std::string> warnings = {});

enum class Format { json, csv, text };

std::string_view to_string(Format format);
Format format_from_string(std::string_view text);

struct EmitOptions {
    /// Candidates listed in text output.
    std::size_t top = 20;
};

std::string emit(const Report& report, Format format, const EmitOptions& options = {});

Report report_from_json(std::string_view text, std::string_view source_name = "<report>");

}  // namespace rpaclone
