#pragma once

#include <compare>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rpaclone {

/// One activity name as found in a workflow design or a process log.
/// Always trimmed, non-empty, and free of any namespace prefix.
class Token {
public:
    /// Throws std::invalid_argument when `name` breaks the invariants.
    explicit Token(std::string name);

    const std::string& name() const noexcept { return name_; }

    friend bool operator==(const Token&, const Token&) = default;
    friend auto operator<=>(const Token&, const Token&) = default;

private:
    std::string name_;
};

enum class SourceKind { design, log };

std::string_view to_string(SourceKind kind);
SourceKind source_kind_from_string(std::string_view text);

struct ActivitySequence {
    std::string process_id;
    SourceKind source_kind = SourceKind::design;
    std::vector<Token> tokens;

    friend bool operator==(const ActivitySequence&, const ActivitySequence&) = default;
};

struct SkipRecord {
    std::string path;
    std::string reason;

    friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

/// Sequences are kept sorted by process_id.
struct Corpus {
    std::vector<ActivitySequence> sequences;
    std::string origin;
    std::vector<SkipRecord> skipped;

    friend bool operator==(const Corpus&, const Corpus&) = default;
};

// ---------------------------------------------------------------------------
// XAML extraction

struct ExtractionConfig {
    /// Prefixed elements whose prefix is listed here are activities.
    std::set<std::string> namespace_prefixes;
    /// Prefixed elements whose prefix resolves to one of these URIs are activities.
    std::set<std::string> namespace_uris;
    /// Un-prefixed elements with one of these local names are activities.
    std::set<std::string> core_activities;
    /// Local names that are never activities, whatever their namespace.
    std::set<std::string> structural_tags;
    std::string file_extension = ".xaml";

    static ExtractionConfig defaults();
};

struct Extraction {
    std::vector<Token> tokens;
    /// Set when the document parsed but held no activities.
    bool empty_warning = false;
};

/// Flattens a XAML document into its activity names in document (pre-)order.
/// Throws ParseError carrying the failing byte offset on malformed XML.
Extraction extract_activities(std::string_view xaml_document,
                              const ExtractionConfig& config = ExtractionConfig::defaults(),
                              std::string_view source_name = "<document>");

struct ScanOptions {
    ExtractionConfig extraction = ExtractionConfig::defaults();
    /// Worker threads used for parsing; 0 picks hardware concurrency.
    unsigned threads = 0;
    /// Test hook: permutes the discovered file list before parsing.
    std::function<void(std::vector<std::filesystem::path>&)> reorder_discovered;
};

/// Recursively extracts every workflow file under `root`. Files that fail to
/// parse are recorded in Corpus::skipped. Throws IoError for an unreadable
/// root and EmptyCorpusError when nothing parsed.
Corpus scan_corpus(const std::filesystem::path& root, const ScanOptions& options = {});

// ---------------------------------------------------------------------------
// Process logs

struct ColumnMap {
    std::string case_column = "case_id";
    std::string activity_column = "activity";
    /// Rows keep input order within a case when unset.
    std::optional<std::string> order_column;
};

Corpus ingest_log(std::string_view log_table, const ColumnMap& columns = {},
                  std::string_view origin = "<log>");

/// Writes a corpus back as a log table (case_id,activity,order columns).
std::string format_log(const Corpus& corpus);

// ---------------------------------------------------------------------------
// Staging file: JSON list of {process_id, source_kind, tokens}

std::string corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(std::string_view text, std::string_view source_name = "<corpus>");

/// Sorts sequences by process_id and rejects duplicates.
void canonicalize(Corpus& corpus);

}  // namespace rpaclone
