#include "rpaclone/cli.hpp"

#include "rpaclone/dictionary.hpp"
#include "rpaclone/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <variant>

namespace rpaclone::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.generic_string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TextOptions {
    std::string mode = "repeats";
    std::string format = "text";
    std::string lookup_case = "insensitive";
    std::string scoring = "length_x_processes";
    std::string extension = ".xaml";
    std::vector<std::string> extra_prefixes;
    std::vector<std::string> extra_core;
    std::vector<std::string> extra_structural;
};

void add_common_options(CLI::App& sub, RunConfig& config, TextOptions& text) {
    sub.add_option("inputs", config.inputs,
                   "Workflow directories, .xaml files, CSV logs (--logs) or staged JSON files")
        ->required();
    sub.add_option("--dictionary", config.dictionary_path, "Dictionary JSON file (default: builtin)");
    sub.add_option("--mode", text.mode, "Matching mode")->check(CLI::IsMember({"pairwise", "repeats"}));
    sub.add_option("--min-length", config.min_length, "Minimum match length in meta tokens")
        ->check(CLI::PositiveNumber);
    sub.add_option("--format", text.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub.add_option("--case", text.lookup_case, "Dictionary lookup case handling")
        ->check(CLI::IsMember({"insensitive", "sensitive"}));
    sub.add_flag("--allow-intra", config.allow_intra, "Also report repeats inside a single process");
    sub.add_option("--score", text.scoring, "Candidate scoring")
        ->check(CLI::IsMember({"length_x_processes", "length_x_occurrences", "length"}));
    sub.add_option("--top", config.top, "Candidates listed in text output");
    sub.add_option("--out", config.out, "Write the artifact here instead of standard output");
    sub.add_flag("--logs", config.logs, "Treat inputs as CSV process logs");
    sub.add_option("--case-column", config.columns.case_column, "Log column holding the case id");
    sub.add_option("--activity-column", config.columns.activity_column, "Log column holding the activity");
    sub.add_option("--order-column", config.columns.order_column, "Log column ordering events within a case");
    sub.add_option("--extension", text.extension, "Workflow file extension");
    sub.add_option("--ns-prefix", text.extra_prefixes, "Extra activity namespace prefix (repeatable)")
        ->allow_extra_args(false);
    sub.add_option("--core-activity", text.extra_core, "Extra un-prefixed activity name (repeatable)")
        ->allow_extra_args(false);
    sub.add_option("--structural-tag", text.extra_structural, "Extra element name to skip (repeatable)")
        ->allow_extra_args(false);
    sub.add_option("--threads", config.scan.threads, "Worker threads (0: all cores)");
}

// What a list of inputs loaded into: raw activity sequences, or meta
// processes staged by an earlier `normalize`.
struct Loaded {
    std::variant<Corpus, std::vector<MetaProcess>> data;
};

bool looks_like_meta_file(const nlohmann::json& doc) {
    return doc.is_array() && !doc.empty() && doc.front().is_object() && !doc.front().contains("source_kind");
}

Loaded load_inputs(const RunConfig& config) {
    Corpus corpus;
    std::vector<MetaProcess> metas;
    bool have_meta = false;
    bool have_raw = false;

    for (const auto& input : config.inputs) {
        const fs::path path(input);
        try {
            if (config.logs) {
                auto part = ingest_log(read_text(path), config.columns, path.generic_string());
                std::ranges::move(part.sequences, std::back_inserter(corpus.sequences));
                have_raw = true;
            } else if (fs::is_directory(path)) {
                auto part = scan_corpus(path, config.scan);
                std::ranges::move(part.sequences, std::back_inserter(corpus.sequences));
                std::ranges::move(part.skipped, std::back_inserter(corpus.skipped));
                have_raw = true;
            } else if (path.extension() == ".json") {
                const std::string text = read_text(path);
                nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
                if (looks_like_meta_file(doc)) {
                    auto part = meta_processes_from_json(text, path.generic_string());
                    std::ranges::move(part, std::back_inserter(metas));
                    have_meta = true;
                } else {
                    auto part = corpus_from_json(text, path.generic_string());
                    std::ranges::move(part.sequences, std::back_inserter(corpus.sequences));
                    have_raw = true;
                }
            } else if (fs::is_regular_file(path)) {
                auto extraction = extract_activities(read_text(path), config.scan.extraction, path.generic_string());
                corpus.sequences.push_back(
                    {path.filename().generic_string(), SourceKind::design, std::move(extraction.tokens)});
                have_raw = true;
            } else {
                throw IoError("cannot read input " + path.generic_string());
            }
        } catch (const EmptyCorpusError&) {
            throw Error(path.generic_string() + ": empty corpus");
        }
    }
    if (have_meta && have_raw) throw UsageError("cannot mix meta-process JSON with raw inputs");
    if (have_meta) {
        std::ranges::sort(metas, {}, &MetaProcess::process_id);
        if (metas.empty()) throw EmptyCorpusError();
        return {std::move(metas)};
    }
    if (corpus.sequences.empty()) throw EmptyCorpusError();
    corpus.origin = config.inputs.size() == 1 ? config.inputs.front() : std::string("<multiple>");
    canonicalize(corpus);
    return {std::move(corpus)};
}

void write_artifact(const RunConfig& config, const std::string& bytes, std::ostream& out) {
    if (!config.out) {
        out << bytes;
        return;
    }
    std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write --out " + *config.out);
    file << bytes;
    if (!file) throw IoError("cannot write --out " + *config.out);
}

}  // namespace

std::string_view to_string(Command command) {
    switch (command) {
        case Command::scan: return "scan";
        case Command::normalize: return "normalize";
        case Command::match: return "match";
        case Command::report: return "report";
    }
    return "report";
}

RunConfig parse_args(std::span<const std::string> args) {
    RunConfig config;
    TextOptions text;

    CLI::App app{"Clone detection for RPA workflow designs and process logs", "rpaclone"};
    app.require_subcommand(1);
    const std::pair<Command, const char*> commands[] = {
        {Command::scan, "Extract activity sequences and print the corpus JSON"},
        {Command::normalize, "Apply the dictionary and print meta-process JSON"},
        {Command::match, "Mine shared activity blocks and print a report"},
        {Command::report, "Run the full pipeline and print a report"},
    };
    std::map<const CLI::App*, Command> by_app;
    for (const auto& [command, description] : commands) {
        auto* sub = app.add_subcommand(std::string(to_string(command)), description);
        add_common_options(*sub, config, text);
        by_app[sub] = command;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        throw HelpRequested(target->help());
    } catch (const CLI::ParseError& e) {
        const auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        throw UsageError(std::string(e.what()) + "\n\n" + failing->help());
    }
    config.command = by_app.at(app.get_subcommands().front());

    config.mode = match_mode_from_string(text.mode);
    config.format = format_from_string(text.format);
    config.lookup_case = lookup_case_from_string(text.lookup_case);
    config.scoring = scoring_from_string(text.scoring);

    auto& extraction = config.scan.extraction;
    extraction.namespace_prefixes.insert(text.extra_prefixes.begin(), text.extra_prefixes.end());
    extraction.core_activities.insert(text.extra_core.begin(), text.extra_core.end());
    extraction.structural_tags.insert(text.extra_structural.begin(), text.extra_structural.end());
    if (text.extension.empty()) throw UsageError("--extension must not be empty");
    extraction.file_extension = text.extension.front() == '.' ? text.extension : "." + text.extension;

    if (config.min_length < kDefaultMinLength) {
        config.warnings.push_back("--min-length " + std::to_string(config.min_length) +
                                  " is below the default threshold of " + std::to_string(kDefaultMinLength));
    }
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        for (const auto& w : config.warnings) err << "rpaclone: warning: " << w << "\n";

        const ActivityDictionary dict =
            config.dictionary_path ? load_dictionary(*config.dictionary_path) : builtin_dictionary();
        Loaded loaded = load_inputs(config);

        if (config.command == Command::scan) {
            const auto* corpus = std::get_if<Corpus>(&loaded.data);
            if (corpus == nullptr) throw UsageError("scan expects workflow or log inputs, not meta-process JSON");
            for (const auto& s : corpus->skipped) err << "rpaclone: skipped " << s.path << ": " << s.reason << "\n";
            write_artifact(config, corpus_to_json(*corpus), out);
            return kSuccess;
        }

        std::vector<MetaProcess> metas;
        std::vector<SkipRecord> skipped;
        if (auto* corpus = std::get_if<Corpus>(&loaded.data)) {
            metas = normalize_corpus(*corpus, dict, config.lookup_case);
            skipped = corpus->skipped;
        } else {
            // Staged meta processes: re-applying the dictionary is a no-op for
            // the dictionary that produced them.
            const Normalizer normalizer(dict, config.lookup_case);
            for (const auto& m : std::get<std::vector<MetaProcess>>(loaded.data))
                metas.push_back({m.process_id, normalizer.apply(m.tokens)});
        }
        for (const auto& s : skipped) err << "rpaclone: skipped " << s.path << ": " << s.reason << "\n";

        if (config.command == Command::normalize) {
            write_artifact(config, meta_processes_to_json(metas), out);
            return kSuccess;
        }

        const MatchSet ms = config.mode == MatchMode::pairwise
                                ? find_matches_pairwise(metas, config.min_length, config.scan.threads)
                                : find_matches_repeats(metas, config.min_length, config.allow_intra);
        const RunParameters params{config.mode, config.min_length, config.lookup_case, config.allow_intra,
                                   config.scoring};
        const Report report = make_report(metas, std::move(skipped), dict, params, ms, config.warnings);
        write_artifact(config, emit(report, config.format, EmitOptions{config.top}), out);
        return kSuccess;
    } catch (const UsageError& e) {
        err << "rpaclone: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "rpaclone: error: " << e.what() << "\n";
        return kOperationalError;
    }
}

int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const HelpRequested& e) {
        out << e.what();
        return kSuccess;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return kUsageError;
    }
    return run(config, out, err);
}

}  // namespace rpaclone::cli
