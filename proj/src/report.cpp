#include "rpaclone/report.hpp"

#include "rpaclone/csv.hpp"
#include "rpaclone/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace rpaclone {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> process_ids(const Match& m) {
    std::vector<std::string> ids;
    for (const auto& o : m.occurrences) {
        if (ids.empty() || ids.back() != o.process_id) ids.push_back(o.process_id);
    }
    return ids;
}

// Integral scores print without a fraction.
std::string format_score(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

json to_json(const Report& r) {
    json processes = json::array();
    for (const auto& p : r.corpus.processes) processes.push_back({{"process_id", p.process_id}, {"tokens", p.tokens}});
    json skipped = json::array();
    for (const auto& s : r.corpus.skipped) skipped.push_back({{"path", s.path}, {"reason", s.reason}});

    json candidates = json::array();
    for (const auto& c : r.candidates) {
        json occ = json::array();
        for (const auto& o : c.match.occurrences) occ.push_back({{"process_id", o.process_id}, {"offset", o.offset}});
        candidates.push_back({{"rank", c.rank},
                              {"score", c.score},
                              {"length", c.match.length()},
                              {"process_count", c.match.process_count},
                              {"tokens", c.match.tokens},
                              {"occurrences", std::move(occ)}});
    }
    json hist = json::array();
    for (const auto& [length, count] : r.histogram) hist.push_back({{"length", length}, {"count", count}});

    return {
        {"schema_version", kReportSchemaVersion},
        {"corpus",
         {{"process_count", r.corpus.process_count},
          {"token_count", r.corpus.token_count},
          {"processes", std::move(processes)},
          {"skipped", std::move(skipped)}}},
        {"dictionary", {{"name", r.dictionary_name}, {"version", r.dictionary_version}}},
        {"parameters",
         {{"mode", to_string(r.parameters.mode)},
          {"min_length", r.parameters.min_length},
          {"lookup_case", to_string(r.parameters.lookup_case)},
          {"allow_intra", r.parameters.allow_intra},
          {"scoring", to_string(r.parameters.scoring)}}},
        {"corpus_fingerprint", r.corpus_fingerprint},
        {"warnings", r.warnings},
        {"candidates", std::move(candidates)},
        {"histogram", std::move(hist)},
    };
}

std::string emit_csv(const Report& r) {
    std::string out = csv::format_row(
        {"rank", "score", "length", "process_count", "occurrence_count", "tokens", "processes"});
    for (const auto& c : r.candidates) {
        out += csv::format_row({std::to_string(c.rank), format_score(c.score), std::to_string(c.match.length()),
                                std::to_string(c.match.process_count), std::to_string(c.match.occurrences.size()),
                                join(c.match.tokens, "|"), join(process_ids(c.match), ";")});
    }
    return out;
}

std::string emit_text(const Report& r, const EmitOptions& options) {
    std::ostringstream os;
    os << "Corpus: " << r.corpus.process_count << " processes, " << r.corpus.token_count << " meta tokens, "
       << r.corpus.skipped.size() << " skipped\n";
    for (const auto& s : r.corpus.skipped) os << "  skipped " << s.path << ": " << s.reason << "\n";
    os << "Dictionary: " << r.dictionary_name << " (version " << r.dictionary_version << ")\n";
    os << "Mode: " << to_string(r.parameters.mode) << ", min length " << r.parameters.min_length << ", lookup "
       << to_string(r.parameters.lookup_case) << (r.parameters.allow_intra ? ", intra-process repeats" : "")
       << ", scoring " << to_string(r.parameters.scoring) << "\n";
    os << "Fingerprint: " << r.corpus_fingerprint << "\n";
    for (const auto& w : r.warnings) os << "Warning: " << w << "\n";

    os << "\nMatches by length (" << r.candidates.size() << " total)\n";
    char line[64];
    std::snprintf(line, sizeof line, "%8s  %8s\n", "Length", "Count");
    os << line << "--------  --------\n";
    for (const auto& [length, count] : r.histogram) {
        std::snprintf(line, sizeof line, "%8zu  %8zu\n", length, count);
        os << line;
    }

    const std::size_t shown = std::min(options.top, r.candidates.size());
    os << "\nTop " << shown << " refactoring candidates\n";
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& c = r.candidates[i];
        os << "#" << c.rank << "  score " << format_score(c.score) << "  length " << c.match.length() << "  in "
           << c.match.process_count << " processes (" << c.match.occurrences.size() << " occurrences)\n";
        os << "    " << join(c.match.tokens, " > ") << "\n";
        for (const auto& o : c.match.occurrences) os << "    at " << o.process_id << " @" << o.offset << "\n";
    }
    return os.str();
}

}  // namespace

std::string_view to_string(Scoring scoring) {
    switch (scoring) {
        case Scoring::length_x_processes: return "length_x_processes";
        case Scoring::length_x_occurrences: return "length_x_occurrences";
        case Scoring::length: return "length";
    }
    return "length_x_processes";
}

Scoring scoring_from_string(std::string_view text) {
    for (const auto s : {Scoring::length_x_processes, Scoring::length_x_occurrences, Scoring::length})
        if (to_string(s) == text) return s;
    throw UsageError("unknown scoring '" + std::string(text) + "'");
}

double score(const Match& match, Scoring scoring) {
    const auto length = static_cast<double>(match.length());
    switch (scoring) {
        case Scoring::length_x_processes: return length * static_cast<double>(match.process_count);
        case Scoring::length_x_occurrences: return length * static_cast<double>(match.occurrences.size());
        case Scoring::length: return length;
    }
    return length;
}

std::vector<RefactorCandidate> rank_candidates(const MatchSet& ms, Scoring scoring) {
    std::vector<RefactorCandidate> out;
    out.reserve(ms.matches.size());
    for (const auto& m : ms.matches) out.push_back({m, score(m, scoring), 0});
    std::ranges::sort(out, [](const RefactorCandidate& a, const RefactorCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.match.length() != b.match.length()) return a.match.length() > b.match.length();
        return a.match.tokens < b.match.tokens;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

Report make_report(std::span<const MetaProcess> processes, std::vector<SkipRecord> skipped,
                   const ActivityDictionary& dict, const RunParameters& parameters, const MatchSet& ms,
                   std::vector<std::string> warnings) {
    Report r;
    r.corpus.process_count = processes.size();
    for (const auto& p : processes) {
        r.corpus.token_count += p.tokens.size();
        r.corpus.processes.push_back({p.process_id, p.tokens.size()});
    }
    std::ranges::sort(r.corpus.processes, {}, &ProcessSummary::process_id);
    r.corpus.skipped = std::move(skipped);
    r.dictionary_name = dict.name;
    r.dictionary_version = dict.version;
    r.parameters = parameters;
    r.corpus_fingerprint = ms.corpus_fingerprint;
    r.warnings = std::move(warnings);
    r.candidates = rank_candidates(ms, parameters.scoring);
    r.histogram = histogram(ms);
    return r;
}

std::string_view to_string(Format format) {
    switch (format) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::text: return "text";
    }
    return "text";
}

Format format_from_string(std::string_view text) {
    for (const auto f : {Format::json, Format::csv, Format::text})
        if (to_string(f) == text) return f;
    throw UsageError("unknown format '" + std::string(text) + "' (expected json|csv|text)");
}

std::string emit(const Report& report, Format format, const EmitOptions& options) {
    switch (format) {
        case Format::json: return to_json(report).dump(2) + "\n";
        case Format::csv: return emit_csv(report);
        case Format::text: return emit_text(report, options);
    }
    throw UsageError("unknown format");
}

Report report_from_json(std::string_view text, std::string_view source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(source_name), e.byte, e.what());
    }
    try {
        if (doc.at("schema_version").get<int>() != kReportSchemaVersion)
            throw SchemaError(std::string(source_name) + ": unsupported report schema version");
        Report r;
        const auto& c = doc.at("corpus");
        r.corpus.process_count = c.at("process_count").get<std::size_t>();
        r.corpus.token_count = c.at("token_count").get<std::size_t>();
        for (const auto& p : c.at("processes"))
            r.corpus.processes.push_back({p.at("process_id").get<std::string>(), p.at("tokens").get<std::size_t>()});
        for (const auto& s : c.at("skipped"))
            r.corpus.skipped.push_back({s.at("path").get<std::string>(), s.at("reason").get<std::string>()});
        r.dictionary_name = doc.at("dictionary").at("name").get<std::string>();
        r.dictionary_version = doc.at("dictionary").at("version").get<std::string>();
        const auto& params = doc.at("parameters");
        r.parameters.mode = match_mode_from_string(params.at("mode").get<std::string>());
        r.parameters.min_length = params.at("min_length").get<std::size_t>();
        r.parameters.lookup_case = lookup_case_from_string(params.at("lookup_case").get<std::string>());
        r.parameters.allow_intra = params.at("allow_intra").get<bool>();
        r.parameters.scoring = scoring_from_string(params.at("scoring").get<std::string>());
        r.corpus_fingerprint = doc.at("corpus_fingerprint").get<std::string>();
        r.warnings = doc.at("warnings").get<std::vector<std::string>>();
        for (const auto& item : doc.at("candidates")) {
            RefactorCandidate cand;
            cand.rank = item.at("rank").get<std::size_t>();
            cand.score = item.at("score").get<double>();
            cand.match.tokens = item.at("tokens").get<std::vector<std::string>>();
            cand.match.process_count = item.at("process_count").get<std::size_t>();
            for (const auto& o : item.at("occurrences"))
                cand.match.occurrences.push_back({o.at("process_id").get<std::string>(), o.at("offset").get<std::size_t>()});
            r.candidates.push_back(std::move(cand));
        }
        for (const auto& h : doc.at("histogram")) r.histogram[h.at("length").get<std::size_t>()] = h.at("count").get<std::size_t>();
        return r;
    } catch (const json::exception& e) {
        throw SchemaError(std::string(source_name) + ": " + e.what());
    } catch (const UsageError& e) {
        throw SchemaError(std::string(source_name) + ": " + e.what());
    }
}

}  // namespace rpaclone
