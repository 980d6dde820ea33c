#include "rpaclone/error.hpp"
#include "rpaclone/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <optional>
#include <fstream>
#include <sstream>
#include <thread>

namespace rpaclone {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool valid_token_name(std::string_view name) {
    if (name.empty()) return false;
    if (std::isspace(static_cast<unsigned char>(name.front())) ||
        std::isspace(static_cast<unsigned char>(name.back())))
        return false;
    return name.find(':') == std::string_view::npos;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.generic_string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.generic_string());
    return buf.str();
}

std::string lowercase(std::string s) {
    std::ranges::transform(s, s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

Token::Token(std::string name) : name_(std::move(name)) {
    if (!valid_token_name(name_)) throw std::invalid_argument("invalid activity token '" + name_ + "'");
}

std::string_view to_string(SourceKind kind) {
    return kind == SourceKind::design ? "design" : "log";
}

SourceKind source_kind_from_string(std::string_view text) {
    if (text == "design") return SourceKind::design;
    if (text == "log") return SourceKind::log;
    throw SchemaError("unknown source_kind '" + std::string(text) + "'");
}

void canonicalize(Corpus& corpus) {
    std::ranges::sort(corpus.sequences, {}, &ActivitySequence::process_id);
    const auto dup = std::ranges::adjacent_find(corpus.sequences, {}, &ActivitySequence::process_id);
    if (dup != corpus.sequences.end()) throw SchemaError("duplicate process id '" + dup->process_id + "'");
    std::ranges::sort(corpus.skipped, [](const SkipRecord& a, const SkipRecord& b) {
        return std::tie(a.path, a.reason) < std::tie(b.path, b.reason);
    });
}

Corpus scan_corpus(const fs::path& root, const ScanOptions& options) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw IoError("cannot read corpus root " + root.generic_string());

    const std::string extension = lowercase(options.extraction.file_extension);
    std::vector<fs::path> files;
    try {
        for (const auto& entry : fs::recursive_directory_iterator(root)) {
            if (entry.is_regular_file() && lowercase(entry.path().extension().string()) == extension)
                files.push_back(entry.path());
        }
    } catch (const fs::filesystem_error& e) {
        throw IoError(std::string("cannot read corpus root ") + root.generic_string() + ": " + e.what());
    }
    if (options.reorder_discovered) options.reorder_discovered(files);

    struct Outcome {
        std::optional<ActivitySequence> sequence;
        std::optional<SkipRecord> skip;
    };
    std::vector<Outcome> outcomes(files.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            const std::string id = files[i].lexically_relative(root).generic_string();
            try {
                const std::string text = read_file(files[i]);
                auto extraction = extract_activities(text, options.extraction, id);
                outcomes[i].sequence = ActivitySequence{id, SourceKind::design, std::move(extraction.tokens)};
            } catch (const ParseError& e) {
                outcomes[i].skip = SkipRecord{id, e.detail()};
            } catch (const Error& e) {
                outcomes[i].skip = SkipRecord{id, e.what()};
            }
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(files.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    Corpus corpus;
    corpus.origin = root.generic_string();
    for (auto& outcome : outcomes) {
        if (outcome.sequence) corpus.sequences.push_back(std::move(*outcome.sequence));
        if (outcome.skip) corpus.skipped.push_back(std::move(*outcome.skip));
    }
    if (corpus.sequences.empty()) throw EmptyCorpusError();
    canonicalize(corpus);
    return corpus;
}

std::string corpus_to_json(const Corpus& corpus) {
    json out = json::array();
    for (const auto& seq : corpus.sequences) {
        json tokens = json::array();
        for (const auto& t : seq.tokens) tokens.push_back(t.name());
        out.push_back({{"process_id", seq.process_id},
                       {"source_kind", to_string(seq.source_kind)},
                       {"tokens", std::move(tokens)}});
    }
    return out.dump(2) + "\n";
}

Corpus corpus_from_json(std::string_view text, std::string_view source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(source_name), e.byte, e.what());
    }
    if (!doc.is_array()) throw SchemaError(std::string(source_name) + ": corpus file must be a JSON list");

    Corpus corpus;
    corpus.origin = std::string(source_name);
    try {
        for (const auto& item : doc) {
            ActivitySequence seq;
            seq.process_id = item.at("process_id").get<std::string>();
            seq.source_kind = source_kind_from_string(item.at("source_kind").get<std::string>());
            for (const auto& t : item.at("tokens")) seq.tokens.emplace_back(t.get<std::string>());
            corpus.sequences.push_back(std::move(seq));
        }
    } catch (const json::exception& e) {
        throw SchemaError(std::string(source_name) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string(source_name) + ": " + e.what());
    }
    if (corpus.sequences.empty()) throw EmptyCorpusError();
    canonicalize(corpus);
    return corpus;
}

}  // namespace rpaclone
