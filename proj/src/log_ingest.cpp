#include "rpaclone/csv.hpp"
#include "rpaclone/error.hpp"
#include "rpaclone/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace rpaclone {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> as_number(std::string_view s) {
    double value = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
    return value;
}

// Numeric when both keys parse as numbers, otherwise plain text order.
bool order_key_less(std::string_view a, std::string_view b) {
    const auto na = as_number(a);
    const auto nb = as_number(b);
    if (na && nb) return *na < *nb;
    return a < b;
}

std::size_t column_index(const csv::Row& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == name) return i;
    }
    throw SchemaError("missing column '" + name + "' in log header");
}

struct Event {
    std::string activity;
    std::string order_key;
    std::size_t row = 0;
};

}  // namespace

Corpus ingest_log(std::string_view log_table, const ColumnMap& columns, std::string_view origin) {
    const auto rows = csv::parse(log_table, origin);
    if (rows.empty()) throw EmptyCorpusError();

    const auto& header = rows.front();
    const std::size_t case_col = column_index(header, columns.case_column);
    const std::size_t activity_col = column_index(header, columns.activity_column);
    std::optional<std::size_t> order_col;
    if (columns.order_column) order_col = column_index(header, *columns.order_column);

    std::map<std::string, std::vector<Event>> cases;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto cell = [&](std::size_t col) -> std::string_view {
            if (col >= row.size())
                throw SchemaError(std::string(origin) + ": row " + std::to_string(r + 1) + " has too few columns");
            return trim(row[col]);
        };
        const std::string_view case_id = cell(case_col);
        std::string_view activity = cell(activity_col);
        if (const auto colon = activity.rfind(':'); colon != std::string_view::npos)
            activity = trim(activity.substr(colon + 1));
        if (case_id.empty() || activity.empty())
            throw SchemaError(std::string(origin) + ": row " + std::to_string(r + 1) +
                              " has an empty case id or activity");
        cases[std::string(case_id)].push_back(
            Event{std::string(activity), order_col ? std::string(cell(*order_col)) : std::string(), r});
    }
    if (cases.empty()) throw EmptyCorpusError();

    Corpus corpus;
    corpus.origin = std::string(origin);
    for (auto& [case_id, events] : cases) {
        if (order_col) {
            std::ranges::stable_sort(events, [](const Event& a, const Event& b) {
                return order_key_less(a.order_key, b.order_key);
            });
        }
        ActivitySequence seq{case_id, SourceKind::log, {}};
        seq.tokens.reserve(events.size());
        for (auto& e : events) seq.tokens.emplace_back(std::move(e.activity));
        corpus.sequences.push_back(std::move(seq));
    }
    canonicalize(corpus);
    return corpus;
}

std::string format_log(const Corpus& corpus) {
    std::string out = csv::format_row({"case_id", "activity", "order"});
    for (const auto& seq : corpus.sequences) {
        for (std::size_t i = 0; i < seq.tokens.size(); ++i)
            out += csv::format_row({seq.process_id, seq.tokens[i].name(), std::to_string(i)});
    }
    return out;
}

}  // namespace rpaclone
