#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rpaclone/csv.hpp"
#include "rpaclone/error.hpp"
#include "rpaclone/report.hpp"

#include <random>

using namespace rpaclone;
using Tokens = std::vector<std::string>;

namespace {

Match match_of(std::size_t length, std::size_t processes, std::string prefix = "t") {
    Match m;
    for (std::size_t i = 0; i < length; ++i) m.tokens.push_back(prefix + std::to_string(i));
    for (std::size_t p = 0; p < processes; ++p) m.occurrences.push_back({"P" + std::to_string(p), 0});
    m.process_count = processes;
    return m;
}

Report sample_report() {
    const std::vector<MetaProcess> corpus{{"P1", {"a", "b", "c", "d"}}, {"P2", {"x", "a", "b", "c"}},
                                          {"P3", {"b", "c", "d"}}};
    const auto ms = find_matches_repeats(corpus, 3);
    return make_report(corpus, {{"bad.xaml", "parse error at byte offset 7: mismatched tag"}}, builtin_dictionary(),
                       RunParameters{}, ms, {"a warning"});
}

}  // namespace

TEST_SUITE("ranking") {
    TEST_CASE("single candidate") {
        MatchSet ms;
        ms.matches = {match_of(3, 2)};
        const auto ranked = rank_candidates(ms);
        REQUIRE(ranked.size() == 1);
        CHECK(ranked[0].score == 6);
        CHECK(ranked[0].rank == 1);
    }

    TEST_CASE("breadth can outrank length") {
        MatchSet ms;
        ms.matches = {match_of(4, 2, "long"), match_of(3, 3, "wide")};
        const auto ranked = rank_candidates(ms);
        REQUIRE(ranked.size() == 2);
        CHECK(ranked[0].match.tokens.front() == "wide0");
        CHECK(ranked[0].score == 9);
        CHECK(ranked[1].score == 8);
        CHECK(ranked[1].rank == 2);
    }

    TEST_CASE("empty match set") {
        CHECK(rank_candidates(MatchSet{}).empty());
    }

    TEST_CASE("ties fall back to length then tokens") {
        MatchSet ms;
        ms.matches = {match_of(3, 2, "b"), match_of(6, 1, "z"), match_of(3, 2, "a")};
        const auto ranked = rank_candidates(ms);
        CHECK(ranked[0].match.tokens.front() == "z0");
        CHECK(ranked[1].match.tokens.front() == "a0");
        CHECK(ranked[2].match.tokens.front() == "b0");
    }

    TEST_CASE("alternative scorings") {
        Match m = match_of(3, 2);
        m.occurrences.push_back({"P1", 7});
        CHECK(score(m, Scoring::length_x_occurrences) == 9);
        CHECK(score(m, Scoring::length) == 3);
        CHECK(scoring_from_string("length") == Scoring::length);
        CHECK_THROWS_AS(scoring_from_string("popularity"), UsageError);
    }

    TEST_CASE("property: ranks are a permutation ordered by score") {
        std::mt19937 rng(8);
        for (int round = 0; round < 50; ++round) {
            const auto corpus = oracle::random_corpus(rng, 6, 25, 3);
            const auto ranked = rank_candidates(find_matches_repeats(corpus, 3));
            for (std::size_t i = 0; i < ranked.size(); ++i) {
                CHECK(ranked[i].rank == i + 1);
                if (i > 0) CHECK(ranked[i - 1].score >= ranked[i].score);
            }
        }
    }
}

TEST_SUITE("emit") {
    TEST_CASE("json is byte-stable and round-trips") {
        const Report r = sample_report();
        const auto first = emit(r, Format::json);
        CHECK(first == emit(r, Format::json));
        CHECK(first == emit(sample_report(), Format::json));
        CHECK(first.find("\"schema_version\": 1") != std::string::npos);
        const Report back = report_from_json(first);
        CHECK(back == r);
        CHECK(emit(back, Format::json) == first);
    }

    TEST_CASE("csv row for a shared block") {
        const std::vector<MetaProcess> corpus{{"P1", {"a", "b", "c", "d"}}, {"P2", {"x", "a", "b", "c"}}};
        const auto report = make_report(corpus, {}, builtin_dictionary(), RunParameters{},
                                        find_matches_repeats(corpus, 3));
        const auto table = csv::parse(emit(report, Format::csv), "report.csv");
        REQUIRE(table.size() == 2);
        CHECK(table[0] == std::vector<std::string>{"rank", "score", "length", "process_count", "occurrence_count",
                                                   "tokens", "processes"});
        CHECK(table[1] == std::vector<std::string>{"1", "6", "3", "2", "2", "a|b|c", "P1;P2"});
    }

    TEST_CASE("csv quotes tokens that need it") {
        MatchSet ms;
        ms.matches = {Match{{"Write, now", "say \"hi\"", "c"}, {{"P1", 0}, {"P2", 0}}, 2}};
        const auto report = make_report({}, {}, builtin_dictionary(), RunParameters{}, ms);
        const auto table = csv::parse(emit(report, Format::csv));
        REQUIRE(table.size() == 2);
        CHECK(table[1][5] == "Write, now|say \"hi\"|c");
    }

    TEST_CASE("text shows corpus stats, histogram and candidates") {
        const auto text = emit(sample_report(), Format::text, EmitOptions{1});
        CHECK(text.find("Corpus: 3 processes, 11 meta tokens, 1 skipped") != std::string::npos);
        CHECK(text.find("  Length     Count") != std::string::npos);
        CHECK(text.find("       3         2") != std::string::npos);
        CHECK(text.find("Top 1 refactoring candidates") != std::string::npos);
        CHECK(text.find("a > b > c") != std::string::npos);
        CHECK(text.find("b > c > d") == std::string::npos);
        CHECK(text.find("at P2 @1") != std::string::npos);
        CHECK(text.find("Warning: a warning") != std::string::npos);
    }

    TEST_CASE("report histogram equals the match-set histogram") {
        std::mt19937 rng(31);
        for (int round = 0; round < 30; ++round) {
            const auto corpus = oracle::random_corpus(rng, 6, 25, 3);
            const auto ms = find_matches_repeats(corpus, 3);
            const auto report = make_report(corpus, {}, builtin_dictionary(), RunParameters{}, ms);
            CHECK(report.histogram == histogram(ms));
            std::size_t total = 0;
            for (const auto& [length, count] : report.histogram) {
                CHECK(length >= 3);
                total += count;
            }
            CHECK(total == report.candidates.size());
        }
    }

    TEST_CASE("unknown format") {
        CHECK_THROWS_AS(format_from_string("xml"), UsageError);
        CHECK(format_from_string("csv") == Format::csv);
    }

    TEST_CASE("malformed report input") {
        CHECK_THROWS_AS(report_from_json("{", "r.json"), ParseError);
        CHECK_THROWS_AS(report_from_json(R"({"schema_version": 2})", "r.json"), SchemaError);
        CHECK_THROWS_AS(report_from_json(R"({"schema_version": 1})", "r.json"), SchemaError);
    }
}
