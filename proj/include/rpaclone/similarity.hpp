#pragma once

#include "rpaclone/dictionary.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rpaclone {

inline constexpr std::size_t kDefaultMinLength = 3;

struct Occurrence {
    std::string process_id;
    std::size_t offset = 0;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
    friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

/// A shared run of meta tokens and every place it was found. Occurrences
/// are sorted by (process_id, offset).
struct Match {
    std::vector<std::string> tokens;
    std::vector<Occurrence> occurrences;
    std::size_t process_count = 0;

    std::size_t length() const noexcept { return tokens.size(); }

    friend bool operator==(const Match&, const Match&) = default;
};

enum class MatchMode { pairwise, repeats };

std::string_view to_string(MatchMode mode);
MatchMode match_mode_from_string(std::string_view text);

struct MatchSet {
    std::vector<Match> matches;
    MatchMode mode = MatchMode::repeats;
    std::size_t min_length = kDefaultMinLength;
    std::string corpus_fingerprint;

    friend bool operator==(const MatchSet&, const MatchSet&) = default;
};

/// (length desc, process_count desc, tokens asc).
bool canonical_less(const Match& a, const Match& b);

/// Longest common contiguous block of two meta-processes, with every offset
/// at which it occurs in each.
struct CommonBlock {
    std::vector<std::string> tokens;
    std::vector<std::size_t> offsets_a;
    std::vector<std::size_t> offsets_b;

    friend bool operator==(const CommonBlock&, const CommonBlock&) = default;
};

/// All distinct common substrings of maximal length, sorted by tokens.
/// Empty when the processes share no token.
std::vector<CommonBlock> pairwise_lcs(const MetaProcess& a, const MetaProcess& b);

/// Longest common block of every unordered pair, kept when it reaches
/// `min_length`, merged across pairs by token list.
/// Throws PreconditionError for fewer than two processes.
MatchSet find_matches_pairwise(std::span<const MetaProcess> corpus, std::size_t min_length = kDefaultMinLength,
                               unsigned threads = 0);

/// Maximal repeats (not uniformly extendable left or right across all their
/// occurrences) of length >= `min_length`, mined from a generalized suffix
/// array. Without `allow_intra` a repeat must touch two distinct processes.
MatchSet find_matches_repeats(std::span<const MetaProcess> corpus, std::size_t min_length = kDefaultMinLength,
                              bool allow_intra = false);

using Histogram = std::map<std::size_t, std::size_t>;

/// Match count per token-list length, ascending.
Histogram histogram(const MatchSet& ms);

/// Stable 64-bit FNV-1a digest of the normalized corpus, as 16 hex digits.
std::string corpus_fingerprint(std::span<const MetaProcess> corpus);

}  // namespace rpaclone
