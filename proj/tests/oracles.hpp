#pragma once

// Brute-force reference implementations. Deliberately naive and written
// separately from the library code they are used to check.

#include "rpaclone/similarity.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace rpaclone::oracle {

using Tokens = std::vector<std::string>;

struct RepeatRecord {
    Tokens tokens;
    std::vector<Occurrence> occurrences;

    friend bool operator==(const RepeatRecord&, const RepeatRecord&) = default;
    friend auto operator<=>(const RepeatRecord&, const RepeatRecord&) = default;
};

/// Every substring of length >= min_length grouped by content, kept when it
/// spans two processes (or two positions with allow_intra) and no single
/// token extends all occurrences on the left or on the right.
inline std::vector<RepeatRecord> maximal_repeats(const std::vector<MetaProcess>& corpus, std::size_t min_length,
                                                 bool allow_intra = false) {
    std::map<Tokens, std::set<Occurrence>> groups;
    for (const auto& p : corpus) {
        const auto n = p.tokens.size();
        for (std::size_t start = 0; start < n; ++start) {
            for (std::size_t len = min_length; start + len <= n; ++len) {
                Tokens sub(p.tokens.begin() + static_cast<long>(start),
                           p.tokens.begin() + static_cast<long>(start + len));
                groups[sub].insert({p.process_id, start});
            }
        }
    }
    std::map<std::string, const MetaProcess*> by_id;
    for (const auto& p : corpus) by_id[p.process_id] = &p;

    std::vector<RepeatRecord> out;
    for (const auto& [tokens, occ] : groups) {
        if (occ.size() < 2) continue;
        std::set<std::string> processes;
        for (const auto& o : occ) processes.insert(o.process_id);
        if (!allow_intra && processes.size() < 2) continue;

        auto uniform = [&](bool left) {
            std::set<std::string> seen;
            for (const auto& o : occ) {
                const auto& t = by_id.at(o.process_id)->tokens;
                if (left) {
                    if (o.offset == 0) return false;
                    seen.insert(t[o.offset - 1]);
                } else {
                    if (o.offset + tokens.size() >= t.size()) return false;
                    seen.insert(t[o.offset + tokens.size()]);
                }
            }
            return seen.size() == 1;
        };
        if (uniform(true) || uniform(false)) continue;
        out.push_back({tokens, {occ.begin(), occ.end()}});
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct LcsRecord {
    std::size_t length = 0;
    /// tie set: each distinct longest block with its offsets in a and b
    std::map<Tokens, std::pair<std::set<std::size_t>, std::set<std::size_t>>> blocks;

    friend bool operator==(const LcsRecord&, const LcsRecord&) = default;
};

/// Tries every length from the longest possible down, comparing the sets of
/// all substrings of that length in each sequence.
inline LcsRecord longest_common_substrings(const Tokens& a, const Tokens& b) {
    LcsRecord rec;
    for (std::size_t len = std::min(a.size(), b.size()); len > 0; --len) {
        std::map<Tokens, std::set<std::size_t>> in_a;
        std::map<Tokens, std::set<std::size_t>> in_b;
        for (std::size_t i = 0; i + len <= a.size(); ++i)
            in_a[Tokens(a.begin() + static_cast<long>(i), a.begin() + static_cast<long>(i + len))].insert(i);
        for (std::size_t j = 0; j + len <= b.size(); ++j)
            in_b[Tokens(b.begin() + static_cast<long>(j), b.begin() + static_cast<long>(j + len))].insert(j);
        for (const auto& [sub, offs] : in_a) {
            if (const auto hit = in_b.find(sub); hit != in_b.end()) rec.blocks[sub] = {offs, hit->second};
        }
        if (!rec.blocks.empty()) {
            rec.length = len;
            return rec;
        }
    }
    return rec;
}

/// Textbook suffix-length table: cell (i, j) holds the length of the common
/// run ending at a[i-1] and b[j-1]. Every cell holding the maximum marks one
/// occurrence pair of a longest block.
inline LcsRecord longest_common_substrings_dp(const Tokens& a, const Tokens& b) {
    std::vector<std::vector<std::size_t>> table(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
    std::size_t best = 0;
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            if (a[i - 1] == b[j - 1]) {
                table[i][j] = table[i - 1][j - 1] + 1;
                best = std::max(best, table[i][j]);
            }
    LcsRecord rec;
    rec.length = best;
    if (best == 0) return rec;
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            if (table[i][j] == best) {
                Tokens block(a.begin() + static_cast<long>(i - best), a.begin() + static_cast<long>(i));
                auto& entry = rec.blocks[block];
                entry.first.insert(i - best);
                entry.second.insert(j - best);
            }
    return rec;
}

/// Random corpus over the alphabet t0..t{alphabet-1}.
inline std::vector<MetaProcess> random_corpus(std::mt19937& rng, std::size_t max_processes, std::size_t max_length,
                                              std::size_t alphabet, std::size_t min_processes = 2) {
    std::uniform_int_distribution<std::size_t> count(min_processes, max_processes);
    std::uniform_int_distribution<std::size_t> length(0, max_length);
    std::uniform_int_distribution<std::size_t> symbol(0, alphabet - 1);
    std::vector<MetaProcess> corpus(count(rng));
    for (std::size_t p = 0; p < corpus.size(); ++p) {
        corpus[p].process_id = "P" + std::to_string(p);
        corpus[p].tokens.resize(length(rng));
        for (auto& t : corpus[p].tokens) t = "t" + std::to_string(symbol(rng));
    }
    return corpus;
}

inline std::vector<RepeatRecord> as_records(const MatchSet& ms) {
    std::vector<RepeatRecord> out;
    for (const auto& m : ms.matches) out.push_back({m.tokens, m.occurrences});
    std::sort(out.begin(), out.end());
    return out;
}

/// Every occurrence must reproduce the token list from its source process.
inline bool occurrences_verify(const MatchSet& ms, const std::vector<MetaProcess>& corpus) {
    std::map<std::string, const MetaProcess*> by_id;
    for (const auto& p : corpus) by_id[p.process_id] = &p;
    for (const auto& m : ms.matches) {
        for (const auto& o : m.occurrences) {
            const auto it = by_id.find(o.process_id);
            if (it == by_id.end()) return false;
            const auto& t = it->second->tokens;
            if (o.offset + m.tokens.size() > t.size()) return false;
            if (!std::equal(m.tokens.begin(), m.tokens.end(), t.begin() + static_cast<long>(o.offset))) return false;
        }
    }
    return true;
}

}  // namespace rpaclone::oracle
