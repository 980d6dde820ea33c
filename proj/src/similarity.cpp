#include "rpaclone/similarity.hpp"

#include "rpaclone/error.hpp"
#include "rpaclone/suffix_array.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <set>
#include <thread>
#include <unordered_map>

namespace rpaclone {

namespace {

using Symbols = std::vector<std::int32_t>;

/// Maps meta tokens to dense ids shared by every process of one run.
class Interner {
public:
    std::int32_t id(const std::string& token) {
        const auto [it, inserted] = ids_.try_emplace(token, static_cast<std::int32_t>(names_.size()));
        if (inserted) names_.push_back(token);
        return it->second;
    }

    Symbols encode(const std::vector<std::string>& tokens) {
        Symbols out;
        out.reserve(tokens.size());
        for (const auto& t : tokens) out.push_back(id(t));
        return out;
    }

    std::size_t size() const noexcept { return names_.size(); }

private:
    std::unordered_map<std::string, std::int32_t> ids_;
    std::vector<std::string> names_;
};

struct SymbolBlock {
    std::size_t length = 0;
    // (start in a, start in b) for every cell that reached `length`
    std::vector<std::pair<std::size_t, std::size_t>> ends;
};

SymbolBlock longest_common_blocks(const Symbols& a, const Symbols& b) {
    SymbolBlock best;
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
            if (cur[j] == 0 || cur[j] < best.length) continue;
            if (cur[j] > best.length) {
                best.length = cur[j];
                best.ends.clear();
            }
            best.ends.emplace_back(i - cur[j], j - cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

std::vector<std::string> slice(const std::vector<std::string>& tokens, std::size_t offset, std::size_t length) {
    const auto first = tokens.begin() + static_cast<std::ptrdiff_t>(offset);
    return {first, first + static_cast<std::ptrdiff_t>(length)};
}

std::size_t distinct_processes(const std::vector<Occurrence>& sorted_occurrences) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < sorted_occurrences.size(); ++i) {
        if (i == 0 || sorted_occurrences[i].process_id != sorted_occurrences[i - 1].process_id) ++count;
    }
    return count;
}

void require_unique_ids(std::span<const MetaProcess> corpus) {
    std::set<std::string_view> seen;
    for (const auto& p : corpus) {
        if (!seen.insert(p.process_id).second) throw PreconditionError("duplicate process id '" + p.process_id + "'");
    }
}

// Left context of a suffix: one symbol, "many", or nothing seen yet.
struct LeftContext {
    enum class State : std::uint8_t { empty, single, diverse } state = State::empty;
    std::int64_t symbol = 0;

    void merge(const LeftContext& other) {
        if (other.state == State::empty || state == State::diverse) return;
        if (state == State::empty) {
            *this = other;
        } else if (other.state == State::diverse || other.symbol != symbol) {
            state = State::diverse;
        }
    }
};

}  // namespace

std::string_view to_string(MatchMode mode) {
    return mode == MatchMode::pairwise ? "pairwise" : "repeats";
}

MatchMode match_mode_from_string(std::string_view text) {
    if (text == "pairwise") return MatchMode::pairwise;
    if (text == "repeats") return MatchMode::repeats;
    throw UsageError("unknown mode '" + std::string(text) + "' (expected pairwise|repeats)");
}

bool canonical_less(const Match& a, const Match& b) {
    if (a.length() != b.length()) return a.length() > b.length();
    if (a.process_count != b.process_count) return a.process_count > b.process_count;
    return a.tokens < b.tokens;
}

std::vector<CommonBlock> pairwise_lcs(const MetaProcess& a, const MetaProcess& b) {
    Interner interner;
    const auto sa = interner.encode(a.tokens);
    const auto sb = interner.encode(b.tokens);
    const auto best = longest_common_blocks(sa, sb);
    if (best.length == 0) return {};

    std::map<std::vector<std::string>, std::pair<std::set<std::size_t>, std::set<std::size_t>>> grouped;
    for (const auto& [start_a, start_b] : best.ends) {
        auto& offsets = grouped[slice(a.tokens, start_a, best.length)];
        offsets.first.insert(start_a);
        offsets.second.insert(start_b);
    }
    std::vector<CommonBlock> out;
    for (auto& [tokens, offsets] : grouped) {
        out.push_back({tokens, {offsets.first.begin(), offsets.first.end()},
                       {offsets.second.begin(), offsets.second.end()}});
    }
    return out;
}

MatchSet find_matches_pairwise(std::span<const MetaProcess> corpus, std::size_t min_length, unsigned threads) {
    if (corpus.size() < 2) throw PreconditionError("need at least two processes");
    require_unique_ids(corpus);

    Interner interner;
    std::vector<Symbols> encoded;
    encoded.reserve(corpus.size());
    for (const auto& p : corpus) encoded.push_back(interner.encode(p.tokens));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j) pairs.emplace_back(i, j);

    std::vector<SymbolBlock> results(pairs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < pairs.size(); k = next++) {
            auto block = longest_common_blocks(encoded[pairs[k].first], encoded[pairs[k].second]);
            if (block.length >= min_length && block.length > 0) results[k] = std::move(block);
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(pairs.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    std::map<std::vector<std::string>, std::set<Occurrence>> merged;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& block = results[k];
        if (block.length == 0) continue;
        const auto& a = corpus[pairs[k].first];
        const auto& b = corpus[pairs[k].second];
        for (const auto& [start_a, start_b] : block.ends) {
            auto& occ = merged[slice(a.tokens, start_a, block.length)];
            occ.insert({a.process_id, start_a});
            occ.insert({b.process_id, start_b});
        }
    }

    MatchSet ms;
    ms.mode = MatchMode::pairwise;
    ms.min_length = min_length;
    ms.corpus_fingerprint = corpus_fingerprint(corpus);
    for (auto& [tokens, occ] : merged) {
        Match m{tokens, {occ.begin(), occ.end()}, 0};
        m.process_count = distinct_processes(m.occurrences);
        ms.matches.push_back(std::move(m));
    }
    std::ranges::sort(ms.matches, canonical_less);
    return ms;
}

MatchSet find_matches_repeats(std::span<const MetaProcess> corpus, std::size_t min_length, bool allow_intra) {
    if (corpus.size() < (allow_intra ? 1u : 2u)) throw PreconditionError("need at least two processes");
    require_unique_ids(corpus);
    if (min_length == 0) throw PreconditionError("min_length must be positive");

    // Concatenate every process followed by its own separator symbol, so no
    // common prefix can run across a process boundary.
    Interner interner;
    std::vector<Symbols> encoded;
    std::size_t total = 0;
    for (const auto& p : corpus) {
        encoded.push_back(interner.encode(p.tokens));
        total += p.tokens.size() + 1;
    }
    const auto alphabet = static_cast<std::int32_t>(interner.size());
    Symbols text;
    std::vector<std::uint32_t> owner;
    std::vector<std::uint32_t> offset;
    text.reserve(total);
    owner.reserve(total);
    offset.reserve(total);
    for (std::size_t p = 0; p < encoded.size(); ++p) {
        for (std::size_t i = 0; i < encoded[p].size(); ++i) {
            text.push_back(encoded[p][i]);
            owner.push_back(static_cast<std::uint32_t>(p));
            offset.push_back(static_cast<std::uint32_t>(i));
        }
        text.push_back(alphabet + static_cast<std::int32_t>(p));
        owner.push_back(static_cast<std::uint32_t>(p));
        offset.push_back(static_cast<std::uint32_t>(encoded[p].size()));
    }

    const auto sa = build_suffix_array(text);
    auto lcp = build_lcp(text, sa);
    const auto n = static_cast<std::int32_t>(text.size());
    lcp.push_back(0);  // closes every open interval at the end

    auto left_of = [&](std::int32_t suffix) {
        // Separators are unique, and the text start gets its own sentinel.
        return LeftContext{LeftContext::State::single, suffix == 0 ? -1 : text[suffix - 1]};
    };

    MatchSet ms;
    ms.mode = MatchMode::repeats;
    ms.min_length = min_length;
    ms.corpus_fingerprint = corpus_fingerprint(corpus);

    auto report = [&](std::int32_t depth, std::int32_t lb, std::int32_t rb) {
        std::vector<Occurrence> occ;
        occ.reserve(static_cast<std::size_t>(rb - lb + 1));
        for (std::int32_t k = lb; k <= rb; ++k) {
            const auto pos = static_cast<std::size_t>(sa[k]);
            occ.push_back({corpus[owner[pos]].process_id, offset[pos]});
        }
        std::ranges::sort(occ);
        const std::size_t processes = distinct_processes(occ);
        if (!allow_intra && processes < 2) return;
        const auto first = static_cast<std::size_t>(sa[lb]);
        const auto& tokens = corpus[owner[first]].tokens;
        ms.matches.push_back({slice(tokens, offset[first], static_cast<std::size_t>(depth)), std::move(occ), processes});
    };

    // Bottom-up traversal of lcp-intervals; each interval is right-maximal,
    // and it is left-maximal when its merged left context is diverse.
    struct Interval {
        std::int32_t depth;
        std::int32_t lb;
        LeftContext left;
    };
    std::vector<Interval> stack{{0, 0, {}}};
    for (std::int32_t i = 1; i <= n; ++i) {
        const LeftContext leaf = left_of(sa[i - 1]);
        stack.back().left.merge(leaf);
        std::int32_t lb = i - 1;
        LeftContext carried = leaf;
        const std::int32_t depth = lcp[i];
        while (depth < stack.back().depth) {
            Interval node = stack.back();
            stack.pop_back();
            if (node.left.state == LeftContext::State::diverse && static_cast<std::size_t>(node.depth) >= min_length)
                report(node.depth, node.lb, i - 1);
            lb = node.lb;
            if (depth <= stack.back().depth) {
                stack.back().left.merge(node.left);
                carried = {};
            } else {
                carried = node.left;
            }
        }
        if (depth > stack.back().depth) stack.push_back({depth, lb, carried});
    }

    std::ranges::sort(ms.matches, canonical_less);
    return ms;
}

Histogram histogram(const MatchSet& ms) {
    Histogram h;
    for (const auto& m : ms.matches) ++h[m.length()];
    return h;
}

std::string corpus_fingerprint(std::span<const MetaProcess> corpus) {
    std::vector<const MetaProcess*> ordered;
    for (const auto& p : corpus) ordered.push_back(&p);
    std::ranges::sort(ordered, {}, [](const MetaProcess* p) -> const std::string& { return p->process_id; });

    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto feed = [&](std::string_view bytes) {
        for (const unsigned char c : bytes) {
            hash ^= c;
            hash *= 0x100000001b3ULL;
        }
    };
    for (const auto* p : ordered) {
        feed(p->process_id);
        feed("\x1f");
        for (const auto& t : p->tokens) {
            feed(t);
            feed("\x1f");
        }
        feed("\x1e");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

}  // namespace rpaclone
