#include "rpaclone/suffix_array.hpp"

#include <algorithm>
#include <stdexcept>

namespace rpaclone {

namespace {

// Stable counting sort of `items` by rank[item].
void sort_by_rank(std::span<const std::int32_t> items, std::span<const std::int32_t> rank, std::int32_t classes,
                  std::span<std::int32_t> out) {
    std::vector<std::int32_t> count(static_cast<std::size_t>(classes) + 1, 0);
    for (const auto item : items) ++count[static_cast<std::size_t>(rank[item]) + 1];
    for (std::size_t c = 1; c < count.size(); ++c) count[c] += count[c - 1];
    for (const auto item : items) out[count[static_cast<std::size_t>(rank[item])]++] = item;
}

}  // namespace

std::vector<std::int32_t> build_suffix_array(std::span<const std::int32_t> text) {
    if (text.size() > static_cast<std::size_t>(INT32_MAX)) throw std::length_error("text too long for suffix array");
    const auto n = static_cast<std::int32_t>(text.size());
    std::vector<std::int32_t> sa(text.size());
    if (n == 0) return sa;

    // Compress the alphabet to dense ranks 0..classes-1.
    std::vector<std::int32_t> symbols(text.begin(), text.end());
    std::ranges::sort(symbols);
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    std::vector<std::int32_t> rank(text.size());
    for (std::int32_t i = 0; i < n; ++i)
        rank[i] = static_cast<std::int32_t>(std::ranges::lower_bound(symbols, text[i]) - symbols.begin());
    std::int32_t classes = static_cast<std::int32_t>(symbols.size());

    std::vector<std::int32_t> order(text.size());
    for (std::int32_t i = 0; i < n; ++i) order[i] = i;
    sort_by_rank(order, rank, classes, sa);

    std::vector<std::int32_t> next_rank(text.size());
    for (std::int32_t k = 1; classes < n; k <<= 1) {
        // Order by second key: suffixes without a second half come first.
        std::int32_t p = 0;
        for (std::int32_t i = n - k; i < n; ++i) order[p++] = i;
        for (const auto s : sa)
            if (s >= k) order[p++] = s - k;
        sort_by_rank(order, rank, classes, sa);

        auto second = [&](std::int32_t i) { return i + k < n ? rank[i + k] : -1; };
        next_rank[sa[0]] = 0;
        for (std::int32_t j = 1; j < n; ++j) {
            const auto a = sa[j - 1];
            const auto b = sa[j];
            const bool same = rank[a] == rank[b] && second(a) == second(b);
            next_rank[b] = next_rank[a] + (same ? 0 : 1);
        }
        rank.swap(next_rank);
        classes = rank[sa[n - 1]] + 1;
        if (k > n) break;
    }
    return sa;
}

std::vector<std::int32_t> build_lcp(std::span<const std::int32_t> text, std::span<const std::int32_t> sa) {
    const auto n = static_cast<std::int32_t>(text.size());
    std::vector<std::int32_t> lcp(text.size(), 0);
    std::vector<std::int32_t> inverse(text.size());
    for (std::int32_t i = 0; i < n; ++i) inverse[sa[i]] = i;
    std::int32_t h = 0;
    for (std::int32_t i = 0; i < n; ++i) {
        if (inverse[i] == 0) {
            h = 0;
            continue;
        }
        const auto j = sa[inverse[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
        lcp[inverse[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

}  // namespace rpaclone
