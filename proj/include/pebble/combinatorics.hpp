#pragma once

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace pebble {

using Count = std::uint32_t;

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// C(n, k), saturating at kSaturated.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > kSaturated)
            return kSaturated;
    }
    return static_cast<std::uint64_t>(acc);
}

// Number of distributions of exactly `size` pebbles on n vertices.
inline std::uint64_t composition_count(std::uint64_t size, std::size_t n) {
    if (n == 0)
        return size == 0 ? 1 : 0;
    return binomial(size + n - 1, n - 1);
}

// Bijection between distributions on n vertices and 0, 1, 2, ...
// Distributions are ordered by total size first, then in the enumeration
// order (descending lexicographic), so the index of a distribution does not
// depend on any size bound.
class CompositionIndexer {
public:
    explicit CompositionIndexer(std::size_t n, std::size_t initial_total = 32) : n_{n} {
        if (n == 0)
            throw std::invalid_argument("CompositionIndexer: n must be positive");
        ensure(initial_total);
    }

    [[nodiscard]] std::size_t vertex_count() const { return n_; }

    // Grows the table so totals up to `total` can be indexed. Indices already
    // handed out stay valid.
    void ensure(std::size_t total) {
        if (total <= covered_ && !table_.empty())
            return;
        // The index of the last distribution of size `total` is C(total + n, n) - 1.
        if (binomial(total + n_, n_) == kSaturated)
            throw std::out_of_range("CompositionIndexer: state space too large to index");
        const std::size_t target = std::max(total, covered_ * 2);
        std::size_t cover = target;
        while (cover > total && binomial(cover + n_, n_) == kSaturated)
            --cover;
        rows_ = cover + n_ + 1;
        table_.assign(rows_ * (n_ + 1), 0);
        for (std::size_t a = 0; a < rows_; ++a)
            for (std::size_t b = 0; b <= n_; ++b)
                table_[a * (n_ + 1) + b] = binomial(a, b);
        covered_ = cover;
    }

    [[nodiscard]] std::size_t covered_total() const { return covered_; }

    [[nodiscard]] std::uint64_t index(std::span<const Count> counts) const {
        std::uint64_t total = 0;
        for (auto c : counts)
            total += c;
        return index(counts, total);
    }

    [[nodiscard]] std::uint64_t index(std::span<const Count> counts, std::uint64_t total) const {
        if (total > covered_)
            throw std::out_of_range("CompositionIndexer: total exceeds table");
        // Offset of size s is the number of smaller distributions, C(s - 1 + n, n).
        std::uint64_t rank = total == 0 ? 0 : choose(total - 1 + n_, n_);
        std::uint64_t remaining = total;
        for (std::size_t i = 0; i + 1 < n_; ++i) {
            const std::uint64_t c = counts[i];
            // Compositions with a larger entry at position i come first.
            if (c < remaining)
                rank += choose(remaining - c - 1 + (n_ - i - 1), n_ - i - 1);
            remaining -= c;
        }
        return rank;
    }

private:
    [[nodiscard]] std::uint64_t choose(std::uint64_t a, std::size_t b) const { return table_[a * (n_ + 1) + b]; }

    std::size_t n_;
    std::size_t covered_ = 0;
    std::size_t rows_ = 0;
    std::vector<std::uint64_t> table_;
};

} // namespace pebble
