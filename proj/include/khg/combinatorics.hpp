#pragma once

// Binomial coefficients, colexicographic ranking of sorted subsets, and
// subset iteration used by the degree machinery and the generators.

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace khg {

// C(n, r) in unsigned 64-bit arithmetic; asserts on overflow in debug builds.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        std::uint64_t q = acc / i;
        std::uint64_t rem = acc % i;
        assert(q <= UINT64_MAX / (n - r + i));
        acc = q * (n - r + i) + rem * (n - r + i) / i;
    }
    return acc;
}

// Table of C(i, j) for i <= n, j <= r, for repeated ranking.
class BinomialTable {
public:
    BinomialTable() : n_(0), r_(0) {}
    BinomialTable(std::size_t n, std::size_t r) : n_(n), r_(r), c_((n + 1) * (r + 1), 0) {
        for (std::size_t i = 0; i <= n; ++i) {
            at(i, 0) = 1;
            for (std::size_t j = 1; j <= r && j <= i; ++j)
                at(i, j) = (j == i) ? 1 : at(i - 1, j - 1) + at(i - 1, j);
        }
    }

    std::uint64_t operator()(std::size_t i, std::size_t j) const {
        if (j > i) return 0;
        assert(i <= n_ && j <= r_);
        return c_[i * (r_ + 1) + j];
    }

private:
    std::uint64_t& at(std::size_t i, std::size_t j) { return c_[i * (r_ + 1) + j]; }
    std::size_t n_, r_;
    std::vector<std::uint64_t> c_;
};

// Colex rank of a strictly increasing r-subset (0-based elements):
// rank = sum_j C(s[j], j+1). Bijective with 0..C(n,r)-1.
inline std::uint64_t colex_rank(std::span<const int> sorted, const BinomialTable& tab) {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < sorted.size(); ++j)
        r += tab(static_cast<std::size_t>(sorted[j]), j + 1);
    return r;
}

// Iterate all strictly increasing r-subsets of {0..n-1} in colex order.
// f receives a span over the current subset; iteration index equals the
// subset's colex rank.
template <typename F>
void for_each_subset(int n, int r, F&& f) {
    if (r == 0 || r > n) return;
    std::vector<int> c(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = i;
    while (true) {
        f(std::span<const int>(c));
        // colex successor: bump the lowest element that can move
        int j = 0;
        while (j + 1 < r && c[static_cast<std::size_t>(j)] + 1 == c[static_cast<std::size_t>(j) + 1]) ++j;
        if (c[static_cast<std::size_t>(j)] + 1 >= n && j + 1 == r) break;
        ++c[static_cast<std::size_t>(j)];
        if (c[static_cast<std::size_t>(j)] >= n) break;
        for (int i = 0; i < j; ++i) c[static_cast<std::size_t>(i)] = i;
    }
}

} // namespace khg
