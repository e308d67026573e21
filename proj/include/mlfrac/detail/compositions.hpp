#pragma once

// Enumeration of integer compositions (k_1,...,k_m) with sum k, plus
// predecessor ranks for the block-to-block product recurrence of the
// multinomial series.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mlfrac::detail {

// C(n, r) for small r; exact in double as long as the product stays
// below 2^53, which the series term cap guarantees.
inline double small_binom(std::int64_t n, int r) {
    if (r < 0 || n < r) return 0.0;
    double acc = 1.0;
    for (int i = 1; i <= r; ++i)
        acc = acc * static_cast<double>(n - r + i) / static_cast<double>(i);
    return acc;
}

// One degree block: all compositions of k into m nonnegative parts in
// decreasing lexicographic order, with the rank of each (k - e_j)
// predecessor in the previous block precomputed (-1 when k_j = 0).
struct CompositionBlock {
    int k = 0;
    int m = 1;
    std::size_t count = 0;
    std::vector<int> parts;         // count x m, row-major
    std::vector<std::int64_t> pred; // count x m; rank in block k-1 of (comp - e_j)

    const int* comp(std::size_t i) const { return parts.data() + i * m; }
};

class CompositionEnumerator {
public:
    explicit CompositionEnumerator(int m) : m_(m) {
        if (m < 1) throw std::invalid_argument("compositions: m must be >= 1");
    }

    static std::size_t block_size(int k, int m) {
        return static_cast<std::size_t>(small_binom(k + m - 1, m - 1));
    }

    // rank of a composition of k among all compositions of k into m parts,
    // in the enumeration order produced by block()
    std::int64_t rank(const int* c, int k) const {
        std::int64_t r = 0;
        int rem = k;
        for (int j = 0; j < m_ - 1; ++j) {
            int tail = m_ - j - 1; // parts after position j
            // compositions whose part j exceeds c[j] come first:
            // sum_{w=0}^{rem-c[j]-1} C(w + tail - 1, tail - 1) = C(rem - c[j] - 1 + tail, tail)
            r += static_cast<std::int64_t>(small_binom(rem - c[j] - 1 + tail, tail));
            rem -= c[j];
        }
        return r;
    }

    CompositionBlock block(int k) const {
        CompositionBlock b;
        b.k = k;
        b.m = m_;
        std::vector<int> c(static_cast<std::size_t>(m_), 0);
        c[0] = k;
        while (true) {
            for (int j = 0; j < m_; ++j) b.parts.push_back(c[j]);
            for (int j = 0; j < m_; ++j) {
                if (c[j] == 0) {
                    b.pred.push_back(-1);
                } else {
                    c[j] -= 1;
                    b.pred.push_back(k > 0 ? rank(c.data(), k - 1) : -1);
                    c[j] += 1;
                }
            }
            if (!next(c)) break;
        }
        b.count = b.parts.size() / static_cast<std::size_t>(m_);
        return b;
    }

    int parts_count() const { return m_; }

private:
    bool next(std::vector<int>& c) const {
        if (m_ == 1) return false;
        int j = m_ - 2;
        while (j >= 0 && c[j] == 0) --j;
        if (j < 0) return false;
        c[j] -= 1;
        int tail = 1;
        for (int i = j + 1; i < m_; ++i) { tail += c[i]; c[i] = 0; }
        c[j + 1] = tail;
        return true;
    }

    int m_;
};

} // namespace mlfrac::detail
