#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

namespace totcol {

// Dynamic bitset with capacity fixed at construction. Rows of these back the
// dense-graph adjacency fast path and the per-vertex missing-color sets.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int capacity() const { return nbits_; }

    bool test(int i) const { return (w_[unsigned(i) >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[unsigned(i) >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(int i) { w_[unsigned(i) >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void assign(int i, bool on) { on ? set(i) : reset(i); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    int count() const {
        int c = 0;
        for (auto x : w_) c += __builtin_popcountll(x);
        return c;
    }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }

    bool none() const { return !any(); }

    // Lowest set bit, or -1.
    int first() const {
        for (std::size_t b = 0; b < w_.size(); ++b)
            if (w_[b]) return int(b * 64) + __builtin_ctzll(w_[b]);
        return -1;
    }

    // Lowest set bit strictly greater than i, or -1.
    int next(int i) const {
        ++i;
        if (i >= nbits_) return -1;
        std::size_t b = unsigned(i) >> 6;
        std::uint64_t cur = w_[b] & (~std::uint64_t(0) << (i & 63));
        while (true) {
            if (cur) return int(b * 64) + __builtin_ctzll(cur);
            if (++b >= w_.size()) return -1;
            cur = w_[b];
        }
    }

    bool intersects(const Bitset& o) const {
        std::size_t m = std::min(w_.size(), o.w_.size());
        for (std::size_t b = 0; b < m; ++b)
            if (w_[b] & o.w_[b]) return true;
        return false;
    }

    // Lowest bit set in both, or -1.
    int first_common(const Bitset& o) const {
        std::size_t m = std::min(w_.size(), o.w_.size());
        for (std::size_t b = 0; b < m; ++b)
            if (std::uint64_t x = w_[b] & o.w_[b]; x)
                return int(b * 64) + __builtin_ctzll(x);
        return -1;
    }

    int count_common(const Bitset& o) const {
        std::size_t m = std::min(w_.size(), o.w_.size());
        int c = 0;
        for (std::size_t b = 0; b < m; ++b) c += __builtin_popcountll(w_[b] & o.w_[b]);
        return c;
    }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t b = 0; b < w_.size() && b < o.w_.size(); ++b) w_[b] |= o.w_[b];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t b = 0; b < w_.size(); ++b) w_[b] &= b < o.w_.size() ? o.w_[b] : 0;
        return *this;
    }
    // this &= ~o
    Bitset& subtract(const Bitset& o) {
        for (std::size_t b = 0; b < w_.size() && b < o.w_.size(); ++b) w_[b] &= ~o.w_[b];
        return *this;
    }

    template <class F>
    void for_each(F f) const {
        for (std::size_t b = 0; b < w_.size(); ++b) {
            std::uint64_t x = w_[b];
            while (x) {
                f(int(b * 64) + __builtin_ctzll(x));
                x &= x - 1;
            }
        }
    }

    friend bool operator==(const Bitset& a, const Bitset& b) = default;

private:
    int nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace totcol
