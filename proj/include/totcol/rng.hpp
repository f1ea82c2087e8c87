#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace totcol {

// All randomness in the artifact flows from one of these, seeded explicitly.
// std::mt19937_64 output is fully specified, so runs are reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform in [0, bound) without distribution objects (keeps the stream
    // layout identical across standard libraries).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound + 1) % bound;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x > limit);
        return x % bound;
    }

    int range(int lo, int hi) { return lo + int(below(std::uint64_t(hi - lo + 1))); }

    bool chance(double p) { return double(eng_()) < p * 18446744073709551616.0; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    Rng fork() { return Rng(eng_()); }

private:
    std::mt19937_64 eng_;
};

} // namespace totcol
