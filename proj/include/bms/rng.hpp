#pragma once

#include <cstdint>
#include <random>

namespace bms {

// Seeded generator with portable uniform helpers (the distributions in
// <random> are implementation-defined across standard libraries, which would
// break frozen expected values).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, bound), bound >= 1, without modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t x = eng_();
            if (x >= threshold) return x % bound;
        }
    }

    // Uniform integer in [lo, hi], inclusive.
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in (0, 1]; never returns 0, so ln(p) is finite.
    double open_unit() { return 1.0 - static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

}  // namespace bms
