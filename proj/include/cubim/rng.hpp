#pragma once

#include <cstdint>
#include <random>

namespace cubim {

// Deterministic random source shared by all samplers. mt19937_64 has a
// standard-mandated output sequence; the bounded draws below avoid
// std::uniform_int_distribution, whose mapping is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling: discard the partial top interval
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = gen_();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [lo, hi], inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(below(span));
    }

    // Independent stream for a subtask; deterministic in (parent state, tag).
    Rng child(std::uint64_t tag) {
        return Rng(next() ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
    }

private:
    std::mt19937_64 gen_;
};

} // namespace cubim
