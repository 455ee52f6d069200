#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace iocbench {

/// Seeded generator used for every random choice in the toolchain.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard.
/// The std distributions are implementation-defined, so bounded draws are
/// done here by rejection sampling to keep outputs identical across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi);

    std::uint8_t byte() { return static_cast<std::uint8_t>(engine_() & 0xffU); }

    std::vector<std::uint8_t> bytes(std::size_t n);

    bool coin() { return (engine_() & 1U) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(below(items.size()))];
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace iocbench
