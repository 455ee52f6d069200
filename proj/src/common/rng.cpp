#include "iocbench/rng.hpp"

#include <limits>

namespace iocbench {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound <= 1) {
        return 0;
    }
    // Reject the tail so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % bound);
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
}

std::vector<std::uint8_t> Rng::bytes(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) {
        b = byte();
    }
    return out;
}

}  // namespace iocbench
