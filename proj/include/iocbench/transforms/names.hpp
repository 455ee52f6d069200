#pragma once

#include "iocbench/jsource/ast.hpp"
#include "iocbench/rng.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench::transforms {

/// Hands out identifiers that clash with nothing already in a program, nor
/// with builtins, keywords, or earlier allocations.
class NameAllocator {
public:
    explicit NameAllocator(const js::Node& root);

    /// base, or base2, base3, ... when taken.
    std::string fresh(std::string_view base);
    /// fresh() on a seeded pick from bases.
    std::string pick(const std::vector<std::string>& bases, Rng& rng);
    bool taken(std::string_view name) const;
    void reserve(const js::Node& subtree);

private:
    std::set<std::string, std::less<>> taken_;
};

}  // namespace iocbench::transforms
