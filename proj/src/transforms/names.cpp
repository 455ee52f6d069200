#include "iocbench/transforms/names.hpp"

#include "iocbench/jsource/rename.hpp"
#include "iocbench/jsource/scope.hpp"
#include "iocbench/jsource/token.hpp"

namespace iocbench::transforms {

NameAllocator::NameAllocator(const js::Node& root) {
    reserve(root);
    for (const auto& b : js::builtin_names()) taken_.insert(b);
}

void NameAllocator::reserve(const js::Node& subtree) {
    for (auto& n : js::used_names(subtree)) taken_.insert(std::move(n));
}

bool NameAllocator::taken(std::string_view name) const {
    return taken_.count(name) != 0 || js::is_keyword(name);
}

std::string NameAllocator::fresh(std::string_view base) {
    std::string name(base);
    for (int i = 2; taken(name); ++i) {
        name = std::string(base) + std::to_string(i);
    }
    taken_.insert(name);
    return name;
}

std::string NameAllocator::pick(const std::vector<std::string>& bases, Rng& rng) {
    return fresh(rng.pick(bases));
}

}  // namespace iocbench::transforms
