#include "iocbench/jsource/rename.hpp"

#include <cstdio>
#include <set>

namespace iocbench::js {

std::vector<std::string> used_names(const Node& root) {
    std::set<std::string> names;
    walk(root, [&](const Node& n) {
        if (n.is(NodeKind::Identifier) || n.is(NodeKind::PropName)) names.insert(n.text);
        return true;
    });
    return {names.begin(), names.end()};
}

namespace {

std::string fresh_name(Rng& rng) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "_0x%06llx", static_cast<unsigned long long>(rng.below(1U << 24)));
    return buf;
}

}  // namespace

RenameResult rename_identifiers(const Ast& ast, const ScopeTable& scopes, Rng& rng) {
    RenameResult result{ast, {}};
    const auto existing = used_names(ast.root);
    std::set<std::string> taken(existing.begin(), existing.end());

    std::vector<std::string> new_names(scopes.bindings.size());
    for (std::size_t i = 0; i < scopes.bindings.size(); ++i) {
        const Binding& b = scopes.bindings[i];
        if (!scopes.renameable(b)) continue;
        std::string name;
        do {
            name = fresh_name(rng);
        } while (taken.count(name) != 0);
        taken.insert(name);
        new_names[i] = name;
        result.map.push_back(RenameEntry{b.name, name, b.scope_id});
    }

    std::size_t ordinal = 0;
    walk(result.ast.root, [&](Node& n) {
        n.comments.clear();
        if (n.is(NodeKind::Property) && n.has(flag::kShorthand)) {
            n.flags &= ~flag::kShorthand;
        }
        if (n.is(NodeKind::Identifier)) {
            const int b = ordinal < scopes.resolution.size() ? scopes.resolution[ordinal] : -1;
            ++ordinal;
            if (b >= 0 && !new_names[static_cast<std::size_t>(b)].empty()) {
                n.text = new_names[static_cast<std::size_t>(b)];
            }
        }
        return true;
    });
    return result;
}

}  // namespace iocbench::js
