#include "doctest.h"

#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/jsource/emitter.hpp"
#include "iocbench/jsource/insertion.hpp"
#include "iocbench/jsource/parser.hpp"
#include "iocbench/jsource/rename.hpp"
#include "iocbench/jsource/scope.hpp"
#include "test_support.hpp"

#include <map>
#include <regex>
#include <set>

using namespace iocbench;
using namespace iocbench::js;

namespace {

std::vector<std::string> identifier_texts(const Node& root) {
    std::vector<std::string> out;
    walk(root, [&](const Node& n) {
        if (n.is(NodeKind::Identifier)) out.push_back(n.text);
        return true;
    });
    return out;
}

std::vector<std::string> string_values(const Node& root) {
    std::vector<std::string> out;
    walk(root, [&](const Node& n) {
        if (n.is(NodeKind::StringLit) || n.is(NodeKind::PropName)) out.push_back(n.text);
        return true;
    });
    return out;
}

}  // namespace

TEST_CASE("binding with declaration and reference") {
    const Ast a = parse_source("var ip=\"1.2.3.4\"; send(ip);");
    const ScopeTable t = resolve_scopes(a);
    const auto ip = t.find("ip");
    REQUIRE(ip.size() == 1);
    CHECK(ip[0]->references.size() == 2);
    CHECK(t.find("send").empty());
    CHECK(t.globals.count("send") == 1);
}

TEST_CASE("shadowing yields distinct bindings") {
    const Ast a = parse_source("var a; function f(a){return a}");
    const ScopeTable t = resolve_scopes(a);
    const auto as = t.find("a");
    REQUIRE(as.size() == 2);
    CHECK(as[0]->scope_id != as[1]->scope_id);
    CHECK(as[0]->references.size() == 1);
    CHECK(as[1]->references.size() == 2);
    CHECK(as[1]->kind == BindingKind::Param);
}

TEST_CASE("member property names are not bindings") {
    const Ast a = parse_source("var o = [1]; var n = o.length; console.log(n);");
    const ScopeTable t = resolve_scopes(a);
    CHECK(t.find("length").empty());
    CHECK(t.find("console").empty());
    CHECK(t.globals.count("console") == 0);
    CHECK(t.builtins.count("console") == 1);
}

TEST_CASE("every identifier resolves to one binding or the global set") {
    for (const auto& f : testing::fixture_js_files()) {
        const Ast a = parse_source(read_file(f));
        const ScopeTable t = resolve_scopes(a);
        const auto ids = identifier_texts(a.root);
        REQUIRE(ids.size() == t.resolution.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const int b = t.resolution[i];
            if (b >= 0) {
                CHECK(t.bindings[static_cast<std::size_t>(b)].name == ids[i]);
            } else {
                CHECK((t.builtins.count(ids[i]) + t.globals.count(ids[i])) == 1);
            }
        }
    }
}

TEST_CASE("hoisting and block scoping") {
    const Ast a = parse_source(
        "function f(){ g(); if (x) { var v = 1; let w = 2; w++; } return v; function g(){} }\n"
        "for (let i = 0; i < 2; i++) { i; }\n"
        "try {} catch (e) { e; }\n"
        "var h = function h2() { return h2; };\n");
    const ScopeTable t = resolve_scopes(a);
    REQUIRE(t.find("v").size() == 1);
    CHECK(t.find("v")[0]->references.size() == 2);
    CHECK(t.find("w")[0]->references.size() == 2);
    CHECK(t.find("g")[0]->references.size() == 2);
    CHECK(t.find("i")[0]->references.size() == 4);
    CHECK(t.find("e")[0]->kind == BindingKind::CatchParam);
    CHECK(t.find("h2")[0]->references.size() == 2);
    CHECK(t.find("h2")[0]->kind == BindingKind::FunctionName);
    CHECK(t.globals.count("x") == 1);
}

TEST_CASE("conflicting lexical declarations are scope errors") {
    const char* bad[] = {"let a; var a;", "const a = 1; let a = 2;", "function f(x){ let x; }",
                         "{ let a; { var a; } }", "class C {} var C;"};
    for (const char* src : bad) {
        CAPTURE(src);
        try {
            resolve_scopes(parse_source(src));
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ScopeError);
        }
    }
    CHECK_NOTHROW(resolve_scopes(parse_source("var a; var a; function a(){}")));
    CHECK_NOTHROW(resolve_scopes(parse_source("let a; { let a; }")));
}

TEST_CASE("rename replaces declaration and references consistently") {
    const Ast a = parse_source("var ip=1; use(ip)");
    Rng rng(7);
    const RenameResult r = rename_identifiers(a, resolve_scopes(a), rng);
    REQUIRE(r.map.size() == 1);
    const auto ids = identifier_texts(r.ast.root);
    CHECK(ids[0] == r.map[0].renamed);
    CHECK(ids[2] == r.map[0].renamed);
    CHECK(ids[1] == "use");
    CHECK(std::regex_match(r.map[0].renamed, std::regex("_0x[0-9a-f]{6}")));
}

TEST_CASE("rename is deterministic for a seed") {
    const Ast a = parse_source(read_file(testing::fixture_corpus() / "strings" / "caesar.js"));
    const ScopeTable t = resolve_scopes(a);
    Rng r1(99);
    Rng r2(99);
    Rng r3(100);
    const std::string e1 = emit(rename_identifiers(a, t, r1).ast);
    CHECK(e1 == emit(rename_identifiers(a, t, r2).ast));
    CHECK(e1 != emit(rename_identifiers(a, t, r3).ast));
}

TEST_CASE("rename property: bijection, strings and properties untouched, reparses") {
    for (const auto& f : testing::fixture_js_files()) {
        CAPTURE(f.string());
        const Ast a = parse_source(read_file(f));
        const ScopeTable t = resolve_scopes(a);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Rng rng(seed);
            const RenameResult r = rename_identifiers(a, t, rng);
            std::set<std::string> fresh;
            for (const auto& e : r.map) fresh.insert(e.renamed);
            CHECK(fresh.size() == r.map.size());

            const auto before = identifier_texts(a.root);
            const auto after = identifier_texts(r.ast.root);
            REQUIRE(before.size() == after.size());
            // Same binding -> same new name; builtins and globals unchanged.
            std::map<int, std::string> seen;
            for (std::size_t i = 0; i < before.size(); ++i) {
                const int b = t.resolution[i];
                if (b < 0) {
                    CHECK(after[i] == before[i]);
                    continue;
                }
                auto [it, inserted] = seen.emplace(b, after[i]);
                CHECK(it->second == after[i]);
                CHECK(after[i] != before[i]);
            }
            CHECK(string_values(a.root) == string_values(r.ast.root));
            const Ast re = parse_source(emit(r.ast));
            CHECK(same_structure(re.root, r.ast.root));
        }
    }
}

TEST_CASE("rename drops comments and expands shorthand") {
    const Ast a = parse_source("// note\nvar s = 1; var o = { s };");
    Rng rng(3);
    const RenameResult r = rename_identifiers(a, resolve_scopes(a), rng);
    const std::string out = emit(r.ast);
    CHECK(out.find("note") == std::string::npos);
    CHECK(out.find("{ s: _0x") != std::string::npos);
}

TEST_CASE("insertion points") {
    CHECK(collect_insertion_points(parse_source("")).size() == 1);
    CHECK(collect_insertion_points(parse_source(""))[0].kind == InsertionKind::TopLevelVariable);

    const Ast a = parse_source("function f(){ return 1; } var o = { a: 1 };");
    const auto pts = collect_insertion_points(a);
    REQUIRE(pts.size() >= 3);
    CHECK(pts[1].kind == InsertionKind::FunctionBody);
    CHECK(node_at(a.root, pts[1].anchor).is(NodeKind::Block));
    CHECK(pts[2].kind == InsertionKind::ObjectProperty);
    CHECK(node_at(a.root, pts[2].anchor).is(NodeKind::ObjectLit));
    CHECK(string_table_point().kind == InsertionKind::StringTable);
    CHECK(insertion_kind_from_string("object-property") == InsertionKind::ObjectProperty);
}

TEST_CASE("inserting at every point keeps the program parseable") {
    for (const auto& f : testing::fixture_js_files()) {
        const Ast a = parse_source(read_file(f));
        for (const auto& p : collect_insertion_points(a)) {
            Ast b = a;
            Node& anchor = node_at(b.root, p.anchor);
            if (p.kind == InsertionKind::ObjectProperty) {
                anchor.kids.push_back(make_property("k", make_string("v")));
            } else {
                anchor.kids.insert(anchor.kids.begin() + static_cast<std::ptrdiff_t>(after_directives(anchor)),
                                   make_var("var", "k", make_string("v")));
            }
            const Ast c = parse_source(emit(b));
            CHECK(same_structure(b.root, c.root));
        }
    }
}
