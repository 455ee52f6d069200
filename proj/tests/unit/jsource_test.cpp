#include "doctest.h"

#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/jsource/emitter.hpp"
#include "iocbench/jsource/parser.hpp"
#include "test_support.hpp"

using namespace iocbench;
using namespace iocbench::js;

namespace {

std::vector<Token> significant(const std::vector<Token>& tokens) {
    std::vector<Token> out;
    for (const auto& t : tokens) {
        if (t.kind != TokenKind::Whitespace) out.push_back(t);
    }
    return out;
}

void check_roundtrip(const std::string& src) {
    CAPTURE(src);
    const Ast a = parse_source(src);
    const std::string once = emit(a);
    CAPTURE(once);
    const Ast b = parse_source(once);
    CHECK_MESSAGE(same_structure(a.root, b.root), dump(a.root) << "\n" << dump(b.root));
    CHECK(emit(b) == once);
}

ErrorCode error_of(std::string_view src) {
    try {
        parse_source(src);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("tokenize simple declaration") {
    const auto toks = tokenize("var a=1;");
    REQUIRE(toks.size() == 6);
    CHECK(toks[0].kind == TokenKind::Keyword);
    CHECK(toks[0].text == "var");
    CHECK(toks[1].kind == TokenKind::Whitespace);
    CHECK(toks[2].kind == TokenKind::Identifier);
    CHECK(toks[2].text == "a");
    CHECK(toks[3].kind == TokenKind::Punctuator);
    CHECK(toks[3].text == "=");
    CHECK(toks[4].kind == TokenKind::Number);
    CHECK(toks[4].text == "1");
    CHECK(toks[5].kind == TokenKind::Punctuator);
    CHECK(toks[5].text == ";");
    CHECK(toks[4].span == Span{6, 7});
}

TEST_CASE("unterminated string is a lex error at its start") {
    try {
        tokenize("\"un terminated");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LexError);
        CHECK(e.offset() == 0);
    }
    try {
        tokenize("x = 1; /* open");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LexError);
        CHECK(e.offset() == 7);
    }
}

TEST_CASE("regex and division are told apart") {
    auto t = significant(tokenize("a = b / c / d; r = /x\\/y/g.test(s);"));
    CHECK(t[3].kind == TokenKind::Punctuator);
    CHECK(t[5].kind == TokenKind::Punctuator);
    CHECK(t[10].kind == TokenKind::Regex);
    CHECK(t[10].text == "/x\\/y/g");
    t = significant(tokenize("if (x) /re/.test(y)"));
    CHECK(t[4].kind == TokenKind::Regex);
}

TEST_CASE("template literal with nested substitution lexes as one token") {
    const auto t = significant(tokenize("x = `a${ {b: `c${d}`}.b }e`;"));
    REQUIRE(t.size() == 4);
    CHECK(t[2].kind == TokenKind::Template);
}

TEST_CASE("fixture files lex losslessly and parse") {
    const auto files = testing::fixture_js_files();
    REQUIRE(files.size() == 12);
    for (const auto& f : files) {
        CAPTURE(f.string());
        const std::string text = read_file(f);
        std::string joined;
        for (const auto& tok : tokenize(text)) joined += tok.text;
        CHECK(joined == text);
        CHECK_NOTHROW(parse_source(text));
    }
}

TEST_CASE("parse shapes") {
    Ast a = parse_source("var a = 1;");
    REQUIRE(a.root.kids.size() == 1);
    CHECK(a.root.kids[0].is(NodeKind::VarDecl));
    CHECK(dump(a.root) == "(Program (VarDecl \"var\" (VarDeclarator (Identifier \"a\") (NumberLit \"1\"))))");

    a = parse_source("function f(x){ if(x){return x} return 0 }");
    const Node& fn = a.root.kids[0];
    REQUIRE(fn.is(NodeKind::FunctionDecl));
    const Node& body = fn.kids[2];
    REQUIRE(body.kids.size() == 2);
    CHECK(body.kids[0].is(NodeKind::If));
    CHECK(body.kids[0].kids[1].kids[0].is(NodeKind::Return));
    CHECK(body.kids[1].is(NodeKind::Return));
}

TEST_CASE("spans point into the source") {
    const std::string src = "var abc = foo(1);";
    const Ast a = parse_source(src);
    const Node& decl = a.root.kids[0].kids[0];
    CHECK(src.substr(decl.kids[0].span.begin, decl.kids[0].span.end - decl.kids[0].span.begin) == "abc");
    const Node& call = decl.kids[1];
    CHECK(src.substr(call.span.begin, call.span.end - call.span.begin) == "foo(1)");
}

TEST_CASE("asi and restricted productions") {
    Ast a = parse_source("var a = 1\nvar b = 2\nreturnish()\n");
    CHECK(a.root.kids.size() == 3);
    a = parse_source("function f(){ return\n1 }");
    const Node& body = a.root.kids[0].kids[2];
    REQUIRE(body.kids.size() == 2);
    CHECK(body.kids[0].kids[0].none());
    a = parse_source("x\n++y");
    REQUIRE(a.root.kids.size() == 2);
}

TEST_CASE("out of subset constructs are reported") {
    CHECK(error_of("import x from 'y';") == ErrorCode::ParseUnsupported);
    CHECK(error_of("async function f(){}") == ErrorCode::ParseUnsupported);
    CHECK(error_of("function* g(){}") == ErrorCode::ParseUnsupported);
    CHECK(error_of("var {a} = o;") == ErrorCode::ParseUnsupported);
    CHECK(error_of("a?.b") == ErrorCode::ParseUnsupported);
    CHECK(error_of("outer: for(;;){}") == ErrorCode::ParseUnsupported);
    CHECK(error_of("with (o) {}") == ErrorCode::ParseUnsupported);
    CHECK(error_of("var x = (1;") == ErrorCode::ParseError);
    CHECK(error_of("if (") == ErrorCode::ParseError);
    CHECK(error_of("var = 3;") == ErrorCode::ParseError);
}

TEST_CASE("string cooking") {
    CHECK(cook_string_literal("\"a\\nb\"") == "a\nb");
    CHECK(cook_string_literal("'\\x41\\u0042\\u{43}'") == "ABC");
    CHECK(cook_string_literal("'\\uD83D\\uDE00'") == "\xF0\x9F\x98\x80");
    CHECK(cook_string_literal("'it\\'s'") == "it's");
    CHECK(cook_string_literal("'a\\\nb'") == "ab");
}

TEST_CASE("quote_string escapes what it must") {
    CHECK(quote_string("a\"b\\c") == "\"a\\\"b\\\\c\"");
    CHECK(quote_string("\n\t\x01") == "\"\\n\\t\\x01\"");
    CHECK(quote_string("\xE2\x80\xA8") == "\"\\u2028\"");
    CHECK(cook_string_literal(quote_string("\xED\xA0\xBD")) == "\xED\xA0\xBD");
}

TEST_CASE("emit roundtrips the fixture corpus deterministically") {
    for (const auto& f : testing::fixture_js_files()) {
        CAPTURE(f.string());
        const Ast a = parse_source(read_file(f));
        const std::string e1 = emit(a);
        const std::string e2 = emit(a);
        CHECK(e1 == e2);
        const Ast b = parse_source(e1);
        CHECK(same_structure(a.root, b.root));
    }
}

TEST_CASE("emit roundtrips tricky precedence") {
    const char* cases[] = {
        "a = (b, c);",
        "x = (a + b) * c - d / (e % f);",
        "x = a - (b - c);",
        "x = (a ** b) ** c; y = a ** b ** c; z = (-a) ** 2;",
        "x = (a ?? b) || c; y = a ?? (b && c);",
        "x = a ? b : c ? d : e; y = (a ? b : c) ? d : e;",
        "(function(){ return 1; })();",
        "({ a: 1 }).a;",
        "f = () => ({ a: 1 }); g = x => x * 2; h = (a, b = 2, ...r) => { return a; };",
        "new (f())(); new a.b.C(1); new (a().b)(); (new Foo).bar;",
        "1..toString(); (1).toString(); x = 1.5.toFixed(2);",
        "x = - -y; z = +(+y); w = -(--y); v = typeof typeof x; u = !(a && b);",
        "for (var i = (\"a\" in o) ? 1 : 0; i < 3; i++) {}",
        "for (x of [1, 2]) ; for (var k in o) if (k) continue; else break;",
        "do x++; while (x < 3)",
        "a = b = c += 2;",
        "x = (a, b) => a + b;",
        "x = `t ${a + `in ${b}`} end`;",
        "var o = { 'a-b': 1, 2: 3, [k]: 4, m() { return 1; }, get g() { return 2; }, set g(v) {}, s, ...rest };",
        "class A extends (B || C) { constructor(x) { super(x); } static make() { return new A(); } get v() { return 1; } }",
        "switch (x) { case 1: case 2: y(); break; default: z(); }",
        "try { a(); } catch { b(); } finally { c(); }",
        "try { a(); } catch (e) { throw e; }",
        "if (a) { b(); } else if (c) d(); else { e(); }",
        "if (a) if (b) c(); else d();",
        "x = a instanceof B && !(c in d);",
        "x = (await_, yield_) => 1;",
        "x = /ab+c/gi.test(s) ? 1 : 2;",
        "label = a\n(b)",
        "var a = [1, [2, 3], ...xs];",
        "x = (a = 1) ? b : c;",
        "x = typeof (a + b);",
        "x = (a || b) ? c : d;",
        "x = a.b[c](d).e;",
        "x = \"\\u2028\\0\\x7f\";",
        "x = void 0, delete o.p;",
    };
    for (const char* c : cases) {
        check_roundtrip(c);
    }
}

TEST_CASE("dangling else binds to the nearest if after emission") {
    const Ast a = parse_source("if (a) { if (b) c(); } else d();");
    const Ast b = parse_source(emit(a));
    CHECK(same_structure(a.root, b.root));
}

TEST_CASE("injected string table stays parseable") {
    Ast a = parse_source("function f(){ return 1; }");
    Node arr(NodeKind::ArrayLit, {}, {make_string("init"), make_string("x\"y"), make_string("ready")});
    a.root.kids.insert(a.root.kids.begin(), make_var("var", "T", std::move(arr)));
    const Ast b = parse_source(emit(a));
    CHECK(same_structure(a.root, b.root));
}

TEST_CASE("statement comments survive emission") {
    const Ast a = parse_source("// head\nvar a = 1; /* mid */ f();\n// tail\n");
    const std::string out = emit(a);
    CHECK(out.find("// head") != std::string::npos);
    CHECK(out.find("/* mid */") != std::string::npos);
    CHECK(out.find("// tail") != std::string::npos);
}
