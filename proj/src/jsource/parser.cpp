#include "iocbench/jsource/parser.hpp"

#include "iocbench/error.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace iocbench::js {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string cook_string_literal(std::string_view raw) {
    std::string out;
    if (raw.size() < 2) {
        return out;
    }
    const std::string_view body = raw.substr(1, raw.size() - 2);
    std::uint32_t pending_high = 0;
    auto flush_high = [&] {
        if (pending_high != 0) {
            append_utf8(out, pending_high);
            pending_high = 0;
        }
    };
    for (std::size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (c != '\\') {
            flush_high();
            out += c;
            continue;
        }
        if (i + 1 >= body.size()) {
            break;
        }
        const char e = body[++i];
        std::uint32_t cp = 0;
        bool is_code_unit = false;
        switch (e) {
            case 'n': flush_high(); out += '\n'; break;
            case 't': flush_high(); out += '\t'; break;
            case 'r': flush_high(); out += '\r'; break;
            case 'b': flush_high(); out += '\b'; break;
            case 'f': flush_high(); out += '\f'; break;
            case 'v': flush_high(); out += '\v'; break;
            case '0':
                flush_high();
                out += '\0';
                break;
            case '\r':
                flush_high();
                if (i + 1 < body.size() && body[i + 1] == '\n') {
                    ++i;
                }
                break;
            case '\n':
                flush_high();
                break;
            case 'x':
                if (i + 2 < body.size() && hex_value(body[i + 1]) >= 0 && hex_value(body[i + 2]) >= 0) {
                    cp = static_cast<std::uint32_t>(hex_value(body[i + 1]) * 16 + hex_value(body[i + 2]));
                    i += 2;
                    is_code_unit = true;
                } else {
                    flush_high();
                    out += e;
                }
                break;
            case 'u':
                if (i + 1 < body.size() && body[i + 1] == '{') {
                    std::size_t j = i + 2;
                    while (j < body.size() && body[j] != '}') {
                        cp = cp * 16 + static_cast<std::uint32_t>(std::max(0, hex_value(body[j])));
                        ++j;
                    }
                    i = j;
                    is_code_unit = true;
                } else if (i + 4 < body.size()) {
                    for (std::size_t k = 1; k <= 4; ++k) {
                        cp = cp * 16 + static_cast<std::uint32_t>(std::max(0, hex_value(body[i + k])));
                    }
                    i += 4;
                    is_code_unit = true;
                } else {
                    flush_high();
                    out += e;
                }
                break;
            default:
                flush_high();
                out += e;
                break;
        }
        if (is_code_unit) {
            if (cp >= 0xD800 && cp <= 0xDBFF) {
                flush_high();
                pending_high = cp;
            } else if (cp >= 0xDC00 && cp <= 0xDFFF && pending_high != 0) {
                append_utf8(out, 0x10000 + ((pending_high - 0xD800) << 10) + (cp - 0xDC00));
                pending_high = 0;
            } else {
                flush_high();
                append_utf8(out, cp);
            }
        }
    }
    flush_high();
    return out;
}

namespace {

struct Tok {
    const Token* token = nullptr;
    bool newline_before = false;
    std::vector<std::string> comments;
};

bool contains_newline(std::string_view s) {
    return s.find('\n') != std::string_view::npos || s.find('\r') != std::string_view::npos ||
           s.find("\xE2\x80\xA8") != std::string_view::npos || s.find("\xE2\x80\xA9") != std::string_view::npos;
}

int binary_precedence(std::string_view op, bool no_in) {
    if (op == "??") return 1;
    if (op == "||") return 2;
    if (op == "&&") return 3;
    if (op == "|") return 4;
    if (op == "^") return 5;
    if (op == "&") return 6;
    if (op == "==" || op == "!=" || op == "===" || op == "!==") return 7;
    if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 8;
    if (op == "in") return no_in ? 0 : 8;
    if (op == "<<" || op == ">>" || op == ">>>") return 9;
    if (op == "+" || op == "-") return 10;
    if (op == "*" || op == "/" || op == "%") return 11;
    if (op == "**") return 12;
    return 0;
}

bool is_assign_op(std::string_view op) {
    static constexpr std::array<std::string_view, 16> kOps = {
        "=", "+=", "-=", "*=", "/=", "%=", "**=", "<<=", ">>=", ">>>=", "&=", "|=", "^=", "&&=", "||=", "?\?=",
    };
    for (auto o : kOps) {
        if (o == op) return true;
    }
    return false;
}

class Parser {
public:
    Parser(const std::vector<Token>& tokens, std::size_t base_offset) : base_(base_offset) {
        Tok pending;
        for (const auto& t : tokens) {
            if (t.kind == TokenKind::Whitespace) {
                pending.newline_before = pending.newline_before || contains_newline(t.text);
                continue;
            }
            if (t.kind == TokenKind::Comment) {
                pending.newline_before = pending.newline_before || contains_newline(t.text);
                pending.comments.push_back(t.text);
                continue;
            }
            pending.token = &t;
            toks_.push_back(std::move(pending));
            pending = Tok{};
        }
        eof_token_.kind = TokenKind::Whitespace;
        const std::size_t end = tokens.empty() ? 0 : tokens.back().span.end;
        eof_token_.span = {end, end};
        pending.token = &eof_token_;
        pending.newline_before = true;
        eof_ = std::move(pending);
    }

    Ast parse_program() {
        Ast ast;
        ast.root.span.begin = base_;
        while (!at_eof()) {
            ast.root.kids.push_back(parse_statement());
        }
        ast.root.comments = eof_.comments;
        ast.root.span.end = base_ + eof_.token->span.end;
        return ast;
    }

    Node parse_standalone_expression() {
        Node e = parse_expression();
        if (!at_eof()) {
            fail("unexpected token in template substitution");
        }
        return e;
    }

private:
    std::vector<Tok> toks_;
    Tok eof_;
    Token eof_token_;
    std::size_t pos_ = 0;
    std::size_t base_ = 0;
    std::size_t last_end_ = 0;
    bool no_in_ = false;

    // ---- token access ----

    bool at_eof() const { return pos_ >= toks_.size(); }

    const Tok& cur() const { return at_eof() ? eof_ : toks_[pos_]; }
    Tok& cur_mut() { return at_eof() ? eof_ : toks_[pos_]; }

    const Tok& peek(std::size_t ahead = 1) const {
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eof_;
    }

    std::size_t offset() const { return base_ + cur().token->span.begin; }

    bool is_punct(const Tok& t, std::string_view p) const {
        return t.token != &eof_token_ && t.token->kind == TokenKind::Punctuator && t.token->text == p;
    }

    bool is_keyword(const Tok& t, std::string_view k) const {
        return t.token != &eof_token_ && t.token->kind == TokenKind::Keyword && t.token->text == k;
    }

    bool is_ident(const Tok& t, std::string_view name = {}) const {
        return t.token != &eof_token_ && t.token->kind == TokenKind::Identifier &&
               (name.empty() || t.token->text == name);
    }

    bool check(std::string_view p) const { return is_punct(cur(), p); }
    bool check_kw(std::string_view k) const { return is_keyword(cur(), k); }

    const Token& advance() {
        const Token& t = *cur().token;
        last_end_ = base_ + t.span.end;
        if (!at_eof()) {
            ++pos_;
        }
        return t;
    }

    bool accept(std::string_view p) {
        if (check(p)) {
            advance();
            return true;
        }
        return false;
    }

    void expect(std::string_view p) {
        if (!check(p)) {
            fail("expected '" + std::string(p) + "'");
        }
        advance();
    }

    void expect_kw(std::string_view k) {
        if (!check_kw(k)) {
            fail("expected '" + std::string(k) + "'");
        }
        advance();
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::string found = at_eof() ? "end of input" : "'" + cur().token->text + "'";
        throw Error(ErrorCode::ParseError, what + ", found " + found, offset());
    }

    [[noreturn]] void unsupported(const std::string& construct) const {
        throw Error(ErrorCode::ParseUnsupported, construct, offset());
    }

    Node start(NodeKind kind, std::string text = {}) {
        Node n(kind, std::move(text));
        n.span.begin = offset();
        return n;
    }

    Node finish(Node n) {
        n.span.end = last_end_;
        return n;
    }

    void consume_semicolon() {
        if (accept(";")) {
            return;
        }
        if (check("}") || at_eof() || cur().newline_before) {
            return;
        }
        fail("expected ';'");
    }

    std::string take_ident(std::string_view what) {
        if (check_kw("yield") || check_kw("await")) {
            unsupported("generator/async keyword '" + cur().token->text + "'");
        }
        if (!is_ident(cur())) {
            fail("expected " + std::string(what));
        }
        return advance().text;
    }

    Node binding_ident() {
        if (check("[") || check("{")) {
            unsupported("destructuring pattern");
        }
        return name_ident();
    }

    // Function and class names, where a pattern is simply an error.
    Node name_ident() {
        Node n = start(NodeKind::Identifier);
        n.text = take_ident("identifier");
        return finish(std::move(n));
    }

    // ---- statements ----

    Node parse_statement() {
        std::vector<std::string> comments = std::move(cur_mut().comments);
        cur_mut().comments.clear();
        Node s = parse_statement_inner();
        s.comments = std::move(comments);
        return s;
    }

    Node parse_statement_inner() {
        const Tok& t = cur();
        if (t.token->kind == TokenKind::Punctuator) {
            if (t.token->text == "{") return parse_block();
            if (t.token->text == ";") {
                Node n = start(NodeKind::EmptyStmt);
                advance();
                return finish(std::move(n));
            }
        }
        if (t.token->kind == TokenKind::Keyword) {
            const std::string& k = t.token->text;
            if (k == "var" || k == "let" || k == "const") {
                Node d = parse_var_decl();
                consume_semicolon();
                return finish(std::move(d));
            }
            if (k == "function") return parse_function(NodeKind::FunctionDecl);
            if (k == "class") return parse_class();
            if (k == "if") return parse_if();
            if (k == "for") return parse_for();
            if (k == "while") return parse_while();
            if (k == "do") return parse_do_while();
            if (k == "switch") return parse_switch();
            if (k == "return") return parse_return();
            if (k == "break" || k == "continue") return parse_jump();
            if (k == "throw") return parse_throw();
            if (k == "try") return parse_try();
            if (k == "import" || k == "export") unsupported("module syntax '" + k + "'");
            if (k == "with") unsupported("with statement");
            if (k == "debugger") unsupported("debugger statement");
        }
        if (is_ident(t, "async") && is_keyword(peek(), "function") && !peek().newline_before) {
            unsupported("async function");
        }
        if (is_ident(t) && is_punct(peek(), ":")) {
            unsupported("labeled statement");
        }
        Node n = start(NodeKind::ExprStmt);
        n.kids.push_back(parse_expression());
        consume_semicolon();
        return finish(std::move(n));
    }

    Node parse_block() {
        Node n = start(NodeKind::Block);
        expect("{");
        while (!check("}")) {
            if (at_eof()) fail("expected '}'");
            n.kids.push_back(parse_statement());
        }
        cur_mut().comments.clear();
        advance();
        return finish(std::move(n));
    }

    Node parse_var_decl() {
        Node n = start(NodeKind::VarDecl);
        n.text = advance().text;
        do {
            Node d = start(NodeKind::VarDeclarator);
            d.kids.push_back(binding_ident());
            if (accept("=")) {
                d.kids.push_back(parse_assignment());
            } else {
                d.kids.push_back(make_none());
            }
            n.kids.push_back(finish(std::move(d)));
        } while (accept(","));
        return finish(std::move(n));
    }

    Node parse_if() {
        Node n = start(NodeKind::If);
        advance();
        expect("(");
        n.kids.push_back(parse_expression());
        expect(")");
        n.kids.push_back(parse_statement());
        if (check_kw("else")) {
            advance();
            n.kids.push_back(parse_statement());
        } else {
            n.kids.push_back(make_none());
        }
        return finish(std::move(n));
    }

    Node parse_for() {
        Node n = start(NodeKind::For);
        advance();
        if (check_kw("await")) unsupported("for await");
        expect("(");
        Node init = make_none();
        if (check_kw("var") || check_kw("let") || check_kw("const")) {
            const bool saved = no_in_;
            no_in_ = true;
            init = parse_var_decl();
            no_in_ = saved;
            init = finish(std::move(init));
            const bool single = init.kids.size() == 1 && init.kids[0].kids[1].none();
            if (single && (is_ident(cur(), "of") || check_kw("in"))) {
                return parse_for_each(std::move(n), std::move(init));
            }
        } else if (!check(";")) {
            const bool saved = no_in_;
            no_in_ = true;
            init = parse_expression();
            no_in_ = saved;
            if (is_ident(cur(), "of") || check_kw("in")) {
                if (!init.is(NodeKind::Identifier) && !init.is(NodeKind::Member)) {
                    if (init.is(NodeKind::ArrayLit) || init.is(NodeKind::ObjectLit)) {
                        unsupported("destructuring pattern");
                    }
                    fail("invalid for-in/of target");
                }
                return parse_for_each(std::move(n), std::move(init));
            }
        }
        expect(";");
        n.kids.push_back(std::move(init));
        n.kids.push_back(check(";") ? make_none() : parse_expression());
        expect(";");
        n.kids.push_back(check(")") ? make_none() : parse_expression());
        expect(")");
        n.kids.push_back(parse_statement());
        return finish(std::move(n));
    }

    Node parse_for_each(Node n, Node left) {
        n.kind = is_ident(cur(), "of") ? NodeKind::ForOf : NodeKind::ForIn;
        advance();
        n.kids.push_back(std::move(left));
        n.kids.push_back(n.kind == NodeKind::ForOf ? parse_assignment() : parse_expression());
        expect(")");
        n.kids.push_back(parse_statement());
        return finish(std::move(n));
    }

    Node parse_while() {
        Node n = start(NodeKind::While);
        advance();
        expect("(");
        n.kids.push_back(parse_expression());
        expect(")");
        n.kids.push_back(parse_statement());
        return finish(std::move(n));
    }

    Node parse_do_while() {
        Node n = start(NodeKind::DoWhile);
        advance();
        n.kids.push_back(parse_statement());
        expect_kw("while");
        expect("(");
        n.kids.push_back(parse_expression());
        expect(")");
        accept(";");
        return finish(std::move(n));
    }

    Node parse_switch() {
        Node n = start(NodeKind::Switch);
        advance();
        expect("(");
        n.kids.push_back(parse_expression());
        expect(")");
        expect("{");
        bool seen_default = false;
        while (!check("}")) {
            if (at_eof()) fail("expected '}'");
            Node c = start(NodeKind::Case);
            if (check_kw("case")) {
                advance();
                c.kids.push_back(parse_expression());
            } else if (check_kw("default")) {
                if (seen_default) fail("duplicate default clause");
                seen_default = true;
                advance();
                c.kids.push_back(make_none());
            } else {
                fail("expected 'case' or 'default'");
            }
            expect(":");
            while (!check("}") && !check_kw("case") && !check_kw("default")) {
                if (at_eof()) fail("expected '}'");
                c.kids.push_back(parse_statement());
            }
            n.kids.push_back(finish(std::move(c)));
        }
        cur_mut().comments.clear();
        advance();
        return finish(std::move(n));
    }

    Node parse_return() {
        Node n = start(NodeKind::Return);
        advance();
        if (check(";") || check("}") || at_eof() || cur().newline_before) {
            n.kids.push_back(make_none());
        } else {
            n.kids.push_back(parse_expression());
        }
        consume_semicolon();
        return finish(std::move(n));
    }

    Node parse_jump() {
        Node n = start(check_kw("break") ? NodeKind::Break : NodeKind::Continue);
        advance();
        if (is_ident(cur()) && !cur().newline_before) {
            unsupported("labeled jump");
        }
        consume_semicolon();
        return finish(std::move(n));
    }

    Node parse_throw() {
        Node n = start(NodeKind::Throw);
        advance();
        if (cur().newline_before) {
            fail("line break after throw");
        }
        n.kids.push_back(parse_expression());
        consume_semicolon();
        return finish(std::move(n));
    }

    Node parse_try() {
        Node n = start(NodeKind::Try);
        advance();
        n.kids.push_back(parse_block());
        if (check_kw("catch")) {
            Node c = start(NodeKind::Catch);
            advance();
            if (accept("(")) {
                c.kids.push_back(binding_ident());
                expect(")");
            } else {
                c.kids.push_back(make_none());
            }
            c.kids.push_back(parse_block());
            n.kids.push_back(finish(std::move(c)));
        } else {
            n.kids.push_back(make_none());
        }
        if (check_kw("finally")) {
            advance();
            n.kids.push_back(parse_block());
        } else {
            n.kids.push_back(make_none());
        }
        if (n.kids[1].none() && n.kids[2].none()) {
            fail("try without catch or finally");
        }
        return finish(std::move(n));
    }

    // ---- functions and classes ----

    Node parse_params() {
        Node p = start(NodeKind::Params);
        expect("(");
        while (!check(")")) {
            if (check("...")) {
                Node r = start(NodeKind::RestElement);
                advance();
                r.kids.push_back(binding_ident());
                p.kids.push_back(finish(std::move(r)));
                if (!check(")")) fail("rest parameter must be last");
                break;
            }
            Node id = binding_ident();
            if (check("=")) {
                Node a = start(NodeKind::AssignPattern);
                a.span.begin = id.span.begin;
                advance();
                a.kids.push_back(std::move(id));
                a.kids.push_back(parse_assignment());
                p.kids.push_back(finish(std::move(a)));
            } else {
                p.kids.push_back(std::move(id));
            }
            if (!accept(",")) break;
        }
        expect(")");
        return finish(std::move(p));
    }

    Node parse_function_body() {
        const bool saved = no_in_;
        no_in_ = false;
        Node b = parse_block();
        no_in_ = saved;
        return b;
    }

    Node parse_function(NodeKind kind) {
        Node n = start(kind);
        expect_kw("function");
        if (check("*")) unsupported("generator function");
        if (kind == NodeKind::FunctionDecl) {
            n.kids.push_back(name_ident());
        } else if (is_ident(cur()) || check_kw("yield") || check_kw("await")) {
            n.kids.push_back(name_ident());
        } else {
            n.kids.push_back(make_none());
        }
        n.kids.push_back(parse_params());
        n.kids.push_back(parse_function_body());
        return finish(std::move(n));
    }

    // Anonymous function expression for methods, starting at '('.
    Node parse_method_function() {
        Node f = start(NodeKind::FunctionExpr);
        f.kids.push_back(make_none());
        f.kids.push_back(parse_params());
        f.kids.push_back(parse_function_body());
        return finish(std::move(f));
    }

    Node parse_property_key() {
        const Tok& t = cur();
        if (check("[")) {
            advance();
            Node k = parse_assignment();
            expect("]");
            return k;
        }
        if (check("#")) unsupported("private class member");
        Node k = start(NodeKind::PropName);
        switch (t.token->kind) {
            case TokenKind::Identifier:
            case TokenKind::Keyword:
                k.text = advance().text;
                return finish(std::move(k));
            case TokenKind::String:
                k.kind = NodeKind::StringLit;
                k.text = cook_string_literal(advance().text);
                return finish(std::move(k));
            case TokenKind::Number:
                k.kind = NodeKind::NumberLit;
                k.text = advance().text;
                return finish(std::move(k));
            default:
                fail("expected property name");
        }
    }

    Node parse_class() {
        Node n = start(NodeKind::ClassDecl);
        advance();
        n.kids.push_back(name_ident());
        if (check_kw("extends")) {
            advance();
            n.kids.push_back(parse_lhs());
        } else {
            n.kids.push_back(make_none());
        }
        expect("{");
        while (!check("}")) {
            if (at_eof()) fail("expected '}'");
            if (accept(";")) continue;
            Node m = start(NodeKind::MethodDef, "method");
            if (check_kw("static") && !is_punct(peek(), "(")) {
                advance();
                m.flags |= flag::kStatic;
                if (check("{")) unsupported("static initialization block");
            }
            if (is_ident(cur(), "async") && !is_punct(peek(), "(")) unsupported("async method");
            if (check("*")) unsupported("generator method");
            if ((is_ident(cur(), "get") || is_ident(cur(), "set")) && !is_punct(peek(), "(")) {
                m.text = advance().text;
            }
            const bool computed = check("[");
            Node key = parse_property_key();
            if (computed) m.flags |= flag::kComputed;
            if (!check("(")) unsupported("class field");
            if (!computed && m.text == "method" && !m.has(flag::kStatic) && key.is(NodeKind::PropName) &&
                key.text == "constructor") {
                m.text = "constructor";
            }
            m.kids.push_back(std::move(key));
            m.kids.push_back(parse_method_function());
            n.kids.push_back(finish(std::move(m)));
        }
        advance();
        return finish(std::move(n));
    }

    // ---- expressions ----

    Node parse_expression() {
        Node first = parse_assignment();
        if (!check(",")) {
            return first;
        }
        Node seq(NodeKind::Sequence);
        seq.span.begin = first.span.begin;
        seq.kids.push_back(std::move(first));
        while (accept(",")) {
            seq.kids.push_back(parse_assignment());
        }
        return finish(std::move(seq));
    }

    // True when the '(' at the cursor opens an arrow function parameter list.
    bool arrow_params_ahead() const {
        int depth = 0;
        for (std::size_t i = pos_; i < toks_.size(); ++i) {
            const Tok& t = toks_[i];
            if (is_punct(t, "(") || is_punct(t, "[") || is_punct(t, "{")) {
                ++depth;
            } else if (is_punct(t, ")") || is_punct(t, "]") || is_punct(t, "}")) {
                --depth;
                if (depth == 0) {
                    return i + 1 < toks_.size() && is_punct(toks_[i + 1], "=>");
                }
            }
        }
        return false;
    }

    Node parse_arrow_body(Node arrow) {
        if (check("{")) {
            arrow.kids.push_back(parse_function_body());
        } else {
            const bool saved = no_in_;
            arrow.flags |= flag::kExprBody;
            arrow.kids.push_back(parse_assignment());
            no_in_ = saved;
        }
        return finish(std::move(arrow));
    }

    Node parse_assignment() {
        if (check_kw("yield")) unsupported("yield expression");
        if (is_ident(cur(), "async") && !peek().newline_before &&
            (is_keyword(peek(), "function") || (is_ident(peek()) && is_punct(peek(2), "=>")))) {
            unsupported("async function");
        }
        if (is_ident(cur()) && is_punct(peek(), "=>")) {
            Node arrow = start(NodeKind::ArrowFunction);
            Node params = start(NodeKind::Params);
            params.kids.push_back(binding_ident());
            arrow.kids.push_back(finish(std::move(params)));
            advance();  // =>
            return parse_arrow_body(std::move(arrow));
        }
        if (check("(") && arrow_params_ahead()) {
            Node arrow = start(NodeKind::ArrowFunction);
            arrow.kids.push_back(parse_params());
            expect("=>");
            return parse_arrow_body(std::move(arrow));
        }
        if (is_ident(cur(), "async") && is_punct(peek(), "(")) {
            const std::size_t saved = pos_;
            ++pos_;
            const bool arrow = arrow_params_ahead();
            pos_ = saved;
            if (arrow) unsupported("async arrow function");
        }

        Node left = parse_conditional();
        if (cur().token->kind == TokenKind::Punctuator && is_assign_op(cur().token->text)) {
            if (left.is(NodeKind::ArrayLit) || left.is(NodeKind::ObjectLit)) {
                unsupported("destructuring assignment");
            }
            if (!left.is(NodeKind::Identifier) && !left.is(NodeKind::Member)) {
                fail("invalid assignment target");
            }
            Node n(NodeKind::Assign, advance().text);
            n.span.begin = left.span.begin;
            n.kids.push_back(std::move(left));
            n.kids.push_back(parse_assignment());
            return finish(std::move(n));
        }
        return left;
    }

    Node parse_conditional() {
        Node test = parse_binary(1);
        if (!check("?")) {
            return test;
        }
        Node n(NodeKind::Conditional);
        n.span.begin = test.span.begin;
        advance();
        n.kids.push_back(std::move(test));
        const bool saved = no_in_;
        no_in_ = false;
        n.kids.push_back(parse_assignment());
        no_in_ = saved;
        expect(":");
        n.kids.push_back(parse_assignment());
        return finish(std::move(n));
    }

    std::string current_binary_op() const {
        const Tok& t = cur();
        if (t.token == &eof_token_) return {};
        if (t.token->kind == TokenKind::Punctuator ||
            (t.token->kind == TokenKind::Keyword && (t.token->text == "in" || t.token->text == "instanceof"))) {
            return t.token->text;
        }
        return {};
    }

    Node parse_binary(int min_prec) {
        Node left = parse_unary();
        while (true) {
            const std::string op = current_binary_op();
            const int prec = op.empty() ? 0 : binary_precedence(op, no_in_);
            if (prec == 0 || prec < min_prec) {
                return left;
            }
            advance();
            // ** is right-associative.
            Node right = parse_binary(op == "**" ? prec : prec + 1);
            Node n(NodeKind::Binary, op);
            n.span.begin = left.span.begin;
            n.kids.push_back(std::move(left));
            n.kids.push_back(std::move(right));
            left = finish(std::move(n));
        }
    }

    Node parse_unary() {
        const Tok& t = cur();
        if (t.token->kind == TokenKind::Punctuator) {
            const std::string& op = t.token->text;
            if (op == "!" || op == "~" || op == "+" || op == "-") {
                Node n = start(NodeKind::Unary, op);
                advance();
                n.kids.push_back(parse_unary());
                return finish(std::move(n));
            }
            if (op == "++" || op == "--") {
                Node n = start(NodeKind::Update, op);
                n.flags |= flag::kPrefix;
                advance();
                n.kids.push_back(parse_unary());
                return finish(std::move(n));
            }
        }
        if (t.token->kind == TokenKind::Keyword) {
            const std::string& k = t.token->text;
            if (k == "typeof" || k == "void" || k == "delete") {
                Node n = start(NodeKind::Unary, k);
                advance();
                n.kids.push_back(parse_unary());
                return finish(std::move(n));
            }
            if (k == "await") unsupported("await expression");
        }
        Node e = parse_lhs();
        if ((check("++") || check("--")) && !cur().newline_before) {
            Node n(NodeKind::Update, advance().text);
            n.span.begin = e.span.begin;
            n.kids.push_back(std::move(e));
            return finish(std::move(n));
        }
        return e;
    }

    std::vector<Node> parse_arguments() {
        std::vector<Node> args;
        expect("(");
        const bool saved = no_in_;
        no_in_ = false;
        while (!check(")")) {
            if (check("...")) {
                Node s = start(NodeKind::Spread);
                advance();
                s.kids.push_back(parse_assignment());
                args.push_back(finish(std::move(s)));
            } else {
                args.push_back(parse_assignment());
            }
            if (!accept(",")) break;
        }
        no_in_ = saved;
        expect(")");
        return args;
    }

    Node parse_member_suffix(Node object) {
        if (check(".")) {
            advance();
            if (check("#")) unsupported("private member access");
            if (!is_ident(cur()) && cur().token->kind != TokenKind::Keyword) {
                fail("expected property name");
            }
            Node prop = start(NodeKind::PropName);
            prop.text = advance().text;
            Node n(NodeKind::Member);
            n.span.begin = object.span.begin;
            n.kids.push_back(std::move(object));
            n.kids.push_back(finish(std::move(prop)));
            return finish(std::move(n));
        }
        // '['
        advance();
        const bool saved = no_in_;
        no_in_ = false;
        Node index = parse_expression();
        no_in_ = saved;
        expect("]");
        Node n(NodeKind::Member);
        n.flags |= flag::kComputed;
        n.span.begin = object.span.begin;
        n.kids.push_back(std::move(object));
        n.kids.push_back(std::move(index));
        return finish(std::move(n));
    }

    Node parse_new() {
        Node n = start(NodeKind::New);
        advance();
        if (check(".")) unsupported("new.target");
        Node callee = check_kw("new") ? parse_new() : parse_primary();
        while (check(".") || check("[")) {
            callee = parse_member_suffix(std::move(callee));
        }
        n.kids.push_back(std::move(callee));
        if (check("(")) {
            for (auto& a : parse_arguments()) {
                n.kids.push_back(std::move(a));
            }
        }
        return finish(std::move(n));
    }

    Node parse_lhs() {
        Node e = check_kw("new") ? parse_new() : parse_primary();
        while (true) {
            if (check(".") || check("[")) {
                e = parse_member_suffix(std::move(e));
            } else if (check("(")) {
                Node call(NodeKind::Call);
                call.span.begin = e.span.begin;
                call.kids.push_back(std::move(e));
                for (auto& a : parse_arguments()) {
                    call.kids.push_back(std::move(a));
                }
                e = finish(std::move(call));
            } else if (check("?.")) {
                unsupported("optional chaining");
            } else if (cur().token->kind == TokenKind::Template && cur().token != &eof_token_) {
                unsupported("tagged template");
            } else {
                return e;
            }
        }
    }

    Node parse_template() {
        const Token& tok = advance();
        Node n(NodeKind::TemplateLit);
        n.span = {base_ + tok.span.begin, base_ + tok.span.end};
        for (const auto& part : split_template(tok.text)) {
            const std::string_view piece = std::string_view(tok.text).substr(part.begin, part.end - part.begin);
            if (!part.substitution) {
                Node chunk(NodeKind::TemplateChunk, std::string(piece));
                chunk.span = {n.span.begin + part.begin, n.span.begin + part.end};
                n.kids.push_back(std::move(chunk));
                continue;
            }
            const std::vector<Token> sub = tokenize(piece);
            Parser inner(sub, n.span.begin + part.begin);
            n.kids.push_back(inner.parse_standalone_expression());
        }
        return n;
    }

    Node parse_array() {
        Node n = start(NodeKind::ArrayLit);
        advance();
        const bool saved = no_in_;
        no_in_ = false;
        while (!check("]")) {
            if (check(",")) unsupported("array hole");
            if (check("...")) {
                Node s = start(NodeKind::Spread);
                advance();
                s.kids.push_back(parse_assignment());
                n.kids.push_back(finish(std::move(s)));
            } else {
                n.kids.push_back(parse_assignment());
            }
            if (!accept(",")) break;
        }
        no_in_ = saved;
        expect("]");
        return finish(std::move(n));
    }

    Node parse_object() {
        Node n = start(NodeKind::ObjectLit);
        advance();
        const bool saved = no_in_;
        no_in_ = false;
        while (!check("}")) {
            if (check("...")) {
                Node s = start(NodeKind::Spread);
                advance();
                s.kids.push_back(parse_assignment());
                n.kids.push_back(finish(std::move(s)));
            } else {
                n.kids.push_back(parse_property());
            }
            if (!accept(",")) break;
        }
        no_in_ = saved;
        expect("}");
        return finish(std::move(n));
    }

    Node parse_property() {
        Node p = start(NodeKind::Property);
        if (check("*")) unsupported("generator method");
        if (is_ident(cur(), "async") && !is_punct(peek(), "(") && !is_punct(peek(), ":") &&
            !is_punct(peek(), ",") && !is_punct(peek(), "}")) {
            unsupported("async method");
        }
        if ((is_ident(cur(), "get") || is_ident(cur(), "set")) && !is_punct(peek(), "(") &&
            !is_punct(peek(), ":") && !is_punct(peek(), ",") && !is_punct(peek(), "}")) {
            p.flags |= advance().text == "get" ? flag::kGetter : flag::kSetter;
            const bool computed = check("[");
            p.kids.push_back(parse_property_key());
            if (computed) p.flags |= flag::kComputed;
            p.kids.push_back(parse_method_function());
            return finish(std::move(p));
        }
        const bool computed = check("[");
        const bool ident_key = is_ident(cur());
        Node key = parse_property_key();
        if (computed) p.flags |= flag::kComputed;
        if (check("(")) {
            p.flags |= flag::kMethod;
            p.kids.push_back(std::move(key));
            p.kids.push_back(parse_method_function());
            return finish(std::move(p));
        }
        if (ident_key && (check(",") || check("}"))) {
            p.flags |= flag::kShorthand;
            Node value = make_ident(key.text);
            value.span = key.span;
            p.kids.push_back(std::move(key));
            p.kids.push_back(std::move(value));
            return finish(std::move(p));
        }
        if (check("=")) unsupported("shorthand default (destructuring pattern)");
        expect(":");
        p.kids.push_back(std::move(key));
        p.kids.push_back(parse_assignment());
        return finish(std::move(p));
    }

    Node parse_primary() {
        const Tok& t = cur();
        if (t.token == &eof_token_) {
            fail("unexpected end of input");
        }
        const Token& tok = *t.token;
        switch (tok.kind) {
            case TokenKind::Identifier: {
                Node n = start(NodeKind::Identifier, tok.text);
                advance();
                return finish(std::move(n));
            }
            case TokenKind::Number: {
                Node n = start(NodeKind::NumberLit, tok.text);
                advance();
                return finish(std::move(n));
            }
            case TokenKind::String: {
                Node n = start(NodeKind::StringLit, cook_string_literal(tok.text));
                advance();
                return finish(std::move(n));
            }
            case TokenKind::Regex: {
                Node n = start(NodeKind::RegexLit, tok.text);
                advance();
                return finish(std::move(n));
            }
            case TokenKind::Template:
                return parse_template();
            case TokenKind::Keyword: {
                const std::string& k = tok.text;
                if (k == "this" || k == "super" || k == "null" || k == "true" || k == "false") {
                    Node n = start(k == "this"    ? NodeKind::This
                                   : k == "super" ? NodeKind::Super
                                   : k == "null"  ? NodeKind::NullLit
                                                  : NodeKind::BoolLit);
                    if (n.is(NodeKind::BoolLit)) n.text = k;
                    advance();
                    return finish(std::move(n));
                }
                if (k == "function") return parse_function(NodeKind::FunctionExpr);
                if (k == "class") unsupported("class expression");
                if (k == "new") return parse_new();
                if (k == "import") unsupported("dynamic import");
                if (k == "yield" || k == "await") unsupported("generator/async keyword '" + k + "'");
                fail("unexpected keyword");
            }
            case TokenKind::Punctuator: {
                if (tok.text == "(") {
                    advance();
                    const bool saved = no_in_;
                    no_in_ = false;
                    Node e = parse_expression();
                    no_in_ = saved;
                    expect(")");
                    return e;
                }
                if (tok.text == "[") return parse_array();
                if (tok.text == "{") return parse_object();
                if (tok.text == "#") unsupported("private name");
                fail("unexpected token");
            }
            default:
                fail("unexpected token");
        }
    }
};

}  // namespace

Ast parse(const std::vector<Token>& tokens) {
    return Parser(tokens, 0).parse_program();
}

Ast parse_source(std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);
    return parse(tokens);
}

SourceUnit load_source(std::string text) {
    SourceUnit unit;
    unit.text = std::move(text);
    unit.tokens = tokenize(unit.text);
    unit.ast = parse(unit.tokens);
    return unit;
}

}  // namespace iocbench::js
