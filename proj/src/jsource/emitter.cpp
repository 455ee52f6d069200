#include "iocbench/jsource/emitter.hpp"

#include <cstdio>

namespace iocbench::js {

namespace {

constexpr int kPrecSequence = 1;
constexpr int kPrecAssign = 2;
constexpr int kPrecConditional = 3;
constexpr int kPrecUnary = 16;
constexpr int kPrecPostfix = 17;
constexpr int kPrecLhs = 18;
constexpr int kPrecPrimary = 20;

int binary_level(std::string_view op) {
    if (op == "??") return 4;
    if (op == "||") return 5;
    if (op == "&&") return 6;
    if (op == "|") return 7;
    if (op == "^") return 8;
    if (op == "&") return 9;
    if (op == "==" || op == "!=" || op == "===" || op == "!==") return 10;
    if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof" || op == "in") return 11;
    if (op == "<<" || op == ">>" || op == ">>>") return 12;
    if (op == "+" || op == "-") return 13;
    if (op == "*" || op == "/" || op == "%") return 14;
    if (op == "**") return 15;
    return 4;
}

int precedence(const Node& n) {
    switch (n.kind) {
        case NodeKind::Sequence: return kPrecSequence;
        case NodeKind::Assign:
        case NodeKind::ArrowFunction:
        case NodeKind::Spread: return kPrecAssign;
        case NodeKind::Conditional: return kPrecConditional;
        case NodeKind::Binary: return binary_level(n.text);
        case NodeKind::Unary: return kPrecUnary;
        case NodeKind::Update: return n.has(flag::kPrefix) ? kPrecUnary : kPrecPostfix;
        case NodeKind::Call:
        case NodeKind::New:
        case NodeKind::Member: return kPrecLhs;
        default: return kPrecPrimary;
    }
}

bool is_logical_mix(const Node& parent, const Node& child) {
    if (!child.is(NodeKind::Binary)) return false;
    const bool parent_nullish = parent.text == "??";
    const bool child_nullish = child.text == "??";
    const bool parent_logic = parent.text == "||" || parent.text == "&&";
    const bool child_logic = child.text == "||" || child.text == "&&";
    return (parent_nullish && child_logic) || (parent_logic && child_nullish);
}

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool starts_with_word(const std::string& s, std::string_view word) {
    if (s.compare(0, word.size(), word) != 0) return false;
    return s.size() == word.size() || !is_ident_part(static_cast<unsigned char>(s[word.size()]));
}

class Emitter {
public:
    std::string out;

    void program(const Node& root) {
        for (const auto& s : root.kids) {
            statement(s);
        }
        for (const auto& c : root.comments) {
            line(c);
        }
    }

    std::string expr_to_string(const Node& n, int min_prec) {
        std::string saved;
        saved.swap(out);
        expr(n, min_prec);
        saved.swap(out);
        return saved;
    }

private:
    int indent_ = 0;
    bool no_in_ = false;

    void pad() { out.append(static_cast<std::size_t>(indent_) * 2, ' '); }

    void line(const std::string& text) {
        pad();
        out += text;
        out += '\n';
    }

    // ---- statements ----

    void comments(const Node& s) {
        for (const auto& c : s.comments) {
            line(c);
        }
    }

    void statement(const Node& s) {
        comments(s);
        pad();
        statement_inline(s);
        out += '\n';
    }

    // Body of if/for/while: blocks stay on the header line.
    void body(const Node& s) {
        if (s.is(NodeKind::Block) && s.comments.empty()) {
            out += ' ';
            block(s);
            return;
        }
        out += '\n';
        ++indent_;
        comments(s);
        pad();
        statement_inline(s);
        --indent_;
    }

    void block(const Node& b) {
        if (b.kids.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        ++indent_;
        for (const auto& s : b.kids) {
            statement(s);
        }
        --indent_;
        pad();
        out += '}';
    }

    void var_decl(const Node& d) {
        out += d.text;
        out += ' ';
        for (std::size_t i = 0; i < d.kids.size(); ++i) {
            if (i > 0) out += ", ";
            const Node& decl = d.kids[i];
            out += decl.kids[0].text;
            if (!decl.kids[1].none()) {
                out += " = ";
                expr(decl.kids[1], kPrecAssign);
            }
        }
    }

    void params(const Node& p) {
        out += '(';
        for (std::size_t i = 0; i < p.kids.size(); ++i) {
            if (i > 0) out += ", ";
            const Node& k = p.kids[i];
            if (k.is(NodeKind::RestElement)) {
                out += "...";
                out += k.kids[0].text;
            } else if (k.is(NodeKind::AssignPattern)) {
                out += k.kids[0].text;
                out += " = ";
                expr(k.kids[1], kPrecAssign);
            } else {
                out += k.text;
            }
        }
        out += ')';
    }

    void function_tail(const Node& fn) {
        const bool saved = no_in_;
        no_in_ = false;
        params(fn.kids[1]);
        out += ' ';
        block(fn.kids[2]);
        no_in_ = saved;
    }

    void property_key(const Node& key, bool computed) {
        if (computed) {
            out += '[';
            expr(key, kPrecAssign);
            out += ']';
        } else if (key.is(NodeKind::PropName)) {
            out += is_identifier_name(key.text) ? key.text : quote_string(key.text);
        } else if (key.is(NodeKind::StringLit)) {
            out += quote_string(key.text);
        } else {
            out += key.text;
        }
    }

    void statement_inline(const Node& s) {
        switch (s.kind) {
            case NodeKind::VarDecl:
                var_decl(s);
                out += ';';
                break;
            case NodeKind::FunctionDecl:
                out += "function ";
                out += s.kids[0].text;
                function_tail(s);
                break;
            case NodeKind::ClassDecl:
                out += "class ";
                out += s.kids[0].text;
                if (!s.kids[1].none()) {
                    out += " extends ";
                    expr(s.kids[1], kPrecLhs);
                }
                out += " {";
                if (s.kids.size() == 2) {
                    out += '}';
                    break;
                }
                out += '\n';
                ++indent_;
                for (std::size_t i = 2; i < s.kids.size(); ++i) {
                    const Node& m = s.kids[i];
                    pad();
                    if (m.has(flag::kStatic)) out += "static ";
                    if (m.text == "get" || m.text == "set") {
                        out += m.text;
                        out += ' ';
                    }
                    property_key(m.kids[0], m.has(flag::kComputed));
                    function_tail(m.kids[1]);
                    out += '\n';
                }
                --indent_;
                pad();
                out += '}';
                break;
            case NodeKind::Block:
                block(s);
                break;
            case NodeKind::EmptyStmt:
                out += ';';
                break;
            case NodeKind::ExprStmt: {
                std::string e = expr_to_string(s.kids[0], kPrecSequence);
                if (e.starts_with("{") || starts_with_word(e, "function") || starts_with_word(e, "class") ||
                    e.starts_with("let [")) {
                    e = "(" + e + ")";
                }
                out += e;
                out += ';';
                break;
            }
            case NodeKind::If:
                out += "if (";
                expr(s.kids[0], kPrecSequence);
                out += ')';
                body(s.kids[1]);
                if (!s.kids[2].none()) {
                    if (s.kids[1].is(NodeKind::Block) && s.kids[1].comments.empty()) {
                        out += ' ';
                    } else {
                        out += '\n';
                        pad();
                    }
                    out += "else";
                    if (s.kids[2].is(NodeKind::If) && s.kids[2].comments.empty()) {
                        out += ' ';
                        statement_inline(s.kids[2]);
                    } else {
                        body(s.kids[2]);
                    }
                }
                break;
            case NodeKind::For: {
                out += "for (";
                const bool saved = no_in_;
                no_in_ = true;
                if (s.kids[0].is(NodeKind::VarDecl)) {
                    var_decl(s.kids[0]);
                } else if (!s.kids[0].none()) {
                    expr(s.kids[0], kPrecSequence);
                }
                no_in_ = saved;
                out += ';';
                if (!s.kids[1].none()) {
                    out += ' ';
                    expr(s.kids[1], kPrecSequence);
                }
                out += ';';
                if (!s.kids[2].none()) {
                    out += ' ';
                    expr(s.kids[2], kPrecSequence);
                }
                out += ')';
                body(s.kids[3]);
                break;
            }
            case NodeKind::ForIn:
            case NodeKind::ForOf:
                out += "for (";
                if (s.kids[0].is(NodeKind::VarDecl)) {
                    var_decl(s.kids[0]);
                } else {
                    expr(s.kids[0], kPrecLhs);
                }
                out += s.is(NodeKind::ForOf) ? " of " : " in ";
                expr(s.kids[1], s.is(NodeKind::ForOf) ? kPrecAssign : kPrecSequence);
                out += ')';
                body(s.kids[2]);
                break;
            case NodeKind::While:
                out += "while (";
                expr(s.kids[0], kPrecSequence);
                out += ')';
                body(s.kids[1]);
                break;
            case NodeKind::DoWhile:
                out += "do";
                body(s.kids[0]);
                if (s.kids[0].is(NodeKind::Block) && s.kids[0].comments.empty()) {
                    out += ' ';
                } else {
                    out += '\n';
                    pad();
                }
                out += "while (";
                expr(s.kids[1], kPrecSequence);
                out += ");";
                break;
            case NodeKind::Switch:
                out += "switch (";
                expr(s.kids[0], kPrecSequence);
                out += ") {";
                if (s.kids.size() == 1) {
                    out += '}';
                    break;
                }
                out += '\n';
                ++indent_;
                for (std::size_t i = 1; i < s.kids.size(); ++i) {
                    const Node& c = s.kids[i];
                    pad();
                    if (c.kids[0].none()) {
                        out += "default:";
                    } else {
                        out += "case ";
                        expr(c.kids[0], kPrecSequence);
                        out += ':';
                    }
                    out += '\n';
                    ++indent_;
                    for (std::size_t j = 1; j < c.kids.size(); ++j) {
                        statement(c.kids[j]);
                    }
                    --indent_;
                }
                --indent_;
                pad();
                out += '}';
                break;
            case NodeKind::Return:
                out += "return";
                if (!s.kids[0].none()) {
                    out += ' ';
                    expr(s.kids[0], kPrecSequence);
                }
                out += ';';
                break;
            case NodeKind::Throw:
                out += "throw ";
                expr(s.kids[0], kPrecSequence);
                out += ';';
                break;
            case NodeKind::Break:
                out += "break;";
                break;
            case NodeKind::Continue:
                out += "continue;";
                break;
            case NodeKind::Try:
                out += "try ";
                block(s.kids[0]);
                if (!s.kids[1].none()) {
                    out += " catch ";
                    if (!s.kids[1].kids[0].none()) {
                        out += '(';
                        out += s.kids[1].kids[0].text;
                        out += ") ";
                    }
                    block(s.kids[1].kids[1]);
                }
                if (!s.kids[2].none()) {
                    out += " finally ";
                    block(s.kids[2]);
                }
                break;
            default:
                // Expression used in statement position by a transform.
                expr(s, kPrecSequence);
                out += ';';
                break;
        }
    }

    // ---- expressions ----

    void expr(const Node& n, int min_prec, bool force_parens = false) {
        const bool parens = force_parens || precedence(n) < min_prec ||
                            (no_in_ && n.is(NodeKind::Binary) && n.text == "in");
        if (parens) {
            out += '(';
            const bool saved = no_in_;
            no_in_ = false;
            expr_inner(n);
            no_in_ = saved;
            out += ')';
        } else {
            expr_inner(n);
        }
    }

    void arguments(const Node& n, std::size_t first) {
        out += '(';
        for (std::size_t i = first; i < n.kids.size(); ++i) {
            if (i > first) out += ", ";
            expr(n.kids[i], kPrecAssign);
        }
        out += ')';
    }

    static bool new_callee_needs_parens(const Node& callee) {
        const Node* c = &callee;
        while (c->is(NodeKind::Member)) {
            c = &c->kids[0];
        }
        return c->is(NodeKind::Call) || c->is(NodeKind::New) || precedence(*c) < kPrecLhs;
    }

    static bool is_plain_integer(const std::string& raw) {
        for (char ch : raw) {
            if (ch < '0' || ch > '9') return false;
        }
        return !raw.empty();
    }

    void expr_inner(const Node& n) {
        switch (n.kind) {
            case NodeKind::Identifier:
            case NodeKind::NumberLit:
            case NodeKind::RegexLit:
            case NodeKind::BoolLit:
                out += n.text;
                break;
            case NodeKind::StringLit:
                out += quote_string(n.text);
                break;
            case NodeKind::NullLit:
                out += "null";
                break;
            case NodeKind::This:
                out += "this";
                break;
            case NodeKind::Super:
                out += "super";
                break;
            case NodeKind::TemplateLit:
                out += '`';
                for (const auto& k : n.kids) {
                    if (k.is(NodeKind::TemplateChunk)) {
                        out += k.text;
                    } else {
                        out += "${";
                        const bool saved = no_in_;
                        no_in_ = false;
                        expr(k, kPrecSequence);
                        no_in_ = saved;
                        out += '}';
                    }
                }
                out += '`';
                break;
            case NodeKind::ArrayLit:
                out += '[';
                for (std::size_t i = 0; i < n.kids.size(); ++i) {
                    if (i > 0) out += ", ";
                    expr(n.kids[i], kPrecAssign);
                }
                out += ']';
                break;
            case NodeKind::ObjectLit:
                if (n.kids.empty()) {
                    out += "{}";
                    break;
                }
                out += "{ ";
                for (std::size_t i = 0; i < n.kids.size(); ++i) {
                    if (i > 0) out += ", ";
                    property(n.kids[i]);
                }
                out += " }";
                break;
            case NodeKind::Spread:
                out += "...";
                expr(n.kids[0], kPrecAssign);
                break;
            case NodeKind::FunctionExpr:
                out += "function";
                if (!n.kids[0].none()) {
                    out += ' ';
                    out += n.kids[0].text;
                }
                function_tail(n);
                break;
            case NodeKind::ArrowFunction: {
                const Node& p = n.kids[0];
                if (p.kids.size() == 1 && p.kids[0].is(NodeKind::Identifier)) {
                    out += p.kids[0].text;
                } else {
                    params(p);
                }
                out += " => ";
                if (n.has(flag::kExprBody)) {
                    const bool saved = no_in_;
                    no_in_ = false;
                    std::string b = expr_to_string(n.kids[1], kPrecAssign);
                    if (b.starts_with("{")) b = "(" + b + ")";
                    out += b;
                    no_in_ = saved;
                } else {
                    const bool saved = no_in_;
                    no_in_ = false;
                    block(n.kids[1]);
                    no_in_ = saved;
                }
                break;
            }
            case NodeKind::Unary: {
                out += n.text;
                const std::string operand = expr_to_string(n.kids[0], kPrecUnary);
                const bool word = is_ident_start(static_cast<unsigned char>(n.text[0]));
                const bool clash = (n.text == "-" || n.text == "+") && !operand.empty() && operand[0] == n.text[0];
                if (word || clash) out += ' ';
                out += operand;
                break;
            }
            case NodeKind::Update:
                if (n.has(flag::kPrefix)) {
                    out += n.text;
                    expr(n.kids[0], kPrecUnary);
                } else {
                    expr(n.kids[0], kPrecLhs);
                    out += n.text;
                }
                break;
            case NodeKind::Binary: {
                const int level = binary_level(n.text);
                const bool pow = n.text == "**";
                const Node& l = n.kids[0];
                const Node& r = n.kids[1];
                expr(l, pow ? level + 1 : level,
                     is_logical_mix(n, l) || (pow && (l.is(NodeKind::Unary) ||
                                                      (l.is(NodeKind::Update) && l.has(flag::kPrefix)))));
                out += ' ';
                out += n.text;
                out += ' ';
                expr(r, pow ? level : level + 1, is_logical_mix(n, r));
                break;
            }
            case NodeKind::Assign:
                expr(n.kids[0], kPrecLhs);
                out += ' ';
                out += n.text;
                out += ' ';
                expr(n.kids[1], kPrecAssign);
                break;
            case NodeKind::Conditional:
                expr(n.kids[0], kPrecConditional + 1);
                out += " ? ";
                {
                    const bool saved = no_in_;
                    no_in_ = false;
                    expr(n.kids[1], kPrecAssign);
                    no_in_ = saved;
                }
                out += " : ";
                expr(n.kids[2], kPrecAssign);
                break;
            case NodeKind::Sequence:
                for (std::size_t i = 0; i < n.kids.size(); ++i) {
                    if (i > 0) out += ", ";
                    expr(n.kids[i], kPrecAssign);
                }
                break;
            case NodeKind::Call:
                expr(n.kids[0], kPrecLhs, n.kids[0].is(NodeKind::New) && n.kids[0].kids.size() == 1);
                arguments(n, 1);
                break;
            case NodeKind::New:
                out += "new ";
                expr(n.kids[0], kPrecLhs, new_callee_needs_parens(n.kids[0]));
                arguments(n, 1);
                break;
            case NodeKind::Member: {
                const Node& obj = n.kids[0];
                expr(obj, kPrecLhs, obj.is(NodeKind::NumberLit) && is_plain_integer(obj.text));
                if (n.has(flag::kComputed)) {
                    out += '[';
                    const bool saved = no_in_;
                    no_in_ = false;
                    expr(n.kids[1], kPrecSequence);
                    no_in_ = saved;
                    out += ']';
                } else {
                    out += '.';
                    out += n.kids[1].text;
                }
                break;
            }
            default:
                out += "/* unsupported node ";
                out += to_string(n.kind);
                out += " */";
                break;
        }
    }

    void property(const Node& p) {
        if (p.is(NodeKind::Spread)) {
            expr(p, kPrecAssign);
            return;
        }
        const Node& key = p.kids[0];
        const Node& value = p.kids[1];
        const bool computed = p.has(flag::kComputed);
        if (p.has(flag::kGetter) || p.has(flag::kSetter)) {
            out += p.has(flag::kGetter) ? "get " : "set ";
            property_key(key, computed);
            function_tail(value);
            return;
        }
        if (p.has(flag::kMethod)) {
            property_key(key, computed);
            function_tail(value);
            return;
        }
        if (p.has(flag::kShorthand) && value.is(NodeKind::Identifier) && key.text == value.text) {
            out += value.text;
            return;
        }
        property_key(key, computed);
        out += ": ";
        expr(value, kPrecAssign);
    }
};

}  // namespace

bool is_identifier_name(std::string_view name) {
    if (name.empty() || !is_ident_start(static_cast<unsigned char>(name[0]))) {
        return false;
    }
    for (char c : name) {
        if (!is_ident_part(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

std::string quote_string(std::string_view value) {
    std::string out;
    out.reserve(value.size() + 2);
    out += '"';
    for (std::size_t i = 0; i < value.size(); ++i) {
        const auto c = static_cast<unsigned char>(value[i]);
        switch (c) {
            case '"': out += "\\\""; continue;
            case '\\': out += "\\\\"; continue;
            case '\n': out += "\\n"; continue;
            case '\r': out += "\\r"; continue;
            case '\t': out += "\\t"; continue;
            case '\b': out += "\\b"; continue;
            case '\f': out += "\\f"; continue;
            case '\v': out += "\\v"; continue;
            default: break;
        }
        if (c < 0x20 || c == 0x7f) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\x%02x", c);
            out += buf;
            continue;
        }
        // U+2028/U+2029 and lone surrogates (ED A0..BF xx) get \u escapes.
        if (c == 0xE2 && i + 2 < value.size() && static_cast<unsigned char>(value[i + 1]) == 0x80 &&
            (static_cast<unsigned char>(value[i + 2]) == 0xA8 || static_cast<unsigned char>(value[i + 2]) == 0xA9)) {
            out += static_cast<unsigned char>(value[i + 2]) == 0xA8 ? "\\u2028" : "\\u2029";
            i += 2;
            continue;
        }
        if (c == 0xED && i + 2 < value.size() && static_cast<unsigned char>(value[i + 1]) >= 0xA0) {
            const unsigned cp = ((c & 0x0FU) << 12) | ((static_cast<unsigned char>(value[i + 1]) & 0x3FU) << 6) |
                                (static_cast<unsigned char>(value[i + 2]) & 0x3FU);
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", cp);
            out += buf;
            i += 2;
            continue;
        }
        out += static_cast<char>(c);
    }
    out += '"';
    return out;
}

std::string emit(const Ast& ast) {
    Emitter e;
    e.program(ast.root);
    return e.out;
}

std::string emit_expression(const Node& expr) {
    Emitter e;
    return e.expr_to_string(expr, 1);
}

}  // namespace iocbench::js
