#pragma once

#include "iocbench/jsource/token.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iocbench::js {

// Child layouts (None marks an absent optional child):
//
//   Program        kids = statements
//   VarDecl        text = var|let|const; kids = VarDeclarator...
//   VarDeclarator  [0] Identifier, [1] init | None
//   FunctionDecl   [0] Identifier, [1] Params, [2] Block
//   FunctionExpr   [0] Identifier | None, [1] Params, [2] Block
//   ArrowFunction  [0] Params, [1] Block | expression (flag ExprBody)
//   Params         kids = Identifier | AssignPattern | RestElement
//   AssignPattern  [0] Identifier, [1] default value
//   RestElement    [0] Identifier
//   ClassDecl      [0] Identifier, [1] superclass | None, [2..] MethodDef
//   MethodDef      text = constructor|method|get|set; [0] key, [1] FunctionExpr
//   Block          kids = statements
//   ExprStmt       [0] expression
//   If             [0] test, [1] consequent, [2] alternate | None
//   For            [0] init | None, [1] test | None, [2] update | None, [3] body
//   ForIn, ForOf   [0] VarDecl | target expression, [1] right, [2] body
//   While          [0] test, [1] body
//   DoWhile        [0] body, [1] test
//   Switch         [0] discriminant, [1..] Case
//   Case           [0] test | None (default), [1..] statements
//   Return         [0] argument | None
//   Throw          [0] argument
//   Try            [0] Block, [1] Catch | None, [2] finalizer Block | None
//   Catch          [0] Identifier | None, [1] Block
//   Break, Continue, EmptyStmt: no children
//
//   Identifier     text = name (a binding or reference)
//   PropName       text = property name after '.' or an object/class key
//   NumberLit      text = raw source spelling
//   StringLit      text = cooked value (UTF-8)
//   TemplateLit    kids = TemplateChunk, expr, TemplateChunk, ..., TemplateChunk
//   TemplateChunk  text = raw chunk text between substitutions
//   RegexLit       text = raw source spelling
//   BoolLit        text = true|false
//   NullLit, This, Super
//   ArrayLit       kids = elements (Spread allowed)
//   ObjectLit      kids = Property | Spread
//   Property       [0] key, [1] value; flags Computed, Shorthand, Method, Getter, Setter
//   Spread         [0] argument
//   Unary          text = operator; [0] argument
//   Update         text = ++|--; [0] argument; flag Prefix
//   Binary         text = operator (arithmetic, comparison, logical); [0] left, [1] right
//   Assign         text = operator; [0] target, [1] value
//   Conditional    [0] test, [1] consequent, [2] alternate
//   Sequence       kids = expressions
//   Call, New      [0] callee, [1..] arguments
//   Member         [0] object, [1] PropName | expression (flag Computed)
enum class NodeKind : std::uint8_t {
    None,
    Program,
    VarDecl,
    VarDeclarator,
    FunctionDecl,
    FunctionExpr,
    ArrowFunction,
    Params,
    AssignPattern,
    RestElement,
    ClassDecl,
    MethodDef,
    Block,
    EmptyStmt,
    ExprStmt,
    If,
    For,
    ForIn,
    ForOf,
    While,
    DoWhile,
    Switch,
    Case,
    Return,
    Break,
    Continue,
    Throw,
    Try,
    Catch,
    Identifier,
    PropName,
    NumberLit,
    StringLit,
    TemplateLit,
    TemplateChunk,
    RegexLit,
    BoolLit,
    NullLit,
    This,
    Super,
    ArrayLit,
    ObjectLit,
    Property,
    Spread,
    Unary,
    Update,
    Binary,
    Assign,
    Conditional,
    Sequence,
    Call,
    New,
    Member,
};

std::string_view to_string(NodeKind kind);

namespace flag {
inline constexpr std::uint32_t kComputed = 1U << 0;
inline constexpr std::uint32_t kShorthand = 1U << 1;
inline constexpr std::uint32_t kMethod = 1U << 2;
inline constexpr std::uint32_t kGetter = 1U << 3;
inline constexpr std::uint32_t kSetter = 1U << 4;
inline constexpr std::uint32_t kStatic = 1U << 5;
inline constexpr std::uint32_t kPrefix = 1U << 6;
inline constexpr std::uint32_t kExprBody = 1U << 7;
}  // namespace flag

/// A value-semantic syntax tree node. Copying a node deep-copies the subtree.
struct Node {
    NodeKind kind = NodeKind::None;
    std::string text;
    std::vector<Node> kids;
    Span span;
    std::uint32_t flags = 0;
    /// Comments that preceded this statement in the source. Only statements
    /// carry comments; Program and Block also keep trailing ones here when
    /// they have no statement to attach to.
    std::vector<std::string> comments;

    Node() = default;
    Node(NodeKind k, std::string t = {}, std::vector<Node> children = {})
        : kind(k), text(std::move(t)), kids(std::move(children)) {}

    bool is(NodeKind k) const { return kind == k; }
    bool none() const { return kind == NodeKind::None; }
    bool has(std::uint32_t f) const { return (flags & f) != 0; }
};

struct Ast {
    Node root{NodeKind::Program};
};

/// Structural equality: kinds, texts, flags and children, ignoring spans
/// and comments.
bool same_structure(const Node& a, const Node& b);

/// S-expression rendering of the structure (no spans, no comments).
std::string dump(const Node& node);

bool is_function_like(const Node& node);
bool is_statement(const Node& node);

/// Body block of a function-like node, or nullptr for expression-bodied arrows.
const Node* function_body(const Node& fn);
Node* function_body(Node& fn);

/// Params node of a function-like node.
const Node& function_params(const Node& fn);

/// Pre-order traversal. The visitor returns false to skip a node's children.
template <typename Visitor>
void walk(Node& node, Visitor&& visit) {
    if (!visit(node)) {
        return;
    }
    for (auto& kid : node.kids) {
        walk(kid, visit);
    }
}

template <typename Visitor>
void walk(const Node& node, Visitor&& visit) {
    if (!visit(node)) {
        return;
    }
    for (const auto& kid : node.kids) {
        walk(kid, visit);
    }
}

// Builders for synthesized code.
Node make_none();
Node make_ident(std::string name);
Node make_prop_name(std::string name);
Node make_string(std::string value);
Node make_number(std::string raw);
Node make_number(std::int64_t value);
Node make_call(Node callee, std::vector<Node> args);
Node make_member(Node object, std::string property);
Node make_index(Node object, Node index);
Node make_binary(std::string op, Node left, Node right);
Node make_assign(Node target, Node value, std::string op = "=");
Node make_var(std::string kind, std::string name, Node init);
Node make_expr_stmt(Node expr);
Node make_return(Node arg);
Node make_block(std::vector<Node> statements);
Node make_params(const std::vector<std::string>& names);
Node make_function_decl(std::string name, Node params, Node body);
Node make_property(std::string key, Node value);

}  // namespace iocbench::js
