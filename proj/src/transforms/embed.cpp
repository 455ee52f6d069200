#include "iocbench/transforms/embed.hpp"

#include "iocbench/crypto/cipher.hpp"
#include "iocbench/error.hpp"
#include "iocbench/jsource/parser.hpp"

#include <map>

namespace iocbench::transforms {

using js::InsertionKind;
using js::Node;
using js::NodeKind;

const std::vector<std::string>& neutral_names() {
    static const std::vector<std::string> kNames = {"remoteHost", "endpoint", "serverAddr",
                                                    "syncTarget", "upstream", "relayNode"};
    return kNames;
}

namespace {

const std::vector<std::string>& table_names() {
    static const std::vector<std::string> kNames = {"labels", "messages", "resources", "stringTable"};
    return kNames;
}

std::ptrdiff_t as_offset(std::size_t i) { return static_cast<std::ptrdiff_t>(i); }

}  // namespace

js::InsertionPoint choose_insertion_point(const js::Ast& ast, Rng& rng) {
    std::map<InsertionKind, std::vector<js::InsertionPoint>> by_kind;
    for (auto& p : js::collect_insertion_points(ast)) by_kind[p.kind].push_back(std::move(p));
    // An empty program only gets the plain top-level variable.
    if (js::after_directives(ast.root) < ast.root.kids.size()) {
        by_kind[InsertionKind::StringTable].push_back(js::string_table_point());
    }
    std::vector<InsertionKind> kinds;
    for (const auto& [k, pts] : by_kind) kinds.push_back(k);
    const InsertionKind kind = rng.pick(kinds);
    return rng.pick(by_kind[kind]);
}

Embedding place_value(js::Ast& ast, Node value, Rng& rng, NameAllocator& names) {
    const js::InsertionPoint point = choose_insertion_point(ast, rng);
    Embedding e;
    e.location = point.kind;
    e.target = names.pick(neutral_names(), rng);
    Node& anchor = js::node_at(ast.root, point.anchor);
    switch (point.kind) {
        case InsertionKind::TopLevelVariable:
        case InsertionKind::StringTable: {
            const std::size_t lo = js::after_directives(ast.root);
            const std::size_t at = lo + static_cast<std::size_t>(rng.below(ast.root.kids.size() - lo + 1));
            Node stmt;
            if (point.kind == InsertionKind::StringTable) {
                e.target = names.pick(table_names(), rng);
                Node table(NodeKind::ArrayLit, {}, {js::make_string("init"), std::move(value), js::make_string("ready")});
                stmt = js::make_var("var", e.target, std::move(table));
            } else {
                stmt = js::make_var("var", e.target, std::move(value));
            }
            ast.root.kids.insert(ast.root.kids.begin() + as_offset(at), std::move(stmt));
            break;
        }
        case InsertionKind::FunctionBody:
            anchor.kids.insert(anchor.kids.begin() + as_offset(js::after_directives(anchor)),
                               js::make_var("var", e.target, std::move(value)));
            break;
        case InsertionKind::ObjectProperty:
            anchor.kids.push_back(js::make_property(e.target, std::move(value)));
            break;
    }
    return e;
}

Embedding insert_plain_ioc(js::Ast& ast, const ioc::Ioc& ioc, Rng& rng) {
    NameAllocator names(ast.root);
    return place_value(ast, js::make_string(ioc.canonical()), rng, names);
}

Embedding encode_base64_ioc(js::Ast& ast, const ioc::Ioc& ioc, Rng& rng) {
    const std::string encoded = crypto::base64_encode(crypto::to_bytes(ioc.canonical()));
    NameAllocator names(ast.root);
    return place_value(ast, js::make_call(js::make_ident("atob"), {js::make_string(encoded)}), rng, names);
}

EncryptedEmbedding embed_encrypted_ioc(js::Ast& ast, const ioc::Ioc& ioc, crypto::Scheme scheme, Rng& rng) {
    const crypto::Bytes plain = crypto::to_bytes(ioc.canonical());
    crypto::DecryptorParams params;
    if (scheme == crypto::Scheme::Xor) {
        crypto::Bytes key(static_cast<std::size_t>(rng.between(1, 8)));
        for (auto& b : key) b = static_cast<std::uint8_t>(1 + rng.below(255));
        params.key_hex = crypto::hex_encode(key);
        params.ciphertext_hex = crypto::hex_encode(crypto::xor_bytes(plain, key));
    } else {
        const auto m = crypto::AesMaterial::generate(rng);
        params.key_hex = crypto::hex_encode(m.key);
        params.iv_hex = crypto::hex_encode(m.iv);
        params.ciphertext_hex = crypto::hex_encode(crypto::aes256_encrypt(plain, m));
    }

    NameAllocator names(ast.root);
    crypto::DecryptorNames dn;
    dn.key = names.fresh("KEY");
    dn.iv = names.fresh("IV");
    dn.payload = names.fresh("PAYLOAD");
    dn.function = names.fresh("decrypt");
    const std::string placeholder = names.fresh("target");
    const auto rendered = crypto::render_decryptor(scheme, params, placeholder, dn);
    js::Ast tmpl = js::parse_source(rendered.rendered);
    Node call = std::move(tmpl.root.kids.back().kids[0].kids[1]);
    tmpl.root.kids.pop_back();

    // The call site is placed first so anchor paths computed on the
    // original program stay valid.
    EncryptedEmbedding e;
    static_cast<Embedding&>(e) = place_value(ast, std::move(call), rng, names);
    const std::size_t d = js::after_directives(ast.root);
    ast.root.kids.insert(ast.root.kids.begin() + as_offset(d), std::make_move_iterator(tmpl.root.kids.begin()),
                         std::make_move_iterator(tmpl.root.kids.end()));
    e.key_hex = params.key_hex;
    e.iv_hex = params.iv_hex;
    e.ciphertext_hex = params.ciphertext_hex;
    return e;
}

}  // namespace iocbench::transforms
