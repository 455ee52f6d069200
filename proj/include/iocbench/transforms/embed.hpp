#pragma once

#include "iocbench/crypto/decryptor.hpp"
#include "iocbench/ioc/ioc.hpp"
#include "iocbench/jsource/ast.hpp"
#include "iocbench/jsource/insertion.hpp"
#include "iocbench/rng.hpp"
#include "iocbench/transforms/names.hpp"

#include <string>
#include <vector>

namespace iocbench::transforms {

/// Variable names used for the embedded indicator.
const std::vector<std::string>& neutral_names();

struct Embedding {
    js::InsertionKind location = js::InsertionKind::TopLevelVariable;
    /// Variable or property that receives the value.
    std::string target;
};

struct EncryptedEmbedding : Embedding {
    std::string key_hex;
    std::string iv_hex;
    std::string ciphertext_hex;
};

/// Seeded choice: a kind uniformly among those available (top-level
/// variable, function body, object property, string table), then an anchor
/// uniformly among points of that kind. The string table is offered only
/// when the program has statements.
js::InsertionPoint choose_insertion_point(const js::Ast& ast, Rng& rng);

/// Places value at a seeded insertion point: `var <name> = value;`, a new
/// property `<name>: value`, or `var <table> = ["init", value, "ready"];`.
/// Top-level statements go at a seeded statement boundary.
Embedding place_value(js::Ast& ast, js::Node value, Rng& rng, NameAllocator& names);

/// P0: the dotted quad as a string literal, exactly once.
Embedding insert_plain_ioc(js::Ast& ast, const ioc::Ioc& ioc, Rng& rng);

/// P1: atob("<base64>") in place of the literal.
Embedding encode_base64_ioc(js::Ast& ast, const ioc::Ioc& ioc, Rng& rng);

/// P5/P6: decryptor constants and function go to the top of the program,
/// the decrypt call to the insertion point. Key material comes from rng.
EncryptedEmbedding embed_encrypted_ioc(js::Ast& ast, const ioc::Ioc& ioc, crypto::Scheme scheme, Rng& rng);

}  // namespace iocbench::transforms
