#pragma once

// Encryption primitives applied to processed states before they reach the
// agent: identity (noop), keyed byte shuffle, AES-ECB, and AES-CBC with a
// prepended IV. The primitive is the only component that touches key
// material; everything downstream (replay memory, network) sees CipherState
// bytes and never the plaintext.

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "esrl/cipher/aes.hpp"
#include "esrl/common.hpp"
#include "esrl/pipeline/processing.hpp"

namespace esrl::cipher {

enum class SchemeKind { Noop, Shuffle, AesEcb, AesCbc };

// Config-facing names: "noop", "shuffle", "aes_ecb", "aes_cbc".
const char* to_string(SchemeKind kind);
SchemeKind parse_scheme_kind(const std::string& name);  // throws ConfigError

// Block ciphers require 16-byte-aligned plaintext; padding is applied for
// them only. Noop and shuffle consume the processed state as-is.
inline bool needs_block_alignment(SchemeKind kind) {
    return kind == SchemeKind::AesEcb || kind == SchemeKind::AesCbc;
}

struct SchemeSpec {
    SchemeKind kind = SchemeKind::Noop;
    // AES key length in bytes (16, 24, or 32); ignored by noop/shuffle.
    int key_len = 32;
    // Seed for the shuffle permutation; ignored by the other schemes.
    std::uint64_t shuffle_seed = 0;

    bool operator==(const SchemeSpec&) const = default;
};

// Ciphertext plus the metadata needed to turn it back into a network input:
// the scheme that produced it and the plaintext layout it was derived from.
// For CBC, bytes = IV || ciphertext, so bytes.size() = rows*cols + 16 and the
// reassembly step widens the matrix rather than assuming the stored shape.
struct CipherState {
    Bytes bytes;
    SchemeKind scheme = SchemeKind::Noop;
    int rows = 0;
    int cols = 0;

    bool operator==(const CipherState&) const = default;
};

// Fisher-Yates permutation of [0, n) from a deterministic generator, so the
// same (seed, n) always yields the same byte ordering.
std::vector<std::uint32_t> shuffle_permutation(std::uint64_t seed, std::size_t n);

class Primitive {
public:
    // `key` must be empty for noop/shuffle and exactly spec.key_len bytes
    // (16, 24, or 32) for the AES schemes. `iv_seed` drives the CBC IV
    // stream; it is unused by the other schemes.
    Primitive(const SchemeSpec& spec, const Bytes& key, std::uint64_t iv_seed = 0);

    // Non-const because CBC consumes IVs from the internal generator, which
    // is the one piece of mutable state: noop/shuffle/ECB encryption is safe
    // to call concurrently on a shared handle, CBC callers must serialize.
    // decrypt is always safe to call concurrently.
    CipherState encrypt(const pipeline::ProcessedState& plaintext);

    // Test oracle — the agent never decrypts. Recovers the padded plaintext.
    pipeline::ProcessedState decrypt(const CipherState& cipher) const;

    const SchemeSpec& spec() const { return spec_; }

private:
    const std::vector<std::uint32_t>& permutation_for(std::size_t n) const;

    SchemeSpec spec_;
    std::unique_ptr<AesKey> aes_;
    Rng iv_rng_;
    // Shuffle permutations per byte length, built on first use. The cache is
    // logically part of construction (the permutation is fixed by the spec),
    // so filling it lazily under a mutex keeps the handle shareable.
    mutable std::unique_ptr<std::mutex> perm_mutex_;
    mutable std::unordered_map<std::size_t, std::vector<std::uint32_t>> perm_cache_;
};

Primitive make_primitive(const SchemeSpec& spec, const Bytes& key,
                         std::uint64_t iv_seed = 0);

}  // namespace esrl::cipher
