#include "esrl/cipher/primitive.hpp"

#include <algorithm>

namespace esrl::cipher {
namespace {

constexpr std::size_t kBlock = 16;

void xor_block(std::uint8_t* dst, const std::uint8_t* src) {
    for (std::size_t i = 0; i < kBlock; ++i) dst[i] ^= src[i];
}

}  // namespace

const char* to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Noop: return "noop";
        case SchemeKind::Shuffle: return "shuffle";
        case SchemeKind::AesEcb: return "aes_ecb";
        case SchemeKind::AesCbc: return "aes_cbc";
    }
    throw UsageError("unknown scheme kind");
}

SchemeKind parse_scheme_kind(const std::string& name) {
    if (name == "noop") return SchemeKind::Noop;
    if (name == "shuffle") return SchemeKind::Shuffle;
    if (name == "aes_ecb") return SchemeKind::AesEcb;
    if (name == "aes_cbc") return SchemeKind::AesCbc;
    throw ConfigError("unknown scheme kind '" + name +
                      "' (expected noop, shuffle, aes_ecb, or aes_cbc)");
}

std::vector<std::uint32_t> shuffle_permutation(std::uint64_t seed, std::size_t n) {
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
    Rng rng(splitmix64(seed));
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rand_index(rng, i);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

Primitive::Primitive(const SchemeSpec& spec, const Bytes& key, std::uint64_t iv_seed)
    : spec_(spec), perm_mutex_(std::make_unique<std::mutex>()) {
    switch (spec_.kind) {
        case SchemeKind::Noop:
        case SchemeKind::Shuffle:
            if (!key.empty())
                throw ConfigError(std::string(to_string(spec_.kind)) +
                                  " takes no key material");
            break;
        case SchemeKind::AesEcb:
        case SchemeKind::AesCbc:
            if (spec_.key_len != 16 && spec_.key_len != 24 && spec_.key_len != 32)
                throw ConfigError("AES key length must be 16, 24, or 32 bytes");
            if (key.size() != static_cast<std::size_t>(spec_.key_len))
                throw ConfigError("key does not match the configured key length");
            aes_ = std::make_unique<AesKey>(key);
            break;
    }
    if (spec_.kind == SchemeKind::AesCbc) iv_rng_.seed(splitmix64(iv_seed));
}

const std::vector<std::uint32_t>& Primitive::permutation_for(std::size_t n) const {
    std::lock_guard<std::mutex> lock(*perm_mutex_);
    auto it = perm_cache_.find(n);
    if (it == perm_cache_.end())
        it = perm_cache_.emplace(n, shuffle_permutation(spec_.shuffle_seed, n)).first;
    return it->second;
}

CipherState Primitive::encrypt(const pipeline::ProcessedState& plaintext) {
    CipherState out;
    out.scheme = spec_.kind;
    out.rows = plaintext.rows;
    out.cols = plaintext.cols;
    const Bytes& in = plaintext.bytes;
    switch (spec_.kind) {
        case SchemeKind::Noop:
            out.bytes = in;
            break;
        case SchemeKind::Shuffle: {
            const auto& perm = permutation_for(in.size());
            out.bytes.resize(in.size());
            for (std::size_t i = 0; i < in.size(); ++i) out.bytes[i] = in[perm[i]];
            break;
        }
        case SchemeKind::AesEcb: {
            if (in.empty() || in.size() % kBlock != 0)
                throw LengthError("block cipher input must be padded to one or more 16-byte blocks");
            out.bytes.resize(in.size());
            for (std::size_t off = 0; off < in.size(); off += kBlock)
                aes_->encrypt_block(in.data() + off, out.bytes.data() + off);
            break;
        }
        case SchemeKind::AesCbc: {
            if (in.empty() || in.size() % kBlock != 0)
                throw LengthError("block cipher input must be padded to one or more 16-byte blocks");
            out.bytes.resize(kBlock + in.size());
            const Bytes iv = random_bytes(iv_rng_, kBlock);
            std::copy(iv.begin(), iv.end(), out.bytes.begin());
            std::uint8_t block[kBlock];
            const std::uint8_t* chain = out.bytes.data();  // starts at the IV
            for (std::size_t off = 0; off < in.size(); off += kBlock) {
                std::copy_n(in.data() + off, kBlock, block);
                xor_block(block, chain);
                aes_->encrypt_block(block, out.bytes.data() + kBlock + off);
                chain = out.bytes.data() + kBlock + off;
            }
            break;
        }
    }
    return out;
}

pipeline::ProcessedState Primitive::decrypt(const CipherState& cipher) const {
    if (cipher.scheme != spec_.kind)
        throw IntegrityError("cipher state was produced by a different scheme");
    pipeline::ProcessedState out;
    out.rows = cipher.rows;
    out.cols = cipher.cols;
    const Bytes& in = cipher.bytes;
    switch (spec_.kind) {
        case SchemeKind::Noop:
            out.bytes = in;
            break;
        case SchemeKind::Shuffle: {
            const auto& perm = permutation_for(in.size());
            out.bytes.resize(in.size());
            for (std::size_t i = 0; i < in.size(); ++i) out.bytes[perm[i]] = in[i];
            break;
        }
        case SchemeKind::AesEcb: {
            if (in.empty() || in.size() % kBlock != 0)
                throw IntegrityError("ECB ciphertext must be one or more 16-byte blocks");
            out.bytes.resize(in.size());
            for (std::size_t off = 0; off < in.size(); off += kBlock)
                aes_->decrypt_block(in.data() + off, out.bytes.data() + off);
            break;
        }
        case SchemeKind::AesCbc: {
            if (in.size() < 2 * kBlock || in.size() % kBlock != 0)
                throw IntegrityError("CBC ciphertext must be an IV plus one or more blocks");
            out.bytes.resize(in.size() - kBlock);
            for (std::size_t off = kBlock; off < in.size(); off += kBlock) {
                aes_->decrypt_block(in.data() + off, out.bytes.data() + off - kBlock);
                xor_block(out.bytes.data() + off - kBlock, in.data() + off - kBlock);
            }
            break;
        }
    }
    return out;
}

Primitive make_primitive(const SchemeSpec& spec, const Bytes& key,
                         std::uint64_t iv_seed) {
    return Primitive(spec, key, iv_seed);
}

}  // namespace esrl::cipher
