// Byte-oriented AES (FIPS-197) with the key schedule for all three key
// sizes. State bytes are kept in input order: s[i] holds row i%4 of
// column i/4.

#include "esrl/cipher/aes.hpp"

#include <cstring>

#include "aes_ni.hpp"

namespace esrl::cipher {

namespace {

constexpr std::uint8_t kSbox[256] = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b,
    0xfe, 0xd7, 0xab, 0x76, 0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0,
    0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0, 0xb7, 0xfd, 0x93, 0x26,
    0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2,
    0xeb, 0x27, 0xb2, 0x75, 0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0,
    0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84, 0x53, 0xd1, 0x00, 0xed,
    0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f,
    0x50, 0x3c, 0x9f, 0xa8, 0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5,
    0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2, 0xcd, 0x0c, 0x13, 0xec,
    0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14,
    0xde, 0x5e, 0x0b, 0xdb, 0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c,
    0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79, 0xe7, 0xc8, 0x37, 0x6d,
    0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f,
    0x4b, 0xbd, 0x8b, 0x8a, 0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e,
    0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e, 0xe1, 0xf8, 0x98, 0x11,
    0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f,
    0xb0, 0x54, 0xbb, 0x16};

struct InvSbox {
    std::uint8_t t[256];
    InvSbox() {
        for (int i = 0; i < 256; ++i) t[kSbox[i]] = static_cast<std::uint8_t>(i);
    }
};
const InvSbox kInvSbox;

constexpr std::uint8_t kRcon[11] = {0x00, 0x01, 0x02, 0x04, 0x08, 0x10,
                                    0x20, 0x40, 0x80, 0x1b, 0x36};

inline std::uint8_t xtime(std::uint8_t x) {
    return static_cast<std::uint8_t>((x << 1) ^ ((x >> 7) * 0x1b));
}

std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t p = 0;
    while (b) {
        if (b & 1) p ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return p;
}

inline void add_round_key(std::uint8_t s[16], const std::uint8_t* rk) {
    for (int i = 0; i < 16; ++i) s[i] ^= rk[i];
}

inline void sub_bytes(std::uint8_t s[16]) {
    for (int i = 0; i < 16; ++i) s[i] = kSbox[s[i]];
}

inline void inv_sub_bytes(std::uint8_t s[16]) {
    for (int i = 0; i < 16; ++i) s[i] = kInvSbox.t[s[i]];
}

// Row r (bytes r, r+4, r+8, r+12) rotates left by r positions.
inline void shift_rows(std::uint8_t s[16]) {
    std::uint8_t t[16];
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) t[r + 4 * c] = s[r + 4 * ((c + r) & 3)];
    std::memcpy(s, t, 16);
}

inline void inv_shift_rows(std::uint8_t s[16]) {
    std::uint8_t t[16];
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) t[r + 4 * ((c + r) & 3)] = s[r + 4 * c];
    std::memcpy(s, t, 16);
}

inline void mix_columns(std::uint8_t s[16]) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* p = s + 4 * c;
        const std::uint8_t t = p[0] ^ p[1] ^ p[2] ^ p[3];
        const std::uint8_t u = p[0];
        p[0] ^= t ^ xtime(static_cast<std::uint8_t>(p[0] ^ p[1]));
        p[1] ^= t ^ xtime(static_cast<std::uint8_t>(p[1] ^ p[2]));
        p[2] ^= t ^ xtime(static_cast<std::uint8_t>(p[2] ^ p[3]));
        p[3] ^= t ^ xtime(static_cast<std::uint8_t>(p[3] ^ u));
    }
}

inline void inv_mix_columns(std::uint8_t s[16]) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* p = s + 4 * c;
        const std::uint8_t a0 = p[0], a1 = p[1], a2 = p[2], a3 = p[3];
        p[0] = gmul(a0, 14) ^ gmul(a1, 11) ^ gmul(a2, 13) ^ gmul(a3, 9);
        p[1] = gmul(a0, 9) ^ gmul(a1, 14) ^ gmul(a2, 11) ^ gmul(a3, 13);
        p[2] = gmul(a0, 13) ^ gmul(a1, 9) ^ gmul(a2, 14) ^ gmul(a3, 11);
        p[3] = gmul(a0, 11) ^ gmul(a1, 13) ^ gmul(a2, 9) ^ gmul(a3, 14);
    }
}

}  // namespace

AesKey::AesKey(const Bytes& key) {
    const std::size_t len = key.size();
    if (len != 16 && len != 24 && len != 32)
        throw ConfigError("AES key length must be 16, 24, or 32 bytes, got " +
                          std::to_string(len));
    const int nk = static_cast<int>(len / 4);
    rounds_ = nk + 6;
    const int nwords = 4 * (rounds_ + 1);

    std::uint8_t* w = round_keys_.data();
    std::memcpy(w, key.data(), len);
    for (int i = nk; i < nwords; ++i) {
        std::uint8_t temp[4];
        std::memcpy(temp, w + 4 * (i - 1), 4);
        if (i % nk == 0) {
            const std::uint8_t t0 = temp[0];
            temp[0] = static_cast<std::uint8_t>(kSbox[temp[1]] ^ kRcon[i / nk]);
            temp[1] = kSbox[temp[2]];
            temp[2] = kSbox[temp[3]];
            temp[3] = kSbox[t0];
        } else if (nk > 6 && i % nk == 4) {
            for (auto& b : temp) b = kSbox[b];
        }
        for (int j = 0; j < 4; ++j)
            w[4 * i + j] = static_cast<std::uint8_t>(w[4 * (i - nk) + j] ^ temp[j]);
    }
    use_ni_ = detail::aesni_available();
}

void AesKey::encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const {
    if (use_ni_) {
        detail::aesni_encrypt_block(round_keys_.data(), rounds_, in, out);
        return;
    }
    encrypt_block_portable(in, out);
}

void AesKey::encrypt_block_portable(const std::uint8_t in[16],
                                    std::uint8_t out[16]) const {
    std::uint8_t s[16];
    std::memcpy(s, in, 16);
    add_round_key(s, round_keys_.data());
    for (int r = 1; r < rounds_; ++r) {
        sub_bytes(s);
        shift_rows(s);
        mix_columns(s);
        add_round_key(s, round_keys_.data() + 16 * r);
    }
    sub_bytes(s);
    shift_rows(s);
    add_round_key(s, round_keys_.data() + 16 * rounds_);
    std::memcpy(out, s, 16);
}

void AesKey::decrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const {
    std::uint8_t s[16];
    std::memcpy(s, in, 16);
    add_round_key(s, round_keys_.data() + 16 * rounds_);
    for (int r = rounds_ - 1; r >= 1; --r) {
        inv_shift_rows(s);
        inv_sub_bytes(s);
        add_round_key(s, round_keys_.data() + 16 * r);
        inv_mix_columns(s);
    }
    inv_shift_rows(s);
    inv_sub_bytes(s);
    add_round_key(s, round_keys_.data());
    std::memcpy(out, s, 16);
}

}  // namespace esrl::cipher
