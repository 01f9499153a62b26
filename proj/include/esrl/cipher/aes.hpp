#pragma once

#include <array>
#include <cstdint>

#include "esrl/common.hpp"

namespace esrl::cipher {

/// Expanded AES key schedule for 128/192/256-bit keys with single-block
/// encrypt/decrypt. Encryption dispatches to AES-NI when the CPU supports
/// it; decryption always uses the portable path (it is only a test oracle,
/// never on the training path).
class AesKey {
public:
    explicit AesKey(const Bytes& key);

    int rounds() const { return rounds_; }

    void encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const;
    void decrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const;

private:
    void encrypt_block_portable(const std::uint8_t in[16],
                                std::uint8_t out[16]) const;

    // Round keys laid out as 16-byte blocks, rounds_ + 1 of them.
    std::array<std::uint8_t, 16 * 15> round_keys_{};
    int rounds_ = 0;
    bool use_ni_ = false;
};

}  // namespace esrl::cipher
