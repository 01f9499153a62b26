#pragma once

#include <cstdint>

namespace esrl::cipher::detail {

bool aesni_available();

// rk points at (rounds + 1) contiguous 16-byte round keys.
void aesni_encrypt_block(const std::uint8_t* rk, int rounds,
                         const std::uint8_t in[16], std::uint8_t out[16]);

}  // namespace esrl::cipher::detail
