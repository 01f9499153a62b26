// AES-NI single-block encryption. This translation unit is compiled with
// -maes; callers must check aesni_available() before dispatching here.

#include "aes_ni.hpp"

#include <wmmintrin.h>

namespace esrl::cipher::detail {

bool aesni_available() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("aes") != 0;
#else
    return false;
#endif
}

void aesni_encrypt_block(const std::uint8_t* rk, int rounds,
                         const std::uint8_t in[16], std::uint8_t out[16]) {
    const __m128i* keys = reinterpret_cast<const __m128i*>(rk);
    __m128i state = _mm_loadu_si128(reinterpret_cast<const __m128i*>(in));
    state = _mm_xor_si128(state, _mm_loadu_si128(keys));
    for (int r = 1; r < rounds; ++r) {
        state = _mm_aesenc_si128(state, _mm_loadu_si128(keys + r));
    }
    state = _mm_aesenclast_si128(state, _mm_loadu_si128(keys + rounds));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out), state);
}

}  // namespace esrl::cipher::detail
