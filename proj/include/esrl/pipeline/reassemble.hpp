#pragma once

// Turns ciphertext bytes back into a matrix the network can consume. The
// cipher may change the byte count (CBC prepends an IV; PKCS#7 pads past the
// stored layout), so this is a total function: it reshapes when the length
// still matches the recorded layout and otherwise re-wraps at the original
// width, zero-filling the tail.

#include "esrl/cipher/primitive.hpp"
#include "esrl/image.hpp"

namespace esrl::pipeline {

ByteMatrix reassemble(const cipher::CipherState& cipher);

}  // namespace esrl::pipeline
