#pragma once

#include "esrl/pipeline/processing.hpp"

namespace esrl::pipeline {

enum class PaddingMode { Custom, Pkcs7 };

struct PaddingSpec {
    PaddingMode mode = PaddingMode::Custom;
    int block_size = 16;              // k, in bytes
    std::uint8_t pad_intensity = 255; // custom mode only

    bool operator==(const PaddingSpec&) const = default;
};

/// Image-shaped padding: grows the rows x cols rectangle to the smallest
/// (rows', cols') with rows' * cols' a multiple of the block size, filling
/// new cells with pad_intensity. Ties in area are broken by growing columns
/// first. Original pixels occupy the top-left block; the layout descriptor
/// is updated to the grown rectangle.
ProcessedState pad_custom(const ProcessedState& state, const PaddingSpec& spec);

/// PKCS#7: appends p = k - (l mod k) bytes of value p (p = k when l is
/// already a multiple of k).
Bytes pad_pkcs7(const Bytes& bytes, int k);

/// Inverse of pad_pkcs7; throws IntegrityError on malformed padding.
Bytes unpad_pkcs7(const Bytes& bytes, int k);

/// Dispatches on spec.mode. PKCS#7 keeps the pre-padding layout descriptor.
ProcessedState apply_padding(const ProcessedState& state, const PaddingSpec& spec);

}  // namespace esrl::pipeline
