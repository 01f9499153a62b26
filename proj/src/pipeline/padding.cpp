#include "esrl/pipeline/padding.hpp"

namespace esrl::pipeline {

ProcessedState pad_custom(const ProcessedState& state, const PaddingSpec& spec) {
    if (spec.mode != PaddingMode::Custom)
        throw UsageError("pad_custom called with a non-custom padding spec");
    if (state.rows < 1 || state.cols < 1 ||
        state.bytes.size() != static_cast<std::size_t>(state.rows) * state.cols)
        throw ShapeError("pad_custom requires a 2-D state with rows*cols bytes");
    const int k = spec.block_size;
    if (k < 1) throw ConfigError("block size must be positive");

    // Smallest (rows', cols') >= (rows, cols) with rows' * cols' = 0 mod k;
    // minimal area, then minimal rows' (grow columns before rows). A valid
    // candidate always exists within k extra rows/columns.
    int best_r = -1, best_c = -1;
    long best_area = -1;
    for (int r = state.rows; r <= state.rows + k; ++r) {
        for (int c = state.cols; c <= state.cols + k; ++c) {
            const long area = static_cast<long>(r) * c;
            if (area % k != 0) continue;
            if (best_area < 0 || area < best_area ||
                (area == best_area && r < best_r)) {
                best_area = area;
                best_r = r;
                best_c = c;
            }
        }
    }

    ProcessedState out;
    out.rows = best_r;
    out.cols = best_c;
    out.bytes.assign(static_cast<std::size_t>(best_area), spec.pad_intensity);
    for (int r = 0; r < state.rows; ++r)
        for (int c = 0; c < state.cols; ++c)
            out.bytes[static_cast<std::size_t>(r) * best_c + c] =
                state.bytes[static_cast<std::size_t>(r) * state.cols + c];
    return out;
}

Bytes pad_pkcs7(const Bytes& bytes, int k) {
    if (k < 1 || k > 255)
        throw ConfigError("PKCS#7 block size must be in [1, 255]");
    const std::size_t l = bytes.size();
    const std::size_t p = static_cast<std::size_t>(k) - l % k;
    Bytes out = bytes;
    out.insert(out.end(), p, static_cast<std::uint8_t>(p));
    return out;
}

Bytes unpad_pkcs7(const Bytes& bytes, int k) {
    if (k < 1 || k > 255)
        throw ConfigError("PKCS#7 block size must be in [1, 255]");
    if (bytes.empty() || bytes.size() % static_cast<std::size_t>(k) != 0)
        throw IntegrityError("PKCS#7: input length is not a multiple of the block size");
    const std::uint8_t p = bytes.back();
    if (p < 1 || p > k || p > bytes.size())
        throw IntegrityError("PKCS#7: invalid padding length byte");
    for (std::size_t i = bytes.size() - p; i < bytes.size(); ++i)
        if (bytes[i] != p) throw IntegrityError("PKCS#7: inconsistent padding bytes");
    return Bytes(bytes.begin(), bytes.end() - p);
}

ProcessedState apply_padding(const ProcessedState& state, const PaddingSpec& spec) {
    if (spec.mode == PaddingMode::Custom) return pad_custom(state, spec);
    ProcessedState out = state;
    out.bytes = pad_pkcs7(state.bytes, spec.block_size);
    return out;
}

}  // namespace esrl::pipeline
