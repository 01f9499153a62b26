#include "esrl/pipeline/reassemble.hpp"

#include <algorithm>

namespace esrl::pipeline {

ByteMatrix reassemble(const cipher::CipherState& cipher) {
    const std::size_t len = cipher.bytes.size();
    ByteMatrix out;

    // Vector states (and degenerate layouts) stay flat.
    if (cipher.rows <= 1 || cipher.cols < 1) {
        out.rows = 1;
        out.cols = static_cast<int>(len);
        out.data = cipher.bytes;
        return out;
    }

    // Length still matches the stored layout: plain row-major reshape.
    if (len == static_cast<std::size_t>(cipher.rows) * cipher.cols) {
        out.rows = cipher.rows;
        out.cols = cipher.cols;
        out.data = cipher.bytes;
        return out;
    }

    // Length changed (IV prepended, PKCS#7 overhang): keep the original
    // width and add rows, zero-filling whatever the last row leaves open.
    out.cols = cipher.cols;
    out.rows = static_cast<int>((len + cipher.cols - 1) / cipher.cols);
    out.data.assign(static_cast<std::size_t>(out.rows) * out.cols, 0);
    std::copy(cipher.bytes.begin(), cipher.bytes.end(), out.data.begin());
    return out;
}

}  // namespace esrl::pipeline
