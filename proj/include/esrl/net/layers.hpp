#pragma once

// Layer implementations with hand-written backward passes. Every layer owns
// its parameters, parameter gradients, an input cache for backprop, and its
// output buffer; forward/backward return references into the layer so a
// network pass does no per-call allocation once buffers are warm.
//
// All matrix work funnels through three small GEMM kernels whose inner loops
// run over contiguous memory, which is what the auto-vectorizer needs.

#include <algorithm>
#include <cmath>
#include <vector>

#include "esrl/common.hpp"
#include "esrl/net/tensor.hpp"

namespace esrl::net {

namespace detail {

// C (m x n) = A (m x k) * B (k x n); accumulates into C when acc is set.
// The kernels take restrict-qualified pointers — callers never alias
// operands — so the inner loops vectorize without runtime overlap checks.
template <typename T>
void gemm_nn(const T* __restrict a, const T* __restrict b, T* __restrict c,
             int m, int k, int n, bool acc) {
    for (int i = 0; i < m; ++i) {
        T* crow = c + static_cast<std::size_t>(i) * n;
        if (!acc) std::fill(crow, crow + n, T(0));
        for (int p = 0; p < k; ++p) {
            const T av = a[static_cast<std::size_t>(i) * k + p];
            const T* brow = b + static_cast<std::size_t>(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

// C (m x n) = A^T * B where A is (k x m), B is (k x n).
template <typename T>
void gemm_tn(const T* __restrict a, const T* __restrict b, T* __restrict c,
             int m, int k, int n, bool acc) {
    for (int i = 0; i < m; ++i) {
        T* crow = c + static_cast<std::size_t>(i) * n;
        if (!acc) std::fill(crow, crow + n, T(0));
        for (int p = 0; p < k; ++p) {
            const T av = a[static_cast<std::size_t>(p) * m + i];
            const T* brow = b + static_cast<std::size_t>(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

// C (m x n) = A * B^T where A is (m x k), B is (n x k). The dot product is
// accumulated in eight independent lanes — a single scalar accumulator is a
// serial dependency chain the compiler may not reassociate, which costs ~6x
// on long reductions.
template <typename T>
void gemm_nt(const T* __restrict a, const T* __restrict b, T* __restrict c,
             int m, int k, int n, bool acc) {
    for (int i = 0; i < m; ++i) {
        const T* arow = a + static_cast<std::size_t>(i) * k;
        T* crow = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const T* brow = b + static_cast<std::size_t>(j) * k;
            T lane[8] = {};
            int p = 0;
            for (; p + 8 <= k; p += 8)
                for (int l = 0; l < 8; ++l) lane[l] += arow[p + l] * brow[p + l];
            T sum = 0;
            for (int l = 0; l < 8; ++l) sum += lane[l];
            for (; p < k; ++p) sum += arow[p] * brow[p];
            crow[j] = acc ? crow[j] + sum : sum;
        }
    }
}

template <typename T>
void he_uniform(std::vector<T>& w, int fan_in, Rng& rng) {
    const double limit = std::sqrt(6.0 / fan_in);
    for (auto& v : w) v = static_cast<T>(rand_range(rng, -limit, limit));
}

}  // namespace detail

// Fully connected layer. Weights are stored (in, out) row-major so the
// forward pass walks both the input row and the weight row contiguously.
template <typename T>
struct Dense {
    int in = 0, out = 0;
    std::vector<T> w, b, dw, db;

    Dense(int in_dim, int out_dim) : in(in_dim), out(out_dim) {
        if (in < 1 || out < 1) throw ShapeError("dense layer needs positive dims");
        w.assign(static_cast<std::size_t>(in) * out, T(0));
        b.assign(out, T(0));
        dw.assign(w.size(), T(0));
        db.assign(b.size(), T(0));
    }

    void init(Rng& rng) {
        detail::he_uniform(w, in, rng);
        std::fill(b.begin(), b.end(), T(0));
    }

    const Tensor<T>& forward(const Tensor<T>& x) {
        if (x.shape.size() != 2 || x.shape[1] != in)
            throw ShapeError("dense input shape mismatch");
        x_ = x;
        const int batch = x.shape[0];
        y_.resize({batch, out});
        detail::gemm_nn(x.data.data(), w.data(), y_.data.data(), batch, in, out,
                        false);
        for (int i = 0; i < batch; ++i) {
            T* row = y_.data.data() + static_cast<std::size_t>(i) * out;
            for (int j = 0; j < out; ++j) row[j] += b[j];
        }
        return y_;
    }

    const Tensor<T>& backward(const Tensor<T>& dy) {
        if (!dy.same_shape(y_)) throw ShapeError("dense gradient shape mismatch");
        const int batch = dy.shape[0];
        // dw (in x out) += x^T (in x batch) * dy (batch x out)
        detail::gemm_tn(x_.data.data(), dy.data.data(), dw.data(), in, batch, out,
                        true);
        for (int i = 0; i < batch; ++i) {
            const T* row = dy.data.data() + static_cast<std::size_t>(i) * out;
            for (int j = 0; j < out; ++j) db[j] += row[j];
        }
        // dx (batch x in) = dy (batch x out) * w^T (out x in)
        dx_.resize({batch, in});
        detail::gemm_nt(dy.data.data(), w.data(), dx_.data.data(), batch, out, in,
                        false);
        return dx_;
    }

private:
    Tensor<T> x_, y_, dx_;
};

// 2-D convolution over (batch, channels, height, width) via im2col: the
// whole batch is unrolled into one (C*kh*kw) x (batch*out_h*out_w) column
// matrix, so forward and backward each reduce to a single GEMM whose inner
// dimension spans the batch — wide enough to keep the vector units busy on
// the small spatial extents this engine sees. The column matrix is cached
// for the backward pass.
template <typename T>
struct Conv2d {
    int in_ch = 0, out_ch = 0, kernel = 0, stride = 1, padding = 0;
    std::vector<T> w, b, dw, db;  // w: (out_ch, in_ch*kernel*kernel)

    Conv2d(int in_channels, int out_channels, int kernel_size, int stride_len,
           int pad)
        : in_ch(in_channels),
          out_ch(out_channels),
          kernel(kernel_size),
          stride(stride_len),
          padding(pad) {
        if (in_ch < 1 || out_ch < 1 || kernel < 1 || stride < 1 || padding < 0)
            throw ShapeError("conv layer needs positive dims");
        w.assign(static_cast<std::size_t>(out_ch) * in_ch * kernel * kernel, T(0));
        b.assign(out_ch, T(0));
        dw.assign(w.size(), T(0));
        db.assign(b.size(), T(0));
    }

    void init(Rng& rng) {
        detail::he_uniform(w, in_ch * kernel * kernel, rng);
        std::fill(b.begin(), b.end(), T(0));
    }

    int out_extent(int extent) const {
        const int padded = extent + 2 * padding - kernel;
        if (padded < 0) throw ShapeError("conv kernel larger than padded input");
        return padded / stride + 1;
    }

    const Tensor<T>& forward(const Tensor<T>& x) {
        if (x.shape.size() != 4 || x.shape[1] != in_ch)
            throw ShapeError("conv input shape mismatch");
        x_shape_ = x.shape;
        const int batch = x.shape[0], h = x.shape[2], wd = x.shape[3];
        const int oh = out_extent(h), ow = out_extent(wd);
        const int k = in_ch * kernel * kernel;
        const int span = oh * ow;
        const int bspan = batch * span;
        cols_.resize(static_cast<std::size_t>(k) * bspan);  // fully rewritten
        for (int n = 0; n < batch; ++n)
            im2col(x.data.data() + static_cast<std::size_t>(n) * in_ch * h * wd, h,
                   wd, oh, ow, bspan, cols_.data() + static_cast<std::size_t>(n) * span);
        // tmp (out_ch x batch*span) = w (out_ch x k) * cols (k x batch*span)
        tmp_.resize(static_cast<std::size_t>(out_ch) * bspan);
        detail::gemm_nn(w.data(), cols_.data(), tmp_.data(), out_ch, k, bspan,
                        false);
        // Untangle to (batch, out_ch, span) and add biases.
        y_.resize({batch, out_ch, oh, ow});
        for (int n = 0; n < batch; ++n)
            for (int c = 0; c < out_ch; ++c) {
                const T* src = tmp_.data() + static_cast<std::size_t>(c) * bspan +
                               static_cast<std::size_t>(n) * span;
                T* dst = y_.data.data() +
                         (static_cast<std::size_t>(n) * out_ch + c) * span;
                for (int j = 0; j < span; ++j) dst[j] = src[j] + b[c];
            }
        return y_;
    }

    const Tensor<T>& backward(const Tensor<T>& dy) {
        if (!dy.same_shape(y_)) throw ShapeError("conv gradient shape mismatch");
        const int batch = x_shape_[0], h = x_shape_[2], wd = x_shape_[3];
        const int oh = y_.shape[2], ow = y_.shape[3];
        const int k = in_ch * kernel * kernel;
        const int span = oh * ow;
        const int bspan = batch * span;
        // Re-tangle dy to (out_ch x batch*span); accumulate bias grads here.
        tmp_.resize(static_cast<std::size_t>(out_ch) * bspan);
        for (int n = 0; n < batch; ++n)
            for (int c = 0; c < out_ch; ++c) {
                const T* src = dy.data.data() +
                               (static_cast<std::size_t>(n) * out_ch + c) * span;
                T* dst = tmp_.data() + static_cast<std::size_t>(c) * bspan +
                         static_cast<std::size_t>(n) * span;
                T sum = 0;
                for (int j = 0; j < span; ++j) {
                    dst[j] = src[j];
                    sum += src[j];
                }
                db[c] += sum;
            }
        // dw (out_ch x k) += dtmp (out_ch x bspan) * cols^T (bspan x k)
        detail::gemm_nt(tmp_.data(), cols_.data(), dw.data(), out_ch, bspan, k,
                        true);
        // dcols (k x bspan) = w^T (k x out_ch) * dtmp (out_ch x bspan)
        dcols_.resize(static_cast<std::size_t>(k) * bspan);  // fully rewritten
        detail::gemm_tn(w.data(), tmp_.data(), dcols_.data(), k, out_ch, bspan,
                        false);
        dx_.resize(x_shape_);
        std::fill(dx_.data.begin(), dx_.data.end(), T(0));  // col2im accumulates
        for (int n = 0; n < batch; ++n)
            col2im(dcols_.data() + static_cast<std::size_t>(n) * span, h, wd, oh,
                   ow, bspan,
                   dx_.data.data() + static_cast<std::size_t>(n) * in_ch * h * wd);
        return dx_;
    }

private:
    // Writes one sample's patches into its column block of the shared
    // (k x batch*span) matrix; `stride_cols` is that matrix's row stride.
    void im2col(const T* img, int h, int wd, int oh, int ow, int stride_cols,
                T* cols) const {
        int row = 0;
        for (int c = 0; c < in_ch; ++c) {
            const T* plane = img + static_cast<std::size_t>(c) * h * wd;
            for (int kr = 0; kr < kernel; ++kr)
                for (int kc = 0; kc < kernel; ++kc, ++row) {
                    T* dst = cols + static_cast<std::size_t>(row) * stride_cols;
                    for (int r = 0; r < oh; ++r) {
                        const int ir = r * stride - padding + kr;
                        for (int cc = 0; cc < ow; ++cc) {
                            const int ic = cc * stride - padding + kc;
                            dst[r * ow + cc] =
                                (ir >= 0 && ir < h && ic >= 0 && ic < wd)
                                    ? plane[ir * wd + ic]
                                    : T(0);
                        }
                    }
                }
        }
    }

    void col2im(const T* cols, int h, int wd, int oh, int ow, int stride_cols,
                T* img) const {
        int row = 0;
        for (int c = 0; c < in_ch; ++c) {
            T* plane = img + static_cast<std::size_t>(c) * h * wd;
            for (int kr = 0; kr < kernel; ++kr)
                for (int kc = 0; kc < kernel; ++kc, ++row) {
                    const T* src = cols + static_cast<std::size_t>(row) * stride_cols;
                    for (int r = 0; r < oh; ++r) {
                        const int ir = r * stride - padding + kr;
                        if (ir < 0 || ir >= h) continue;
                        for (int cc = 0; cc < ow; ++cc) {
                            const int ic = cc * stride - padding + kc;
                            if (ic >= 0 && ic < wd)
                                plane[ir * wd + ic] += src[r * ow + cc];
                        }
                    }
                }
        }
    }

    std::vector<int> x_shape_;
    std::vector<T> cols_, dcols_, tmp_;
    Tensor<T> y_, dx_;
};

template <typename T>
struct Relu {
    const Tensor<T>& forward(const Tensor<T>& x) {
        y_ = x;
        for (auto& v : y_.data) v = std::max(v, T(0));
        return y_;
    }

    const Tensor<T>& backward(const Tensor<T>& dy) {
        if (!dy.same_shape(y_)) throw ShapeError("relu gradient shape mismatch");
        dx_ = dy;
        for (std::size_t i = 0; i < dx_.data.size(); ++i)
            if (y_.data[i] <= T(0)) dx_.data[i] = T(0);
        return dx_;
    }

private:
    Tensor<T> y_, dx_;
};

// Collapses everything after the batch dimension; backward restores shape.
template <typename T>
struct Flatten {
    const Tensor<T>& forward(const Tensor<T>& x) {
        x_shape_ = x.shape;
        y_.shape = {x.batch(), static_cast<int>(x.numel()) / x.batch()};
        y_.data = x.data;
        return y_;
    }

    const Tensor<T>& backward(const Tensor<T>& dy) {
        if (!dy.same_shape(y_)) throw ShapeError("flatten gradient shape mismatch");
        dx_.shape = x_shape_;
        dx_.data = dy.data;
        return dx_;
    }

private:
    std::vector<int> x_shape_;
    Tensor<T> y_, dx_;
};

}  // namespace esrl::net
