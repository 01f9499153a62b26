#pragma once

// Q-network assembly: a declarative spec (conv stack + dense head, or plain
// MLP) compiled into a sequence of layers. The same template serves training
// (float) and gradient checking (double).

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "esrl/common.hpp"
#include "esrl/net/layers.hpp"
#include "esrl/net/tensor.hpp"

namespace esrl::net {

enum class NetKind { Cnn, Mlp };

const char* to_string(NetKind kind);
NetKind parse_net_kind(const std::string& name);  // throws ConfigError

struct ConvSpec {
    int channels = 0;
    int kernel = 3;
    int stride = 1;
    int padding = 1;

    bool operator==(const ConvSpec&) const = default;
};

struct QNetworkSpec {
    NetKind kind = NetKind::Mlp;
    // {channels, height, width} for cnn; {dim} for mlp.
    std::vector<int> input_shape;
    std::vector<ConvSpec> convs;  // cnn only
    std::vector<int> hidden;      // dense widths before the output layer
    int actions = 0;

    bool operator==(const QNetworkSpec&) const = default;
};

// Default architectures. Convolutions keep spatial extent (3x3, stride 1,
// padding 1) so the stack stays defined on the smallest padded inputs (4x4).
inline QNetworkSpec default_cnn_spec(int height, int width, int actions) {
    QNetworkSpec spec;
    spec.kind = NetKind::Cnn;
    spec.input_shape = {1, height, width};
    spec.convs = {{16, 3, 1, 1}, {32, 3, 1, 1}};
    spec.hidden = {64};
    spec.actions = actions;
    return spec;
}

inline QNetworkSpec default_mlp_spec(int dim, int actions) {
    QNetworkSpec spec;
    spec.kind = NetKind::Mlp;
    spec.input_shape = {dim};
    spec.hidden = {64, 64};
    spec.actions = actions;
    return spec;
}

// Mutable slice over one parameter array and its gradient.
template <typename T>
struct ParamView {
    T* param = nullptr;
    T* grad = nullptr;
    std::size_t size = 0;
};

template <typename T>
class QNetwork {
public:
    explicit QNetwork(const QNetworkSpec& spec) : spec_(spec) {
        if (spec_.actions < 1) throw ConfigError("network needs at least one action");
        if (spec_.kind == NetKind::Cnn) {
            if (spec_.input_shape.size() != 3)
                throw ConfigError("cnn input shape must be (channels, height, width)");
            int ch = spec_.input_shape[0];
            int h = spec_.input_shape[1];
            int w = spec_.input_shape[2];
            if (ch < 1 || h < 1 || w < 1)
                throw ConfigError("cnn input dimensions must be positive");
            for (const auto& conv : spec_.convs) {
                Conv2d<T> layer(ch, conv.channels, conv.kernel, conv.stride,
                                conv.padding);
                h = layer.out_extent(h);
                w = layer.out_extent(w);
                ch = conv.channels;
                layers_.emplace_back(std::move(layer));
                layers_.emplace_back(Relu<T>{});
            }
            layers_.emplace_back(Flatten<T>{});
            int width = ch * h * w;
            for (int hidden : spec_.hidden) {
                layers_.emplace_back(Dense<T>(width, hidden));
                layers_.emplace_back(Relu<T>{});
                width = hidden;
            }
            layers_.emplace_back(Dense<T>(width, spec_.actions));
        } else {
            if (spec_.input_shape.size() != 1)
                throw ConfigError("mlp input shape must be a single dimension");
            if (!spec_.convs.empty())
                throw ConfigError("mlp spec cannot carry conv layers");
            int width = spec_.input_shape[0];
            if (width < 1) throw ConfigError("mlp input dimension must be positive");
            for (int hidden : spec_.hidden) {
                layers_.emplace_back(Dense<T>(width, hidden));
                layers_.emplace_back(Relu<T>{});
                width = hidden;
            }
            layers_.emplace_back(Dense<T>(width, spec_.actions));
        }
    }

    void init(Rng& rng) {
        for (auto& layer : layers_)
            std::visit(
                [&rng](auto& l) {
                    using L = std::decay_t<decltype(l)>;
                    if constexpr (std::is_same_v<L, Dense<T>> ||
                                  std::is_same_v<L, Conv2d<T>>)
                        l.init(rng);
                },
                layer);
    }

    const Tensor<T>& forward(const Tensor<T>& x) {
        const Tensor<T>* cur = &x;
        for (auto& layer : layers_)
            cur = std::visit([cur](auto& l) { return &l.forward(*cur); }, layer);
        return *cur;
    }

    // Accumulates parameter gradients; call zero_grads() between batches.
    const Tensor<T>& backward(const Tensor<T>& dy) {
        const Tensor<T>* cur = &dy;
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it)
            cur = std::visit([cur](auto& l) { return &l.backward(*cur); }, *it);
        return *cur;
    }

    void zero_grads() {
        for (auto view : params())
            std::fill(view.grad, view.grad + view.size, T(0));
    }

    // Parameter slices in declaration order (weights before biases per layer).
    std::vector<ParamView<T>> params() {
        std::vector<ParamView<T>> views;
        for (auto& layer : layers_)
            std::visit(
                [&views](auto& l) {
                    using L = std::decay_t<decltype(l)>;
                    if constexpr (std::is_same_v<L, Dense<T>> ||
                                  std::is_same_v<L, Conv2d<T>>) {
                        views.push_back({l.w.data(), l.dw.data(), l.w.size()});
                        views.push_back({l.b.data(), l.db.data(), l.b.size()});
                    }
                },
                layer);
        return views;
    }

    std::size_t param_count() {
        std::size_t n = 0;
        for (auto view : params()) n += view.size;
        return n;
    }

    void copy_params_from(QNetwork& other) {
        if (!(spec_ == other.spec_))
            throw UsageError("cannot copy parameters between different specs");
        auto dst = params();
        auto src = other.params();
        for (std::size_t i = 0; i < dst.size(); ++i)
            std::copy(src[i].param, src[i].param + src[i].size, dst[i].param);
    }

    const QNetworkSpec& spec() const { return spec_; }

private:
    using Layer = std::variant<Dense<T>, Conv2d<T>, Relu<T>, Flatten<T>>;

    QNetworkSpec spec_;
    std::vector<Layer> layers_;
};

}  // namespace esrl::net
