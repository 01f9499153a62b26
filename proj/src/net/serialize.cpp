#include "esrl/net/serialize.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace esrl::net {
namespace {

constexpr char kMagic[4] = {'E', 'S', 'N', 'W'};
constexpr std::uint32_t kVersion = 1;

// This format assumes a little-endian host (the only kind we target); the
// writers/readers below go through fixed-width types so the layout is pinned.
template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof value);
    if (!in) throw DataError("network file truncated");
    return value;
}

}  // namespace

const char* to_string(NetKind kind) {
    return kind == NetKind::Cnn ? "cnn" : "mlp";
}

NetKind parse_net_kind(const std::string& name) {
    if (name == "cnn") return NetKind::Cnn;
    if (name == "mlp") return NetKind::Mlp;
    throw ConfigError("unknown network kind '" + name + "'");
}

void save_network(QNetwork<float>& network, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    const QNetworkSpec& spec = network.spec();
    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, kVersion);
    put<std::uint8_t>(out, spec.kind == NetKind::Cnn ? 0 : 1);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(spec.input_shape.size()));
    for (int dim : spec.input_shape) put<std::int32_t>(out, dim);
    put<std::uint16_t>(out, static_cast<std::uint16_t>(spec.convs.size()));
    for (const auto& conv : spec.convs) {
        put<std::int32_t>(out, conv.channels);
        put<std::int32_t>(out, conv.kernel);
        put<std::int32_t>(out, conv.stride);
        put<std::int32_t>(out, conv.padding);
    }
    put<std::uint16_t>(out, static_cast<std::uint16_t>(spec.hidden.size()));
    for (int width : spec.hidden) put<std::int32_t>(out, width);
    put<std::int32_t>(out, spec.actions);
    put<std::uint64_t>(out, network.param_count());
    for (auto view : network.params())
        out.write(reinterpret_cast<const char*>(view.param),
                  static_cast<std::streamsize>(view.size * sizeof(float)));
    if (!out) throw DataError("short write to '" + path + "'");
}

QNetwork<float> load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "' for reading");
    char magic[4];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw DataError("'" + path + "' is not a network snapshot");
    if (get<std::uint32_t>(in) != kVersion)
        throw DataError("unsupported network snapshot version");

    QNetworkSpec spec;
    spec.kind = get<std::uint8_t>(in) == 0 ? NetKind::Cnn : NetKind::Mlp;
    const int rank = get<std::uint8_t>(in);
    for (int i = 0; i < rank; ++i)
        spec.input_shape.push_back(get<std::int32_t>(in));
    const int n_convs = get<std::uint16_t>(in);
    for (int i = 0; i < n_convs; ++i) {
        ConvSpec conv;
        conv.channels = get<std::int32_t>(in);
        conv.kernel = get<std::int32_t>(in);
        conv.stride = get<std::int32_t>(in);
        conv.padding = get<std::int32_t>(in);
        spec.convs.push_back(conv);
    }
    const int n_hidden = get<std::uint16_t>(in);
    for (int i = 0; i < n_hidden; ++i) spec.hidden.push_back(get<std::int32_t>(in));
    spec.actions = get<std::int32_t>(in);

    QNetwork<float> network(spec);
    const std::uint64_t count = get<std::uint64_t>(in);
    if (count != network.param_count())
        throw DataError("parameter count does not match the spec header");
    for (auto view : network.params()) {
        in.read(reinterpret_cast<char*>(view.param),
                static_cast<std::streamsize>(view.size * sizeof(float)));
        if (!in) throw DataError("network file truncated");
    }
    return network;
}

}  // namespace esrl::net
