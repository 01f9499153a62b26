#pragma once

// Binary parameter snapshots: a spec echo header followed by the parameter
// arrays in declaration order as little-endian 32-bit floats.

#include <string>

#include "esrl/net/network.hpp"

namespace esrl::net {

void save_network(QNetwork<float>& network, const std::string& path);
QNetwork<float> load_network(const std::string& path);  // throws DataError

}  // namespace esrl::net
