#ifndef CTIFLOW_TOPOLOGY_HPP
#define CTIFLOW_TOPOLOGY_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ctiflow/net.hpp"

namespace ctiflow {

/// Wiring of the edge switch: directly reachable hosts, the gateway
/// uplink, and the port toward the rest of the internal network.
struct TopologyConfig {
    struct Host {
        MacAddress mac;
        uint32_t port = 0;
        bool operator==(const Host&) const = default;
    };

    std::vector<Host> hosts;
    MacAddress gateway_mac;
    uint32_t gateway_port = 0;
    uint32_t internal_port = 0;

    bool operator==(const TopologyConfig&) const = default;

    // Throws Error(invalid) naming the violated invariant.
    void validate() const;

    // Key/value text: "host <mac> <port>", "gateway <mac> <port>",
    // "internal <port>"; '#' comments.
    static TopologyConfig parse(std::istream& in);
    static TopologyConfig load(const std::filesystem::path& path);
};

}  // namespace ctiflow

#endif
