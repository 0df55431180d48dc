#ifndef CTIFLOW_FLOW_HPP
#define CTIFLOW_FLOW_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ctiflow/net.hpp"

namespace ctiflow {

inline constexpr uint16_t kEthTypeIpv4 = 0x0800;

/// Synthetic packet header tuple. wire_len covers the full L2 frame
/// including the 14-byte Ethernet header.
struct PacketMeta {
    uint32_t in_port = 0;
    MacAddress eth_src;
    MacAddress eth_dst;
    uint16_t eth_type = 0;
    std::optional<Ipv4Address> ipv4_src;
    std::optional<Ipv4Address> ipv4_dst;
    std::optional<uint8_t> ip_proto;
    uint32_t wire_len = 14;
};

/// Exact-match field set; absent fields are wildcards. An IPv4 field
/// requires eth_type 0x0800 (OpenFlow 1.3 match prerequisite).
struct MatchSet {
    std::optional<uint16_t> eth_type;
    std::optional<MacAddress> eth_src;
    std::optional<MacAddress> eth_dst;
    std::optional<Ipv4Address> ipv4_src;
    std::optional<Ipv4Address> ipv4_dst;

    bool operator==(const MatchSet&) const = default;

    bool wildcard() const;
    bool prerequisites_ok() const;
    bool matches(const PacketMeta& pkt) const;

    // "k=v k=v" in fixed field order; empty string for the wildcard.
    // Doubles as the deterministic sort key for compiled programs.
    std::string key() const;
    static std::optional<MatchSet> parse_key(std::string_view text,
                                             std::string* why = nullptr);
};

struct Instruction {
    enum class Kind { apply_drop, output, goto_table };

    Kind kind = Kind::apply_drop;
    uint32_t port = 0;   // output
    uint8_t table = 0;   // goto_table

    static Instruction drop() { return {}; }
    static Instruction output_to(uint32_t port) {
        return {Kind::output, port, 0};
    }
    static Instruction goto_table(uint8_t table) {
        return {Kind::goto_table, 0, table};
    }

    bool operator==(const Instruction&) const = default;

    std::string to_text() const;  // "drop" | "output:N" | "goto:N"
    static std::optional<Instruction> parse(std::string_view text);
};

struct FlowCounters {
    uint64_t packets = 0;
    uint64_t bytes = 0;
};

/// One OpenFlow 1.3 flow as compiled or installed. Counters are zero at
/// compile time and only move inside a switch.
struct FlowEntry {
    uint8_t table_id = 0;
    uint16_t priority = 0;
    MatchSet match;
    Instruction instruction;
    uint32_t hard_timeout_s = 0;  // 0 = permanent
    uint32_t idle_timeout_s = 0;  // 0 = permanent
    uint64_t cookie = 0;
    FlowCounters counters;

    // Identity for program diffs and overwrite detection; counters are
    // deliberately excluded.
    bool same_definition(const FlowEntry& other) const;

    // "table,priority,match-pairs,instruction,hard/idle,cookie"
    std::string line() const;
    static std::optional<FlowEntry> parse_line(std::string_view text,
                                               std::string* why = nullptr);
};

}  // namespace ctiflow

#endif
