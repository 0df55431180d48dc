#ifndef CTIFLOW_PIPELINE_HPP
#define CTIFLOW_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "ctiflow/flow.hpp"

namespace ctiflow {

/// Outcome of pushing one packet through the pipeline, with the tables
/// it visited. Table ids in the trace strictly increase.
struct Verdict {
    enum class Kind { dropped, output, no_match_drop };

    struct Hop {
        uint8_t table = 0;
        bool matched = false;
        uint64_t flow = 0;  // meaningful when matched
        bool operator==(const Hop&) const = default;
    };

    Kind kind = Kind::no_match_drop;
    uint8_t table = 0;   // dropped / no_match_drop
    uint64_t flow = 0;   // dropped
    uint32_t port = 0;   // output
    std::vector<Hop> trace;

    bool operator==(const Verdict&) const = default;
};

struct TableStats {
    uint64_t flows = 0;
    uint64_t lookups = 0;
    uint64_t matches = 0;
    uint64_t bytes = 0;
};

struct FlowStats {
    uint64_t packet_count = 0;
    uint64_t byte_count = 0;
    uint64_t duration_s = 0;
    uint64_t since_last_match_s = 0;
    uint8_t table_id = 0;
    uint16_t priority = 0;
    MatchSet match;
    Instruction instruction;
    uint32_t hard_timeout_s = 0;
    uint32_t idle_timeout_s = 0;
    uint64_t cookie = 0;
};

/// Emulated OpenFlow 1.3 switch: three flow tables, priority matching,
/// goto-table pipeline, per-flow and per-table counters, caller-driven
/// clock. One logical owner at a time; stats reads are const.
class PipelineSwitch {
public:
    static constexpr uint8_t kTableCount = 3;

    struct InstalledFlow {
        uint64_t id = 0;
        FlowEntry entry;  // counters live here once installed
        uint64_t install_time_s = 0;
        uint64_t last_match_s = 0;
    };

    // Returns the stable flow id. Reinstalling an identical
    // (table, priority, match) replaces the old entry, counters reset.
    // Throws Error(invalid): "bad table", "bad match", "bad instruction".
    uint64_t install(const FlowEntry& entry);

    // Throws Error(not_found, "no such flow"); returns the entry with
    // its final counters.
    FlowEntry remove(uint64_t flow_id);

    // Never fails: every packet gets a Verdict.
    Verdict process(const PacketMeta& pkt);

    FlowStats flow_stats(uint64_t flow_id) const;
    std::array<TableStats, kTableCount> table_stats() const;

    // Advances the clock, removing flows past their hard or idle
    // timeout; returns the expired ids ascending. Timeout 0 never fires.
    std::vector<uint64_t> advance_clock(uint64_t seconds);

    uint64_t clock() const { return clock_s_; }

    // All installed flows: table ascending, then priority descending,
    // then flow id ascending (the lookup order).
    std::vector<const InstalledFlow*> flows() const;
    const InstalledFlow* find_flow(uint64_t flow_id) const;

    // Full switch snapshot (entries, counters, clock) so a replay can be
    // inspected by a later invocation.
    void save_state(const std::filesystem::path& path) const;
    static PipelineSwitch load_state(const std::filesystem::path& path);

private:
    struct Table {
        // priority descending, flow id ascending
        std::vector<InstalledFlow> flows;
        uint64_t lookups = 0;
        uint64_t matches = 0;
        uint64_t bytes = 0;
    };

    InstalledFlow* find_mutable(uint64_t flow_id);
    void insert_sorted(Table& table, InstalledFlow flow);

    std::array<Table, kTableCount> tables_;
    uint64_t clock_s_ = 0;
    uint64_t next_flow_id_ = 1;
};

}  // namespace ctiflow

#endif
