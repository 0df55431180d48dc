#ifndef CTIFLOW_FLOW_COMPILER_HPP
#define CTIFLOW_FLOW_COMPILER_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "ctiflow/flow.hpp"
#include "ctiflow/indicator.hpp"
#include "ctiflow/indicator_store.hpp"
#include "ctiflow/topology.hpp"

namespace ctiflow {

// Priority strata of a compiled program. Drops sit above everything so
// a blocked packet can never fall through to a general rule.
inline constexpr uint16_t kDropPriority = 65000;
inline constexpr uint16_t kHostForwardPriority = 100;
inline constexpr uint16_t kGatewayGotoPriority = 90;
inline constexpr uint16_t kDefaultPriority = 0;

inline constexpr uint8_t kForwardTable = 0;   // intra-network forwarding
inline constexpr uint8_t kDstDropTable = 1;   // malicious destinations
inline constexpr uint8_t kSrcDropTable = 2;   // malicious sources

struct SkippedIndicator {
    Indicator indicator;
    std::string reason;
};

struct FlowProgram {
    std::vector<FlowEntry> entries;
    TopologyConfig topology;
    std::vector<SkippedIndicator> skipped;
};

// Table 0 forwarding plus the two goto pivots and explicit priority-0
// defaults for all three tables. Throws Error(invalid) on a bad topology.
std::vector<FlowEntry> compile_base(const TopologyConfig& topology);

struct DropRules {
    std::vector<FlowEntry> entries;
    std::vector<SkippedIndicator> skipped;
};

// Per ipv4 indicator: one dst-drop in table 1 and one src-drop in table
// 2 at kDropPriority. Anything that is not an exact IPv4 address cannot
// become an L3 match and is reported in skipped.
DropRules compile_drops(const std::vector<Indicator>& indicators);

// Full program for one switch: base rules + drops for every stored
// indicator passing the confidence gate. Deterministic: entries sorted
// by (table, priority desc, match key).
FlowProgram compile_program(const TopologyConfig& topology,
                            const IndicatorStore& store, int min_confidence);

struct ProgramDelta {
    std::vector<FlowEntry> to_add;
    std::vector<FlowEntry> to_remove;
};

// Set difference over entry definitions. Entries present in both
// programs are untouched so their counters survive the update. Throws
// Error(invalid) when the programs target different topologies.
ProgramDelta plan_update(const FlowProgram& current, const FlowProgram& next);

// Line-oriented program file, header "ctiflow-program v1".
std::string render_program(const FlowProgram& program);
void save_program(const FlowProgram& program, const std::filesystem::path& path);
FlowProgram load_program(const std::filesystem::path& path,
                         TopologyConfig topology);

}  // namespace ctiflow

#endif
