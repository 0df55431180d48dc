#include "ctiflow/flow_compiler.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ctiflow/error.hpp"

namespace ctiflow {

namespace {

constexpr std::string_view kProgramHeader = "ctiflow-program v1";

FlowEntry make_entry(uint8_t table, uint16_t priority, MatchSet match,
                     Instruction instruction) {
    FlowEntry entry;
    entry.table_id = table;
    entry.priority = priority;
    entry.match = std::move(match);
    entry.instruction = instruction;
    return entry;
}

void sort_entries(std::vector<FlowEntry>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const FlowEntry& a, const FlowEntry& b) {
                  if (a.table_id != b.table_id) return a.table_id < b.table_id;
                  if (a.priority != b.priority) return a.priority > b.priority;
                  return a.match.key() < b.match.key();
              });
}

}  // namespace

std::vector<FlowEntry> compile_base(const TopologyConfig& topology) {
    topology.validate();

    std::vector<FlowEntry> entries;
    for (const TopologyConfig::Host& host : topology.hosts) {
        MatchSet match;
        match.eth_dst = host.mac;
        entries.push_back(make_entry(kForwardTable, kHostForwardPriority, match,
                                     Instruction::output_to(host.port)));
    }
    {
        MatchSet to_gateway;
        to_gateway.eth_dst = topology.gateway_mac;
        entries.push_back(make_entry(kForwardTable, kGatewayGotoPriority,
                                     to_gateway,
                                     Instruction::goto_table(kDstDropTable)));
        MatchSet from_gateway;
        from_gateway.eth_src = topology.gateway_mac;
        entries.push_back(make_entry(kForwardTable, kGatewayGotoPriority,
                                     from_gateway,
                                     Instruction::goto_table(kSrcDropTable)));
    }
    // Explicit misses: unknown MACs never flood past a firewall-role
    // switch; cleared traffic continues toward its side of the network.
    entries.push_back(make_entry(kForwardTable, kDefaultPriority, MatchSet{},
                                 Instruction::drop()));
    entries.push_back(make_entry(kDstDropTable, kDefaultPriority, MatchSet{},
                                 Instruction::output_to(topology.gateway_port)));
    entries.push_back(make_entry(kSrcDropTable, kDefaultPriority, MatchSet{},
                                 Instruction::output_to(topology.internal_port)));
    return entries;
}

DropRules compile_drops(const std::vector<Indicator>& indicators) {
    DropRules rules;
    for (const Indicator& ind : indicators) {
        if (ind.itype != IndicatorType::ipv4) {
            rules.skipped.push_back({ind, "not compilable to L3 match"});
            continue;
        }
        auto addr = Ipv4Address::parse(ind.value);
        if (!addr) {
            rules.skipped.push_back({ind, "not compilable to L3 match"});
            continue;
        }
        MatchSet dst;
        dst.eth_type = kEthTypeIpv4;
        dst.ipv4_dst = *addr;
        rules.entries.push_back(
            make_entry(kDstDropTable, kDropPriority, dst, Instruction::drop()));

        MatchSet src;
        src.eth_type = kEthTypeIpv4;
        src.ipv4_src = *addr;
        rules.entries.push_back(
            make_entry(kSrcDropTable, kDropPriority, src, Instruction::drop()));
    }
    return rules;
}

FlowProgram compile_program(const TopologyConfig& topology,
                            const IndicatorStore& store, int min_confidence) {
    FlowProgram program;
    program.topology = topology;
    program.entries = compile_base(topology);

    DropRules drops = compile_drops(store.query(std::nullopt, min_confidence));
    program.entries.insert(program.entries.end(), drops.entries.begin(),
                           drops.entries.end());
    program.skipped = std::move(drops.skipped);

    sort_entries(program.entries);
    return program;
}

ProgramDelta plan_update(const FlowProgram& current, const FlowProgram& next) {
    if (!(current.topology == next.topology))
        throw Error(Errc::invalid, "programs compiled for different topologies");

    std::map<std::string, const FlowEntry*> current_set, next_set;
    for (const FlowEntry& e : current.entries) current_set.emplace(e.line(), &e);
    for (const FlowEntry& e : next.entries) next_set.emplace(e.line(), &e);

    ProgramDelta delta;
    for (const auto& [key, entry] : next_set)
        if (!current_set.contains(key)) delta.to_add.push_back(*entry);
    for (const auto& [key, entry] : current_set)
        if (!next_set.contains(key)) delta.to_remove.push_back(*entry);
    sort_entries(delta.to_add);
    sort_entries(delta.to_remove);
    return delta;
}

std::string render_program(const FlowProgram& program) {
    std::ostringstream out;
    out << kProgramHeader << '\n';
    for (const FlowEntry& entry : program.entries) out << entry.line() << '\n';
    return out.str();
}

void save_program(const FlowProgram& program, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::io, "cannot write program file: " + path.string());
    out << render_program(program);
    if (!out)
        throw Error(Errc::io, "failed writing program file: " + path.string());
}

FlowProgram load_program(const std::filesystem::path& path,
                         TopologyConfig topology) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::not_found, "program file not found: " + path.string());

    std::string header;
    if (!std::getline(in, header))
        throw Error(Errc::parse, "corrupt program: empty file: " + path.string());
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != kProgramHeader)
        throw Error(Errc::parse,
                    "format-version mismatch in program file: " + path.string());

    FlowProgram program;
    program.topology = std::move(topology);
    std::string line;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::string why;
        auto entry = FlowEntry::parse_line(line, &why);
        if (!entry) {
            std::ostringstream msg;
            msg << "program line " << line_number << ": " << why;
            throw Error(Errc::parse, msg.str());
        }
        program.entries.push_back(*entry);
    }
    if (in.bad()) throw Error(Errc::io, "failed reading program file");
    return program;
}

}  // namespace ctiflow
