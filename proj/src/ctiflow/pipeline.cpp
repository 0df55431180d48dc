#include "ctiflow/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ctiflow/error.hpp"

namespace ctiflow {

namespace {
constexpr std::string_view kStateHeader = "ctiflow-state v1";
}

uint64_t PipelineSwitch::install(const FlowEntry& entry) {
    if (entry.table_id >= kTableCount) throw Error(Errc::invalid, "bad table");
    if (!entry.match.prerequisites_ok()) throw Error(Errc::invalid, "bad match");
    if (entry.instruction.kind == Instruction::Kind::goto_table &&
        (entry.instruction.table <= entry.table_id ||
         entry.instruction.table >= kTableCount))
        throw Error(Errc::invalid, "bad instruction");

    Table& table = tables_[entry.table_id];
    // FLOW_MOD overwrite: identical (table, priority, match) replaces.
    std::erase_if(table.flows, [&](const InstalledFlow& f) {
        return f.entry.priority == entry.priority && f.entry.match == entry.match;
    });

    InstalledFlow flow;
    flow.id = next_flow_id_++;
    flow.entry = entry;
    flow.entry.counters = {};
    flow.install_time_s = clock_s_;
    flow.last_match_s = clock_s_;
    uint64_t id = flow.id;
    insert_sorted(table, std::move(flow));
    return id;
}

void PipelineSwitch::insert_sorted(Table& table, InstalledFlow flow) {
    auto pos = std::find_if(table.flows.begin(), table.flows.end(),
                            [&](const InstalledFlow& f) {
                                if (f.entry.priority != flow.entry.priority)
                                    return f.entry.priority < flow.entry.priority;
                                return f.id > flow.id;
                            });
    table.flows.insert(pos, std::move(flow));
}

FlowEntry PipelineSwitch::remove(uint64_t flow_id) {
    for (Table& table : tables_) {
        auto it = std::find_if(table.flows.begin(), table.flows.end(),
                               [&](const InstalledFlow& f) { return f.id == flow_id; });
        if (it != table.flows.end()) {
            FlowEntry removed = it->entry;
            table.flows.erase(it);
            return removed;
        }
    }
    throw Error(Errc::not_found, "no such flow");
}

Verdict PipelineSwitch::process(const PacketMeta& pkt) {
    Verdict verdict;
    uint8_t table_id = 0;
    while (true) {
        Table& table = tables_[table_id];
        ++table.lookups;

        // Flows sit in lookup order, so the first hit is the highest
        // priority match with the lowest id.
        InstalledFlow* hit = nullptr;
        for (InstalledFlow& flow : table.flows) {
            if (flow.entry.match.matches(pkt)) {
                hit = &flow;
                break;
            }
        }
        if (hit == nullptr) {
            verdict.trace.push_back({table_id, false, 0});
            verdict.kind = Verdict::Kind::no_match_drop;
            verdict.table = table_id;
            return verdict;
        }

        ++table.matches;
        table.bytes += pkt.wire_len;
        hit->entry.counters.packets += 1;
        hit->entry.counters.bytes += pkt.wire_len;
        hit->last_match_s = clock_s_;
        verdict.trace.push_back({table_id, true, hit->id});

        switch (hit->entry.instruction.kind) {
            case Instruction::Kind::apply_drop:
                verdict.kind = Verdict::Kind::dropped;
                verdict.table = table_id;
                verdict.flow = hit->id;
                return verdict;
            case Instruction::Kind::output:
                verdict.kind = Verdict::Kind::output;
                verdict.port = hit->entry.instruction.port;
                return verdict;
            case Instruction::Kind::goto_table:
                table_id = hit->entry.instruction.table;  // install checked > current
                break;
        }
    }
}

PipelineSwitch::InstalledFlow* PipelineSwitch::find_mutable(uint64_t flow_id) {
    for (Table& table : tables_)
        for (InstalledFlow& flow : table.flows)
            if (flow.id == flow_id) return &flow;
    return nullptr;
}

const PipelineSwitch::InstalledFlow* PipelineSwitch::find_flow(
    uint64_t flow_id) const {
    for (const Table& table : tables_)
        for (const InstalledFlow& flow : table.flows)
            if (flow.id == flow_id) return &flow;
    return nullptr;
}

FlowStats PipelineSwitch::flow_stats(uint64_t flow_id) const {
    const InstalledFlow* flow = find_flow(flow_id);
    if (flow == nullptr) throw Error(Errc::not_found, "no such flow");

    FlowStats stats;
    stats.packet_count = flow->entry.counters.packets;
    stats.byte_count = flow->entry.counters.bytes;
    stats.duration_s = clock_s_ - flow->install_time_s;
    stats.since_last_match_s = clock_s_ - flow->last_match_s;
    stats.table_id = flow->entry.table_id;
    stats.priority = flow->entry.priority;
    stats.match = flow->entry.match;
    stats.instruction = flow->entry.instruction;
    stats.hard_timeout_s = flow->entry.hard_timeout_s;
    stats.idle_timeout_s = flow->entry.idle_timeout_s;
    stats.cookie = flow->entry.cookie;
    return stats;
}

std::array<TableStats, PipelineSwitch::kTableCount> PipelineSwitch::table_stats()
    const {
    std::array<TableStats, kTableCount> stats;
    for (size_t i = 0; i < kTableCount; ++i) {
        stats[i].flows = tables_[i].flows.size();
        stats[i].lookups = tables_[i].lookups;
        stats[i].matches = tables_[i].matches;
        stats[i].bytes = tables_[i].bytes;
    }
    return stats;
}

std::vector<uint64_t> PipelineSwitch::advance_clock(uint64_t seconds) {
    clock_s_ += seconds;
    std::vector<uint64_t> expired;
    for (Table& table : tables_) {
        std::erase_if(table.flows, [&](const InstalledFlow& flow) {
            const FlowEntry& e = flow.entry;
            bool hard = e.hard_timeout_s > 0 &&
                        clock_s_ - flow.install_time_s > e.hard_timeout_s;
            bool idle = e.idle_timeout_s > 0 &&
                        clock_s_ - flow.last_match_s > e.idle_timeout_s;
            if (hard || idle) {
                expired.push_back(flow.id);
                return true;
            }
            return false;
        });
    }
    std::sort(expired.begin(), expired.end());
    return expired;
}

std::vector<const PipelineSwitch::InstalledFlow*> PipelineSwitch::flows() const {
    std::vector<const InstalledFlow*> out;
    for (const Table& table : tables_)
        for (const InstalledFlow& flow : table.flows) out.push_back(&flow);
    return out;
}

void PipelineSwitch::save_state(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot write state file: " + path.string());

    out << kStateHeader << '\n';
    out << "clock " << clock_s_ << '\n';
    out << "nextid " << next_flow_id_ << '\n';
    for (size_t i = 0; i < kTableCount; ++i) {
        const Table& t = tables_[i];
        out << "table " << i << ' ' << t.lookups << ' ' << t.matches << ' '
            << t.bytes << '\n';
    }
    // Entry text goes last on the line; it contains spaces.
    for (const InstalledFlow* flow : flows()) {
        out << "flow " << flow->id << ' ' << flow->entry.counters.packets << ' '
            << flow->entry.counters.bytes << ' ' << flow->install_time_s << ' '
            << flow->last_match_s << ' ' << flow->entry.line() << '\n';
    }
    if (!out) throw Error(Errc::io, "failed writing state file: " + path.string());
}

PipelineSwitch PipelineSwitch::load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::not_found, "state file not found: " + path.string());

    auto corrupt = [&](const std::string& what) -> Error {
        return Error(Errc::parse, "corrupt state file: " + what);
    };

    std::string header;
    if (!std::getline(in, header)) throw corrupt("empty file");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != kStateHeader)
        throw Error(Errc::parse,
                    "format-version mismatch in state file: " + path.string());

    PipelineSwitch sw;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string keyword;
        fields >> keyword;
        if (keyword == "clock") {
            if (!(fields >> sw.clock_s_)) throw corrupt("bad clock line");
        } else if (keyword == "nextid") {
            if (!(fields >> sw.next_flow_id_)) throw corrupt("bad nextid line");
        } else if (keyword == "table") {
            size_t index = 0;
            uint64_t lookups = 0, matches = 0, bytes = 0;
            if (!(fields >> index >> lookups >> matches >> bytes) ||
                index >= kTableCount)
                throw corrupt("bad table line");
            sw.tables_[index].lookups = lookups;
            sw.tables_[index].matches = matches;
            sw.tables_[index].bytes = bytes;
        } else if (keyword == "flow") {
            InstalledFlow flow;
            uint64_t packets = 0, bytes = 0;
            if (!(fields >> flow.id >> packets >> bytes >> flow.install_time_s >>
                  flow.last_match_s))
                throw corrupt("bad flow line");
            std::string entry_text;
            std::getline(fields, entry_text);
            if (!entry_text.empty() && entry_text.front() == ' ')
                entry_text.erase(0, 1);
            std::string why;
            auto entry = FlowEntry::parse_line(entry_text, &why);
            if (!entry) throw corrupt("bad flow entry: " + why);
            if (entry->table_id >= kTableCount) throw corrupt("bad flow table");
            flow.entry = *entry;
            flow.entry.counters.packets = packets;
            flow.entry.counters.bytes = bytes;
            sw.insert_sorted(sw.tables_[flow.entry.table_id], std::move(flow));
        } else {
            throw corrupt("unknown keyword \"" + keyword + "\"");
        }
    }
    if (in.bad()) throw Error(Errc::io, "failed reading state file");
    for (const Table& table : sw.tables_)
        for (const InstalledFlow& flow : table.flows)
            if (flow.id >= sw.next_flow_id_) sw.next_flow_id_ = flow.id + 1;
    return sw;
}

}  // namespace ctiflow
