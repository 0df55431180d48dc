#include "ctiflow/flow.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace ctiflow {

namespace {

std::string hex16(uint16_t v) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "0x%04x", v);
    return buf;
}

void set_reason(std::string* why, std::string reason) {
    if (why != nullptr) *why = std::move(reason);
}

bool parse_u32(std::string_view text, uint32_t* out) {
    if (text.empty() || text.size() > 9) return false;
    uint32_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
        value = value * 10 + static_cast<uint32_t>(c - '0');
    }
    *out = value;
    return true;
}

bool parse_hex64(std::string_view text, uint64_t* out) {
    if (text.size() < 3 || text.substr(0, 2) != "0x" || text.size() > 18)
        return false;
    uint64_t value = 0;
    for (char c : text.substr(2)) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else return false;
        value = value * 16 + static_cast<uint64_t>(digit);
    }
    *out = value;
    return true;
}

}  // namespace

bool MatchSet::wildcard() const {
    return !eth_type && !eth_src && !eth_dst && !ipv4_src && !ipv4_dst;
}

bool MatchSet::prerequisites_ok() const {
    if (ipv4_src || ipv4_dst)
        return eth_type.has_value() && *eth_type == kEthTypeIpv4;
    return true;
}

bool MatchSet::matches(const PacketMeta& pkt) const {
    if (eth_type && *eth_type != pkt.eth_type) return false;
    if (eth_src && *eth_src != pkt.eth_src) return false;
    if (eth_dst && *eth_dst != pkt.eth_dst) return false;
    if (ipv4_src && (!pkt.ipv4_src || *ipv4_src != *pkt.ipv4_src)) return false;
    if (ipv4_dst && (!pkt.ipv4_dst || *ipv4_dst != *pkt.ipv4_dst)) return false;
    return true;
}

std::string MatchSet::key() const {
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const char* name, const std::string& value) {
        if (!first) out << ' ';
        out << name << '=' << value;
        first = false;
    };
    if (eth_type) emit("eth_type", hex16(*eth_type));
    if (eth_src) emit("eth_src", eth_src->to_string());
    if (eth_dst) emit("eth_dst", eth_dst->to_string());
    if (ipv4_src) emit("ipv4_src", ipv4_src->to_string());
    if (ipv4_dst) emit("ipv4_dst", ipv4_dst->to_string());
    return out.str();
}

std::optional<MatchSet> MatchSet::parse_key(std::string_view text,
                                            std::string* why) {
    MatchSet match;
    std::istringstream in{std::string(text)};
    std::string pair;
    while (in >> pair) {
        size_t eq = pair.find('=');
        if (eq == std::string::npos) {
            set_reason(why, "bad match pair \"" + pair + "\"");
            return std::nullopt;
        }
        std::string name = pair.substr(0, eq);
        std::string value = pair.substr(eq + 1);
        if (name == "eth_type") {
            uint64_t v = 0;
            if (!parse_hex64(value, &v) || v > 0xffff) {
                set_reason(why, "bad eth_type \"" + value + "\"");
                return std::nullopt;
            }
            match.eth_type = static_cast<uint16_t>(v);
        } else if (name == "eth_src" || name == "eth_dst") {
            auto mac = MacAddress::parse(value);
            if (!mac) {
                set_reason(why, "bad MAC \"" + value + "\"");
                return std::nullopt;
            }
            (name == "eth_src" ? match.eth_src : match.eth_dst) = *mac;
        } else if (name == "ipv4_src" || name == "ipv4_dst") {
            auto ip = Ipv4Address::parse(value);
            if (!ip) {
                set_reason(why, "bad IPv4 \"" + value + "\"");
                return std::nullopt;
            }
            (name == "ipv4_src" ? match.ipv4_src : match.ipv4_dst) = *ip;
        } else {
            set_reason(why, "unknown match field \"" + name + "\"");
            return std::nullopt;
        }
    }
    return match;
}

std::string Instruction::to_text() const {
    switch (kind) {
        case Kind::apply_drop: return "drop";
        case Kind::output: return "output:" + std::to_string(port);
        case Kind::goto_table: return "goto:" + std::to_string(table);
    }
    return "drop";
}

std::optional<Instruction> Instruction::parse(std::string_view text) {
    if (text == "drop") return drop();
    if (text.rfind("output:", 0) == 0) {
        uint32_t port = 0;
        if (!parse_u32(text.substr(7), &port)) return std::nullopt;
        return output_to(port);
    }
    if (text.rfind("goto:", 0) == 0) {
        uint32_t table = 0;
        if (!parse_u32(text.substr(5), &table) || table > 255) return std::nullopt;
        return goto_table(static_cast<uint8_t>(table));
    }
    return std::nullopt;
}

bool FlowEntry::same_definition(const FlowEntry& other) const {
    return table_id == other.table_id && priority == other.priority &&
           match == other.match && instruction == other.instruction &&
           hard_timeout_s == other.hard_timeout_s &&
           idle_timeout_s == other.idle_timeout_s && cookie == other.cookie;
}

std::string FlowEntry::line() const {
    std::ostringstream out;
    char cookie_buf[20];
    std::snprintf(cookie_buf, sizeof(cookie_buf), "0x%llx",
                  static_cast<unsigned long long>(cookie));
    out << unsigned(table_id) << ',' << priority << ',' << match.key() << ','
        << instruction.to_text() << ',' << hard_timeout_s << '/'
        << idle_timeout_s << ',' << cookie_buf;
    return out.str();
}

std::optional<FlowEntry> FlowEntry::parse_line(std::string_view text,
                                               std::string* why) {
    std::vector<std::string_view> fields;
    size_t pos = 0;
    while (true) {
        size_t next = text.find(',', pos);
        if (next == std::string_view::npos) {
            fields.push_back(text.substr(pos));
            break;
        }
        fields.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
    if (fields.size() != 6) {
        set_reason(why, "wrong field count");
        return std::nullopt;
    }

    FlowEntry entry;
    uint32_t table = 0, priority = 0;
    if (!parse_u32(fields[0], &table) || table > 255) {
        set_reason(why, "bad table id");
        return std::nullopt;
    }
    entry.table_id = static_cast<uint8_t>(table);
    if (!parse_u32(fields[1], &priority) || priority > 65535) {
        set_reason(why, "bad priority");
        return std::nullopt;
    }
    entry.priority = static_cast<uint16_t>(priority);

    auto match = MatchSet::parse_key(fields[2], why);
    if (!match) return std::nullopt;
    entry.match = *match;

    auto instruction = Instruction::parse(fields[3]);
    if (!instruction) {
        set_reason(why, "bad instruction \"" + std::string(fields[3]) + "\"");
        return std::nullopt;
    }
    entry.instruction = *instruction;

    std::string_view timeouts = fields[4];
    size_t slash = timeouts.find('/');
    uint32_t hard = 0, idle = 0;
    if (slash == std::string_view::npos ||
        !parse_u32(timeouts.substr(0, slash), &hard) ||
        !parse_u32(timeouts.substr(slash + 1), &idle)) {
        set_reason(why, "bad timeouts");
        return std::nullopt;
    }
    entry.hard_timeout_s = hard;
    entry.idle_timeout_s = idle;

    if (!parse_hex64(fields[5], &entry.cookie)) {
        set_reason(why, "bad cookie");
        return std::nullopt;
    }
    return entry;
}

}  // namespace ctiflow
