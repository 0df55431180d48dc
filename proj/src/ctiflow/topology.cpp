#include "ctiflow/topology.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ctiflow/error.hpp"

namespace ctiflow {

namespace {

[[noreturn]] void bad_line(std::size_t line_number, const std::string& what) {
    std::ostringstream msg;
    msg << "topology line " << line_number << ": " << what;
    throw Error(Errc::parse, msg.str());
}

bool parse_port(const std::string& text, uint32_t* out) {
    if (text.empty() || text.size() > 9) return false;
    uint32_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
        value = value * 10 + static_cast<uint32_t>(c - '0');
    }
    *out = value;
    return true;
}

}  // namespace

void TopologyConfig::validate() const {
    if (gateway_port == internal_port)
        throw Error(Errc::invalid, "gateway port equals internal port");
    std::set<MacAddress> seen;
    for (const Host& host : hosts) {
        if (host.mac == gateway_mac)
            throw Error(Errc::invalid,
                        "host MAC equals gateway MAC: " + host.mac.to_string());
        if (!seen.insert(host.mac).second)
            throw Error(Errc::invalid,
                        "duplicate host MAC: " + host.mac.to_string());
    }
}

TopologyConfig TopologyConfig::parse(std::istream& in) {
    TopologyConfig topo;
    bool have_gateway = false;
    bool have_internal = false;

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream fields(line);
        std::string keyword;
        if (!(fields >> keyword) || keyword[0] == '#') continue;

        std::string mac_text, port_text;
        if (keyword == "host" || keyword == "gateway") {
            if (!(fields >> mac_text >> port_text))
                bad_line(line_number, "expected \"" + keyword + " <mac> <port>\"");
        } else if (keyword == "internal") {
            if (!(fields >> port_text))
                bad_line(line_number, "expected \"internal <port>\"");
        } else {
            bad_line(line_number, "unknown keyword \"" + keyword + "\"");
        }
        std::string extra;
        if (fields >> extra) bad_line(line_number, "trailing text \"" + extra + "\"");

        uint32_t port = 0;
        if (!parse_port(port_text, &port))
            bad_line(line_number, "bad port \"" + port_text + "\"");

        if (keyword == "internal") {
            if (have_internal) bad_line(line_number, "duplicate internal line");
            topo.internal_port = port;
            have_internal = true;
            continue;
        }
        auto mac = MacAddress::parse(mac_text);
        if (!mac) bad_line(line_number, "bad MAC \"" + mac_text + "\"");
        if (keyword == "host") {
            topo.hosts.push_back({*mac, port});
        } else {
            if (have_gateway) bad_line(line_number, "duplicate gateway line");
            topo.gateway_mac = *mac;
            topo.gateway_port = port;
            have_gateway = true;
        }
    }
    if (in.bad()) throw Error(Errc::io, "failed reading topology stream");
    if (!have_gateway) throw Error(Errc::parse, "topology has no gateway line");
    if (!have_internal) throw Error(Errc::parse, "topology has no internal line");
    topo.validate();
    return topo;
}

TopologyConfig TopologyConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::not_found, "topology file not found: " + path.string());
    return parse(in);
}

}  // namespace ctiflow
