#include "ctiflow/net.hpp"

#include <cstdio>

namespace ctiflow {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

void set_reason(std::string* why, const char* reason) {
    if (why != nullptr) *why = reason;
}

}  // namespace

std::optional<MacAddress> MacAddress::parse(std::string_view text) {
    // Strict aa:bb:cc:dd:ee:ff, case-insensitive.
    if (text.size() != 17) return std::nullopt;
    std::array<uint8_t, 6> bytes{};
    for (int i = 0; i < 6; ++i) {
        int hi = hex_digit(text[static_cast<size_t>(i) * 3]);
        int lo = hex_digit(text[static_cast<size_t>(i) * 3 + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        if (i < 5 && text[static_cast<size_t>(i) * 3 + 2] != ':') return std::nullopt;
        bytes[static_cast<size_t>(i)] = static_cast<uint8_t>(hi * 16 + lo);
    }
    return MacAddress(bytes);
}

std::string MacAddress::to_string() const {
    char buf[18];
    std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", bytes_[0],
                  bytes_[1], bytes_[2], bytes_[3], bytes_[4], bytes_[5]);
    return buf;
}

std::optional<Ipv4Address> Ipv4Address::parse(std::string_view text,
                                              std::string* why) {
    uint32_t value = 0;
    int octets = 0;
    size_t pos = 0;
    while (true) {
        size_t dot = text.find('.', pos);
        std::string_view part = text.substr(pos, dot == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : dot - pos);
        if (part.empty() || part.size() > 3) {
            set_reason(why, "malformed octet");
            return std::nullopt;
        }
        unsigned octet = 0;
        for (char c : part) {
            if (c < '0' || c > '9') {
                set_reason(why, "malformed octet");
                return std::nullopt;
            }
            octet = octet * 10 + static_cast<unsigned>(c - '0');
        }
        if (octet > 255) {
            set_reason(why, "octet out of range");
            return std::nullopt;
        }
        value = (value << 8) | octet;
        ++octets;
        if (dot == std::string_view::npos) break;
        if (octets == 4) {
            set_reason(why, "wrong octet count");
            return std::nullopt;
        }
        pos = dot + 1;
    }
    if (octets != 4) {
        set_reason(why, "wrong octet count");
        return std::nullopt;
    }
    return Ipv4Address(value);
}

std::string Ipv4Address::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (value_ >> 24) & 0xff,
                  (value_ >> 16) & 0xff, (value_ >> 8) & 0xff, value_ & 0xff);
    return buf;
}

}  // namespace ctiflow
