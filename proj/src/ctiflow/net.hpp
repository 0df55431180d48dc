#ifndef CTIFLOW_NET_HPP
#define CTIFLOW_NET_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ctiflow {

/// 48-bit Ethernet address. Canonical text form is lowercase
/// colon-separated hex, e.g. "0a:00:00:00:00:fe".
class MacAddress {
public:
    MacAddress() = default;
    explicit MacAddress(const std::array<uint8_t, 6>& bytes) : bytes_(bytes) {}

    static std::optional<MacAddress> parse(std::string_view text);

    std::string to_string() const;
    const std::array<uint8_t, 6>& bytes() const { return bytes_; }

    auto operator<=>(const MacAddress&) const = default;

private:
    std::array<uint8_t, 6> bytes_{};
};

/// IPv4 address held in host order. parse() accepts leading zeros in
/// octets ("198.051.100.007"); to_string() always renders the canonical
/// dotted quad, so parse-then-format is the canonicalizer.
class Ipv4Address {
public:
    Ipv4Address() = default;
    explicit Ipv4Address(uint32_t value) : value_(value) {}

    // why, when non-null, receives the reject reason on failure.
    static std::optional<Ipv4Address> parse(std::string_view text,
                                            std::string* why = nullptr);

    std::string to_string() const;
    uint32_t value() const { return value_; }

    auto operator<=>(const Ipv4Address&) const = default;

private:
    uint32_t value_ = 0;
};

}  // namespace ctiflow

#endif
