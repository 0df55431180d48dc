#ifndef CTIFLOW_INDICATOR_HPP
#define CTIFLOW_INDICATOR_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ctiflow {

// Observable types understood by the ingest path. Declaration order is
// the sort order used everywhere indicators are listed.
enum class IndicatorType { ipv4, ipv6, fqdn, url, email };

std::optional<IndicatorType> indicator_type_from(std::string_view text);
std::string_view to_text(IndicatorType itype);

/// One feed line as parsed, before normalization.
struct RawFeedRecord {
    std::size_t line_number = 0;
    std::string value;
    std::string itype;
    std::optional<int> confidence;  // 0..100
    std::string provider;
    std::string lasttime;  // UTC timestamp text, empty when absent
    std::vector<std::string> tags;
};

/// A normalized, deduplicatable observable. (itype, value) is the
/// identity key; value is canonical for the type.
struct Indicator {
    IndicatorType itype = IndicatorType::ipv4;
    std::string value;
    int confidence = 50;
    std::string provider;
    std::string lasttime;
    std::set<std::string> tags;

    std::pair<IndicatorType, std::string> key() const { return {itype, value}; }

    bool operator==(const Indicator&) const = default;
};

// Canonical text for a value of the given type: ipv4 re-rendered without
// leading zeros, fqdn/email lowercased, url scheme+host lowercased, ipv6
// hex lowercased. Idempotent. Returns nullopt with a reason on values
// that cannot be canonicalized (only ipv4 can fail).
std::optional<std::string> canonical_value(IndicatorType itype,
                                           std::string_view value,
                                           std::string* why = nullptr);

// Raw record -> Indicator, or nullopt with the reject reason. Absent
// confidence defaults to 50.
std::optional<Indicator> normalize(const RawFeedRecord& record,
                                   std::string* why = nullptr);

}  // namespace ctiflow

#endif
