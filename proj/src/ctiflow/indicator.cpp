#include "ctiflow/indicator.hpp"

#include <algorithm>
#include <cctype>

#include "ctiflow/net.hpp"

namespace ctiflow {

namespace {

std::string lowered(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

// Lowercase the scheme and host of a URL, leaving path/query/fragment
// untouched. Without "://" the value is treated as host-relative and
// lowercased up to the first path/query/fragment delimiter.
std::string canonical_url(std::string_view url) {
    size_t host_begin = 0;
    size_t scheme_end = url.find("://");
    if (scheme_end != std::string_view::npos) host_begin = scheme_end + 3;
    size_t host_end = url.find_first_of("/?#", host_begin);
    if (host_end == std::string_view::npos) host_end = url.size();
    return lowered(url.substr(0, host_end)) + std::string(url.substr(host_end));
}

}  // namespace

std::optional<IndicatorType> indicator_type_from(std::string_view text) {
    if (text == "ipv4") return IndicatorType::ipv4;
    if (text == "ipv6") return IndicatorType::ipv6;
    if (text == "fqdn") return IndicatorType::fqdn;
    if (text == "url") return IndicatorType::url;
    if (text == "email") return IndicatorType::email;
    return std::nullopt;
}

std::string_view to_text(IndicatorType itype) {
    switch (itype) {
        case IndicatorType::ipv4: return "ipv4";
        case IndicatorType::ipv6: return "ipv6";
        case IndicatorType::fqdn: return "fqdn";
        case IndicatorType::url: return "url";
        case IndicatorType::email: return "email";
    }
    return "ipv4";
}

std::optional<std::string> canonical_value(IndicatorType itype,
                                           std::string_view value,
                                           std::string* why) {
    switch (itype) {
        case IndicatorType::ipv4: {
            // Exact addresses only; a mask would change match semantics.
            if (value.find('/') != std::string_view::npos) {
                if (why != nullptr) *why = "cidr mask not allowed";
                return std::nullopt;
            }
            auto addr = Ipv4Address::parse(value, why);
            if (!addr) return std::nullopt;
            return addr->to_string();
        }
        case IndicatorType::ipv6:
        case IndicatorType::fqdn:
        case IndicatorType::email:
            return lowered(value);
        case IndicatorType::url:
            return canonical_url(value);
    }
    return std::nullopt;
}

std::optional<Indicator> normalize(const RawFeedRecord& record,
                                   std::string* why) {
    auto itype = indicator_type_from(record.itype);
    if (!itype) {
        if (why != nullptr) *why = "unknown itype \"" + record.itype + "\"";
        return std::nullopt;
    }
    auto value = canonical_value(*itype, record.value, why);
    if (!value) return std::nullopt;

    Indicator ind;
    ind.itype = *itype;
    ind.value = std::move(*value);
    ind.confidence = record.confidence.value_or(50);
    ind.provider = record.provider;
    ind.lasttime = record.lasttime;
    ind.tags.insert(record.tags.begin(), record.tags.end());
    return ind;
}

}  // namespace ctiflow
