#include "ctiflow/feed.hpp"

#include <istream>

#include "ctiflow/error.hpp"
#include "ctiflow/indicator_store.hpp"

namespace ctiflow {

namespace {

std::string_view trimmed(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

bool parse_confidence(std::string_view text, int* out) {
    if (text.empty() || text.size() > 3) return false;
    int value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    if (value > 100) return false;
    *out = value;
    return true;
}

}  // namespace

ParsedFeed parse_feed(std::istream& in) {
    ParsedFeed feed;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string_view stripped = trimmed(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        auto fields = split(stripped, ',');
        if (fields.size() != 6) {
            feed.errors.push_back({line_number, "wrong field count"});
            continue;
        }
        RawFeedRecord rec;
        rec.line_number = line_number;
        rec.value = std::string(trimmed(fields[0]));
        if (rec.value.empty()) {
            feed.errors.push_back({line_number, "empty value"});
            continue;
        }
        rec.itype = std::string(trimmed(fields[1]));
        std::string_view conf = trimmed(fields[2]);
        if (!conf.empty()) {
            int value = 0;
            if (!parse_confidence(conf, &value)) {
                feed.errors.push_back({line_number, "bad confidence"});
                continue;
            }
            rec.confidence = value;
        }
        rec.provider = std::string(trimmed(fields[3]));
        rec.lasttime = std::string(trimmed(fields[4]));
        for (std::string_view tag : split(trimmed(fields[5]), ';')) {
            std::string_view t = trimmed(tag);
            if (!t.empty()) rec.tags.emplace_back(t);
        }
        feed.records.push_back(std::move(rec));
    }
    if (in.bad()) throw Error(Errc::io, "failed reading feed stream");
    return feed;
}

IngestCounts ingest_feed(IndicatorStore& store, std::istream& in,
                         const std::string& feed_name,
                         std::vector<FeedError>* diagnostics) {
    ParsedFeed feed = parse_feed(in);
    IngestCounts counts;
    counts.skipped = feed.errors.size();
    if (diagnostics != nullptr) *diagnostics = feed.errors;

    for (const RawFeedRecord& rec : feed.records) {
        std::string why;
        auto ind = normalize(rec, &why);
        if (!ind) {
            ++counts.skipped;
            if (diagnostics != nullptr)
                diagnostics->push_back({rec.line_number, why});
            continue;
        }
        if (store.upsert(*ind) == IndicatorStore::UpsertOutcome::inserted)
            ++counts.accepted;
        else
            ++counts.merged;
    }
    store.log_source({feed_name, counts.accepted + counts.merged, counts.skipped});
    return counts;
}

}  // namespace ctiflow
