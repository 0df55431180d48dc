#ifndef CTIFLOW_INDICATOR_STORE_HPP
#define CTIFLOW_INDICATOR_STORE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctiflow/indicator.hpp"

namespace ctiflow {

struct SourceLogEntry {
    std::string feed;
    std::size_t records = 0;  // well-formed records taken from the feed
    std::size_t skipped = 0;  // parse errors + rejects
};

/// Deduplicated indicator set keyed by (itype, value). Single writer,
/// any number of concurrent readers; no internal locking.
class IndicatorStore {
public:
    using Key = std::pair<IndicatorType, std::string>;

    enum class UpsertOutcome { inserted, merged };

    // Insert, or fold into the existing record: max confidence, latest
    // lasttime, tag union. Provider of the first sighting sticks.
    UpsertOutcome upsert(const Indicator& ind);

    // All stored indicators matching the type filter with confidence >=
    // min_confidence, ordered by (itype, value).
    std::vector<Indicator> query(std::optional<IndicatorType> itype,
                                 int min_confidence) const;

    std::size_t size() const { return records_.size(); }
    const std::map<Key, Indicator>& records() const { return records_; }

    void log_source(SourceLogEntry entry) { source_log_.push_back(std::move(entry)); }
    const std::vector<SourceLogEntry>& source_log() const { return source_log_; }

    // Versioned flat file, one canonical record per line. The source log
    // is session state and is not persisted.
    void save(const std::filesystem::path& path) const;
    static IndicatorStore load(const std::filesystem::path& path);

    std::string serialize() const;

private:
    std::map<Key, Indicator> records_;
    std::vector<SourceLogEntry> source_log_;
};

}  // namespace ctiflow

#endif
