#ifndef CTIFLOW_FEED_HPP
#define CTIFLOW_FEED_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ctiflow/indicator.hpp"

namespace ctiflow {

class IndicatorStore;

struct FeedError {
    std::size_t line_number = 0;
    std::string reason;
};

struct ParsedFeed {
    std::vector<RawFeedRecord> records;
    std::vector<FeedError> errors;
};

// Line-oriented CSV: value,itype,confidence,provider,lasttime,tags with
// tags semicolon-separated; '#' lines are comments. Malformed lines
// become errors, never aborts. Throws Error(io) only when the stream
// itself fails mid-read.
ParsedFeed parse_feed(std::istream& in);

struct IngestCounts {
    std::size_t accepted = 0;  // new (itype, value) keys
    std::size_t merged = 0;    // duplicates folded into existing records
    std::size_t skipped = 0;   // parse errors + normalize rejects
};

// parse + normalize + upsert, appending one source_log entry to the
// store. Line-level problems go to diagnostics when given.
IngestCounts ingest_feed(IndicatorStore& store, std::istream& in,
                         const std::string& feed_name,
                         std::vector<FeedError>* diagnostics = nullptr);

}  // namespace ctiflow

#endif
