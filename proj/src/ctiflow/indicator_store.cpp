#include "ctiflow/indicator_store.hpp"

#include <fstream>
#include <sstream>

#include "ctiflow/error.hpp"
#include "ctiflow/feed.hpp"

namespace ctiflow {

namespace {
constexpr std::string_view kStoreHeader = "ctiflow-store v1";
}

IndicatorStore::UpsertOutcome IndicatorStore::upsert(const Indicator& ind) {
    auto [it, inserted] = records_.try_emplace(ind.key(), ind);
    if (inserted) return UpsertOutcome::inserted;

    Indicator& stored = it->second;
    stored.confidence = std::max(stored.confidence, ind.confidence);
    // ISO-8601 UTC text orders chronologically, so lexical max works.
    if (ind.lasttime > stored.lasttime) stored.lasttime = ind.lasttime;
    stored.tags.insert(ind.tags.begin(), ind.tags.end());
    return UpsertOutcome::merged;
}

std::vector<Indicator> IndicatorStore::query(std::optional<IndicatorType> itype,
                                             int min_confidence) const {
    std::vector<Indicator> out;
    for (const auto& [key, ind] : records_) {
        if (itype && ind.itype != *itype) continue;
        if (ind.confidence < min_confidence) continue;
        out.push_back(ind);
    }
    return out;
}

std::string IndicatorStore::serialize() const {
    std::ostringstream out;
    out << kStoreHeader << '\n';
    for (const auto& [key, ind] : records_) {
        out << ind.value << ',' << to_text(ind.itype) << ',' << ind.confidence
            << ',' << ind.provider << ',' << ind.lasttime << ',';
        bool first = true;
        for (const std::string& tag : ind.tags) {
            if (!first) out << ';';
            out << tag;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

void IndicatorStore::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot write store file: " + path.string());
    out << serialize();
    if (!out) throw Error(Errc::io, "failed writing store file: " + path.string());
}

IndicatorStore IndicatorStore::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::not_found, "store file not found: " + path.string());

    std::string header;
    if (!std::getline(in, header))
        throw Error(Errc::parse, "corrupt store: empty file: " + path.string());
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != kStoreHeader)
        throw Error(Errc::parse,
                    "format-version mismatch in store file: " + path.string());

    // Record lines share the feed line format; reuse the parser and
    // require every line to normalize to an already-canonical record.
    ParsedFeed feed = parse_feed(in);
    if (!feed.errors.empty()) {
        std::ostringstream msg;
        msg << "corrupt store: line " << feed.errors.front().line_number + 1
            << ": " << feed.errors.front().reason;
        throw Error(Errc::parse, msg.str());
    }

    IndicatorStore store;
    for (const RawFeedRecord& rec : feed.records) {
        std::string why;
        auto ind = normalize(rec, &why);
        if (!ind || ind->value != rec.value)
            throw Error(Errc::parse, "corrupt store: non-canonical record \"" +
                                         rec.value + "\"");
        if (store.upsert(*ind) != UpsertOutcome::inserted)
            throw Error(Errc::parse,
                        "corrupt store: duplicate key \"" + rec.value + "\"");
    }
    return store;
}

}  // namespace ctiflow
