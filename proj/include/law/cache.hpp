#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "law/corpus.hpp"
#include "law/extraction.hpp"
#include "law/multihop.hpp"

namespace law {

/// One CSV row per contract. Dates are DD/MM/YYYY in the CSV.
struct CacheRow {
    std::string contract_id;
    std::string accession_no;
    std::optional<CalendarDate> effective;
    std::optional<CalendarDate> master;
    std::optional<CalendarDate> dated;
    std::optional<CalendarDate> termination;
    std::optional<bool> evergreen;  // unknown when the lifecycle failed
    std::optional<bool> is_master;
    std::string master_id;
    std::vector<RegistryEntry> parties;  // "role:name;role:name"

    bool operator==(const CacheRow&) const = default;
};

/// Per-contract facts that do not fit the flat row: lifecycle basis and the
/// section ordinals that support each fact.
struct FactSupport {
    std::string basis;  // lifecycle basis or empty
    std::optional<Duration> duration;
    std::map<std::string, int> cite;  // "effective", "master", "dated", "termination", "party:<name>"
    bool operator==(const FactSupport&) const = default;
};

struct CacheError {
    std::string contract_id;
    std::string code;
    std::string message;
    bool operator==(const CacheError&) const = default;
};

struct FeatureCache {
    std::vector<CacheRow> rows;  // contract_id order
    std::map<std::string, FactSupport> facts;
    std::vector<CacheError> errors;
    std::string corpus_digest;  // digest of the texts the cache was built from

    const CacheRow* find(const std::string& contract_id) const;
};

std::string format_ddmmyyyy(const CalendarDate& d);
std::optional<CalendarDate> parse_ddmmyyyy(std::string_view text);
std::string encode_parties(const std::vector<RegistryEntry>& parties);
std::vector<RegistryEntry> decode_parties(std::string_view text);

extern const std::vector<std::string> kCacheColumns;

/// RFC 4180 with a header row and LF line endings.
std::string write_cache_csv(const std::vector<CacheRow>& rows);
/// Throws E_PARSE on malformed input.
std::vector<CacheRow> read_cache_csv(std::string_view csv);

/// Digest over contract ids and plain texts.
std::string corpus_digest(const std::vector<ContractDoc>& docs);

/// Section ordinal whose span contains `offset`, or -1.
int section_at(const ContractDoc& doc, size_t offset);

/// Runs date, party, lifecycle and master extraction over ingested and
/// labeled documents. Per-contract failures go to `errors` and leave empty
/// fields in the row.
FeatureCache warm_cache(const std::vector<ContractDoc>& docs, const std::vector<RegistryEntry>& registry,
                        unsigned workers = 8);

/// cache.csv, cache.facts.json and cache.errors.json under `dir`, each
/// written atomically.
void save_cache(const std::filesystem::path& dir, const FeatureCache& cache);
std::optional<FeatureCache> load_cache(const std::filesystem::path& dir);

}  // namespace law
