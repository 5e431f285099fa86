#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "law/calendar.hpp"

namespace law {

enum class PartyRole { fund, trust, custodian, other };

std::string_view to_string(PartyRole role);
PartyRole parse_role(std::string_view text);

/// A known party name (fund, trust, custodian) from the filing universe.
struct RegistryEntry {
    std::string name;
    PartyRole role = PartyRole::other;
    bool operator==(const RegistryEntry&) const = default;
};

enum class HeadingKind { none, numbered, all_caps, title_case };

struct SectionSpan {
    std::string contract_id;
    int ordinal = 0;
    std::string heading_text;
    std::string title_label = "unknown";
    std::string body_text;
    size_t start_offset = 0;
    size_t end_offset = 0;
    HeadingKind heading_kind = HeadingKind::none;

    bool operator==(const SectionSpan&) const = default;
};

struct ContractDoc {
    std::string contract_id;
    std::string accession_no;
    std::string source_uri;
    std::string raw_markup;
    std::string plain_text;
    std::optional<CalendarDate> filed_date;
    std::vector<std::string> metadata_parties;
    std::vector<SectionSpan> sections;
};

/// Strips tags, decodes entities, collapses whitespace within lines and keeps
/// paragraph boundaries as blank lines. Block elements start paragraphs and
/// <br> starts a line. Input without any tag is treated as plain text, which
/// makes the function idempotent on its own output.
std::string normalize_markup(std::string_view raw_markup);

/// Splits plain text at detected headings. Priority: numbered ("Section 3.",
/// "3.", "ARTICLE III") over all-caps lines of at most 8 words over short
/// title-case lines followed by body text. Text before the first heading is an
/// ordinal-0 span with an empty heading. Labels are left "unknown".
std::vector<SectionSpan> sectionize(const ContractDoc& doc);

/// Fraction of plain_text characters covered by section spans.
double section_coverage(const ContractDoc& doc);

/// normalize_markup + sectionize in place.
void ingest(ContractDoc& doc);

/// Parallel ingestion; result ordered by contract_id.
std::vector<ContractDoc> ingest_all(std::vector<ContractDoc> docs, unsigned workers);

void to_json(nlohmann::json& j, const SectionSpan& s);
void from_json(const nlohmann::json& j, SectionSpan& s);
void to_json(nlohmann::json& j, const RegistryEntry& e);
void from_json(const nlohmann::json& j, RegistryEntry& e);

namespace store {

// Layout: <root>/<contract_id>/{raw.htm, text.txt, sections.json, meta.json}
// plus manifest.json and registry.json at the root.
void save_contract(const std::filesystem::path& root, const ContractDoc& doc);
ContractDoc load_contract(const std::filesystem::path& root, const std::string& contract_id);
std::vector<std::string> list_contracts(const std::filesystem::path& root);
std::vector<ContractDoc> load_corpus(const std::filesystem::path& root);

void save_registry(const std::filesystem::path& root, const std::vector<RegistryEntry>& registry);
std::vector<RegistryEntry> load_registry(const std::filesystem::path& root);

/// Writes via a temporary file and rename so readers never see partial files.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace store

}  // namespace law
