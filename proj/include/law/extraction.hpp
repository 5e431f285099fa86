#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "law/calendar.hpp"
#include "law/corpus.hpp"

namespace law {

/// A date literal found in text. `date` is empty for ambiguous numeric forms
/// (both fields <= 12 and unequal), which are skipped rather than guessed.
struct DateLiteral {
    size_t start = 0;
    size_t end = 0;
    std::optional<CalendarDate> date;
};

/// Recognizes "Month D, YYYY", "D(th) day of Month, YYYY", "D Month YYYY",
/// MM/DD/YYYY and unambiguous DD/MM/YYYY.
std::vector<DateLiteral> find_date_literals(std::string_view text);

enum class DateKind { effective, master, dated };
std::string_view to_string(DateKind kind);

struct DateEvidence {
    size_t start = 0;
    size_t end = 0;
    std::string cue;
    bool operator==(const DateEvidence&) const = default;
};

struct DateBundle {
    std::optional<CalendarDate> effective;
    std::optional<CalendarDate> master;
    std::optional<CalendarDate> dated;
    std::optional<DateEvidence> effective_evidence;
    std::optional<DateEvidence> master_evidence;
    std::optional<DateEvidence> dated_evidence;

    bool operator==(const DateBundle&) const = default;
};

struct DateMention {
    DateLiteral literal;
    DateKind kind = DateKind::effective;
    std::string cue;
};

/// Finds typed date mentions in text. The default implementation uses cue
/// phrases in a fixed window before each literal; a learned span detector can
/// be plugged in through this interface.
class DateSpotter {
public:
    virtual ~DateSpotter() = default;
    /// Mentions in document order. Sets `any_literal` when at least one
    /// unambiguous date literal was seen, typed or not.
    virtual std::vector<DateMention> spot(std::string_view text, bool& any_literal) const = 0;
};

class CueWindowDateSpotter final : public DateSpotter {
public:
    explicit CueWindowDateSpotter(size_t window = 120) : window_(window) {}
    std::vector<DateMention> spot(std::string_view text, bool& any_literal) const override;

private:
    size_t window_;
};

/// First mention per kind wins. A document with an effective cue and no
/// master reference gets master := effective. Throws E_NO_DATE when no
/// literal is found.
DateBundle extract_dates(const ContractDoc& doc, const DateSpotter& spotter);
DateBundle extract_dates(const ContractDoc& doc);

struct PartyRecord {
    std::string name;
    PartyRole role = PartyRole::other;
    double match_score = 0.0;
    size_t start = 0;
    size_t end = 0;
    bool operator==(const PartyRecord&) const = default;
};

struct PartyMatchOptions {
    double threshold = 0.90;
    double length_tolerance = 0.20;
};

/// Fuzzy closed-registry party search over word-boundary windows. Names are
/// matched longest first and matched words are masked before shorter names
/// are searched, so a name that is a substring of a longer matched name is
/// not reported inside it. Records are ordered by span start.
std::vector<PartyRecord> extract_parties(const ContractDoc& doc, const std::vector<RegistryEntry>& registry,
                                         const PartyMatchOptions& options = {});
std::vector<PartyRecord> extract_parties(std::string_view text, const std::vector<RegistryEntry>& registry,
                                         const PartyMatchOptions& options = {});

/// Best registry entry for a free-text entity (exact normalized match first,
/// then similarity >= threshold over the whole name).
/// When `role` is given only entries with that role are considered.
std::optional<RegistryEntry> match_entity(std::string_view query, const std::vector<RegistryEntry>& registry,
                                          std::optional<PartyRole> role = std::nullopt, double threshold = 0.90);

}  // namespace law
