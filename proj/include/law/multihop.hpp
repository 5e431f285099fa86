#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "law/calendar.hpp"
#include "law/corpus.hpp"
#include "law/extraction.hpp"

namespace law {

struct DurationMatch {
    Duration duration;
    size_t start = 0;
    size_t end = 0;
};

/// First term-length phrase in text: "3 years", "three years",
/// "thirty-six months", "three (3) years" (the parenthesized digit wins).
/// Notice periods and deadlines ("within 30 days", "ninety (90) days' written
/// notice") are not durations.
std::optional<DurationMatch> find_duration(std::string_view text);
std::optional<Duration> parse_duration(std::string_view text);

/// Value of a number word ("seven", "twenty", "thirty-six"), if any.
std::optional<int> number_word_value(std::string_view word);

enum class LifecycleBasis { explicit_termination_date, effective_plus_duration, evergreen };
std::string_view to_string(LifecycleBasis basis);

enum class DurationScope { none, termination, recitals, whole_text };
std::string_view to_string(DurationScope scope);

struct LifecycleResult {
    std::optional<CalendarDate> termination;
    LifecycleBasis basis = LifecycleBasis::evergreen;
    std::optional<Duration> duration_term;
    DurationScope scope = DurationScope::none;
    std::optional<DateEvidence> evidence;  // offsets into plain_text
};

/// Termination outcome: an explicit date in a termination section, else
/// effective + the first duration found in termination sections, then
/// recitals, then the whole text, else evergreen. `sections` must carry
/// labels. Throws E_NO_EFFECTIVE when dates.effective is empty.
LifecycleResult compute_lifecycle(const ContractDoc& doc, const DateBundle& dates,
                                  const std::vector<SectionSpan>& sections);

enum class LinkKind { master, amendment };
std::string_view to_string(LinkKind kind);

struct MasterLink {
    std::string contract_id;
    LinkKind kind = LinkKind::amendment;
    std::string master_id;   // empty when unresolved
    std::string error_code;  // E_UNRESOLVED_MASTER or empty
};

/// Per-contract facts needed for master resolution.
struct ContractFacts {
    std::string contract_id;
    DateBundle dates;
    std::vector<PartyRecord> parties;
};

bool is_master(const DateBundle& dates);

/// Index of master contracts by effective date, built once and then read
/// concurrently.
class MasterDirectory {
public:
    MasterDirectory() = default;
    explicit MasterDirectory(const std::vector<ContractFacts>& corpus);

    MasterLink resolve(const ContractFacts& doc) const;

private:
    struct Entry {
        std::string contract_id;
        std::vector<std::string> custodians;
        std::vector<std::string> principals;  // funds and trusts
        std::vector<std::string> all_names;
    };
    static Entry make_entry(const ContractFacts& facts);
    std::map<long, std::vector<Entry>> by_date_;
};

MasterLink resolve_master(const ContractFacts& doc, const MasterDirectory& directory);

}  // namespace law
