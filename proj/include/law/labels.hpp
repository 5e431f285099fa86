#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "law/corpus.hpp"

namespace law {

/// The 20 custody-contract clause titles.
inline constexpr std::array<std::string_view, 20> kClauseLabels = {
    "account transactions",
    "authorized persons",
    "definitions",
    "duties and responsibilities",
    "evidence of authority",
    "fee schedule",
    "fees and expenses",
    "foreign custodian and subcustodian",
    "governing law",
    "indemnification",
    "instructions",
    "limitations and scope of use or liability",
    "miscellaneous",
    "nominees",
    "proprietary information",
    "recitals",
    "standard of care liabilities",
    "subcustodians and securities depositories",
    "successor custodian",
    "termination",
};

inline constexpr std::string_view kUnknownLabel = "unknown";

bool is_clause_label(std::string_view label);

struct LabeledSection {
    SectionSpan section;  // section.title_label carries the label
    double label_score = 0.0;
};

/// Lowercased heading with numbering ("ARTICLE III", "Section 3.", "3.")
/// removed and punctuation collapsed.
std::string normalize_heading(std::string_view heading);

struct Lexicon {
    std::map<std::string, double> weights;
    double total() const;
};

/// Parses "term weight" lines; '#' starts a comment.
Lexicon parse_lexicon(std::string_view text);

class SectionLabeler {
public:
    virtual ~SectionLabeler() = default;
    virtual LabeledSection label(const SectionSpan& section) const = 0;
};

/// Heading alias match, then keyword-lexicon scoring. The lexicon score of a
/// label is the weight fraction of its lexicon terms that occur in the
/// section (heading + body); argmax wins if >= threshold, ties go to the
/// alphabetically lower label.
class KeywordSectionLabeler final : public SectionLabeler {
public:
    /// Uses the lexicons compiled in from data/lexicons.
    explicit KeywordSectionLabeler(double threshold = 0.15);
    KeywordSectionLabeler(std::map<std::string, Lexicon> lexicons, double threshold);

    LabeledSection label(const SectionSpan& section) const override;

    /// Lexicon score per label, for diagnostics.
    std::map<std::string, double> scores(const SectionSpan& section) const;

    static const std::map<std::string, std::string>& aliases();

private:
    std::map<std::string, Lexicon> lexicons_;
    double threshold_;
};

std::vector<LabeledSection> label_sections(const std::vector<SectionSpan>& sections, const SectionLabeler& labeler);

}  // namespace law
