#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "law/calendar.hpp"
#include "law/corpus.hpp"

namespace law {

/// Small portable RNG: same stream on every platform for a given seed.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi);
    double unit();
    bool chance(double p) { return unit() < p; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v.at(static_cast<size_t>(uniform(0, static_cast<long>(v.size()) - 1))); }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<size_t>(uniform(0, static_cast<long>(i) - 1))]);
    }

private:
    std::uint64_t state_;
};

enum class HeadingStyle { article, section, numbered, caps, title };
std::string_view to_string(HeadingStyle style);
HeadingStyle parse_heading_style(std::string_view text);

struct ManifestSection {
    std::string heading;
    std::string label;
};

struct ManifestContract {
    std::string contract_id;
    std::string accession_no;
    std::string family_master;  // master contract id of the family
    bool is_master = false;
    int amendment_no = 0;
    CalendarDate effective;
    CalendarDate master;
    CalendarDate dated;
    std::vector<RegistryEntry> parties;
    std::optional<Duration> duration;
    std::string termination_basis;  // explicit_termination_date | effective_plus_duration | evergreen
    std::optional<CalendarDate> termination;
    HeadingStyle style = HeadingStyle::caps;
    std::vector<ManifestSection> sections;
    std::string text_digest;  // fnv1a64 of the expected plain text
};

struct ManifestFamily {
    std::string master_id;
    std::vector<std::string> amendment_ids;
    std::string trust;
    std::string custodian;
    std::vector<std::string> funds;
};

struct CorpusManifest {
    std::uint64_t seed = 0;
    std::vector<ManifestFamily> families;
    std::vector<ManifestContract> contracts;  // sorted by contract_id
    std::vector<RegistryEntry> registry;

    const ManifestContract* find(const std::string& contract_id) const;
};

void to_json(nlohmann::json& j, const CorpusManifest& m);
void from_json(const nlohmann::json& j, CorpusManifest& m);

struct SynthOptions {
    std::uint64_t seed = 42;
    size_t n_families = 10;
    /// Relative weights per heading style; empty means uniform.
    std::map<HeadingStyle, double> style_mix;
    /// Stop adding contracts once this many exist (trimming the last family).
    std::optional<size_t> target_contracts;
};

struct SynthCorpus {
    std::vector<ContractDoc> docs;             // raw markup only, not ingested
    std::vector<std::string> expected_texts;   // parallel to docs
    CorpusManifest manifest;
};

/// Deterministic custody-agreement families: one master plus 0..5
/// amendments each. Family 0 is the BNY Mellon Funds Trust family.
SynthCorpus generate_corpus(const SynthOptions& options);

/// Writes raw markup per contract, registry.json and manifest.json.
void save_synth_corpus(const std::filesystem::path& root, const SynthCorpus& corpus);
CorpusManifest load_manifest(const std::filesystem::path& root);

}  // namespace law
