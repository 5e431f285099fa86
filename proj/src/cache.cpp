#include "law/cache.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "law/error.hpp"
#include "law/parallel.hpp"
#include "law/text_util.hpp"

namespace law {

const std::vector<std::string> kCacheColumns = {"contract_id",      "accession_no", "effective_date", "master_date",
                                                "dated_date",       "termination_date", "evergreen", "is_master",
                                                "master_id",        "parties"};

const CacheRow* FeatureCache::find(const std::string& contract_id) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), contract_id,
                               [](const CacheRow& r, const std::string& id) { return r.contract_id < id; });
    return it != rows.end() && it->contract_id == contract_id ? &*it : nullptr;
}

std::string format_ddmmyyyy(const CalendarDate& d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02d/%02d/%04d", d.day, d.month, d.year);
    return buf;
}

std::optional<CalendarDate> parse_ddmmyyyy(std::string_view text) {
    if (text.size() != 10 || text[2] != '/' || text[5] != '/') return std::nullopt;
    for (size_t i : {0, 1, 3, 4, 6, 7, 8, 9}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }
    CalendarDate d{std::stoi(std::string(text.substr(0, 2))), std::stoi(std::string(text.substr(3, 2))),
                   std::stoi(std::string(text.substr(6, 4)))};
    if (!is_valid(d)) return std::nullopt;
    return d;
}

std::string encode_parties(const std::vector<RegistryEntry>& parties) {
    std::string out;
    for (size_t i = 0; i < parties.size(); ++i) {
        if (i) out += ';';
        out += std::string(to_string(parties[i].role)) + ":" + parties[i].name;
    }
    return out;
}

std::vector<RegistryEntry> decode_parties(std::string_view text) {
    std::vector<RegistryEntry> out;
    if (text.empty()) return out;
    size_t start = 0;
    for (;;) {
        size_t semi = text.find(';', start);
        std::string_view item = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
        auto colon = item.find(':');
        if (colon == std::string_view::npos) throw Error("E_PARSE", "party without a role: " + std::string(item));
        out.push_back({std::string(item.substr(colon + 1)), parse_role(item.substr(0, colon))});
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string opt_date(const std::optional<CalendarDate>& d) { return d ? format_ddmmyyyy(*d) : ""; }
std::string opt_bool(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

std::vector<std::vector<std::string>> parse_csv(std::string_view csv) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false, field_started = false;
    size_t line = 1;
    for (size_t i = 0; i < csv.size(); ++i) {
        char c = csv[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < csv.size() && csv[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"') {
            if (field_started && !field.empty()) {
                throw Error("E_PARSE", "quote inside an unquoted field", "line " + std::to_string(line));
            }
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            rec.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < csv.size() && csv[i + 1] == '\n') ++i;
            rec.push_back(std::move(field));
            field.clear();
            field_started = false;
            records.push_back(std::move(rec));
            rec.clear();
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw Error("E_PARSE", "unterminated quoted field", "line " + std::to_string(line));
    if (field_started || !rec.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
    }
    return records;
}

std::optional<CalendarDate> read_date(const std::string& s, size_t line) {
    if (s.empty()) return std::nullopt;
    auto d = parse_ddmmyyyy(s);
    if (!d) throw Error("E_PARSE", "bad date '" + s + "'", "line " + std::to_string(line));
    return d;
}

std::optional<bool> read_bool(const std::string& s, size_t line) {
    if (s.empty()) return std::nullopt;
    if (s == "true") return true;
    if (s == "false") return false;
    throw Error("E_PARSE", "bad boolean '" + s + "'", "line " + std::to_string(line));
}

}  // namespace

std::string write_cache_csv(const std::vector<CacheRow>& rows) {
    std::string out;
    for (size_t i = 0; i < kCacheColumns.size(); ++i) out += (i ? "," : "") + kCacheColumns[i];
    out += "\n";
    for (const auto& r : rows) {
        std::vector<std::string> f = {r.contract_id,         r.accession_no,         opt_date(r.effective),
                                      opt_date(r.master),    opt_date(r.dated),      opt_date(r.termination),
                                      opt_bool(r.evergreen), opt_bool(r.is_master),  r.master_id,
                                      encode_parties(r.parties)};
        for (size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + csv_field(f[i]);
        out += "\n";
    }
    return out;
}

std::vector<CacheRow> read_cache_csv(std::string_view csv) {
    auto records = parse_csv(csv);
    if (records.empty() || records[0] != kCacheColumns) throw Error("E_PARSE", "missing or wrong cache header", "line 1");
    std::vector<CacheRow> rows;
    for (size_t i = 1; i < records.size(); ++i) {
        const auto& f = records[i];
        size_t line = i + 1;
        if (f.size() != kCacheColumns.size()) {
            throw Error("E_PARSE", "expected " + std::to_string(kCacheColumns.size()) + " fields, got " +
                                       std::to_string(f.size()),
                        "line " + std::to_string(line));
        }
        CacheRow r;
        r.contract_id = f[0];
        r.accession_no = f[1];
        r.effective = read_date(f[2], line);
        r.master = read_date(f[3], line);
        r.dated = read_date(f[4], line);
        r.termination = read_date(f[5], line);
        r.evergreen = read_bool(f[6], line);
        r.is_master = read_bool(f[7], line);
        r.master_id = f[8];
        r.parties = decode_parties(f[9]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string corpus_digest(const std::vector<ContractDoc>& docs) {
    std::string acc;
    for (const auto& d : docs) acc += d.contract_id + "\x1f" + hex64(fnv1a64(d.plain_text)) + "\n";
    return hex64(fnv1a64(acc));
}

int section_at(const ContractDoc& doc, size_t offset) {
    for (const auto& s : doc.sections) {
        if (offset >= s.start_offset && offset < s.end_offset) return s.ordinal;
    }
    return doc.sections.empty() ? -1 : doc.sections.back().ordinal;
}

FeatureCache warm_cache(const std::vector<ContractDoc>& docs_in, const std::vector<RegistryEntry>& registry,
                        unsigned workers) {
    std::vector<const ContractDoc*> docs;
    for (const auto& d : docs_in) docs.push_back(&d);
    std::sort(docs.begin(), docs.end(),
              [](const ContractDoc* a, const ContractDoc* b) { return a->contract_id < b->contract_id; });

    struct Work {
        CacheRow row;
        FactSupport support;
        ContractFacts facts;
        std::vector<CacheError> errors;
    };
    std::vector<Work> work(docs.size());
    parallel_for(docs.size(), std::max(1u, workers), [&](size_t i) {
        const ContractDoc& doc = *docs[i];
        Work& w = work[i];
        w.row.contract_id = doc.contract_id;
        w.row.accession_no = doc.accession_no;
        w.facts.contract_id = doc.contract_id;
        auto record = [&](const Error& e) { w.errors.push_back({doc.contract_id, e.code(), e.what()}); };

        try {
            DateBundle dates = extract_dates(doc);
            w.facts.dates = dates;
            w.row.effective = dates.effective;
            w.row.master = dates.master;
            w.row.dated = dates.dated;
            if (dates.effective_evidence) w.support.cite["effective"] = section_at(doc, dates.effective_evidence->start);
            if (dates.master_evidence) w.support.cite["master"] = section_at(doc, dates.master_evidence->start);
            if (dates.dated_evidence) w.support.cite["dated"] = section_at(doc, dates.dated_evidence->start);
            if (dates.effective) w.row.is_master = is_master(dates);
        } catch (const Error& e) {
            record(e);
        }

        try {
            auto parties = extract_parties(doc, registry);
            w.facts.parties = parties;
            std::vector<RegistryEntry> entries;
            for (const auto& p : parties) {
                RegistryEntry e{p.name, p.role};
                if (std::find(entries.begin(), entries.end(), e) == entries.end()) {
                    entries.push_back(e);
                    w.support.cite["party:" + p.name] = section_at(doc, p.start);
                }
            }
            std::sort(entries.begin(), entries.end(), [](const RegistryEntry& a, const RegistryEntry& b) {
                return std::pair(a.role, a.name) < std::pair(b.role, b.name);
            });
            w.row.parties = entries;
        } catch (const Error& e) {
            record(e);
        }

        if (w.row.effective) {
            try {
                auto life = compute_lifecycle(doc, w.facts.dates, doc.sections);
                w.row.termination = life.termination;
                w.row.evergreen = life.basis == LifecycleBasis::evergreen;
                w.support.basis = std::string(to_string(life.basis));
                w.support.duration = life.duration_term;
                if (life.evidence) {
                    w.support.cite["termination"] = section_at(doc, life.evidence->start);
                } else {
                    for (const auto& s : doc.sections) {
                        if (s.title_label == "termination") {
                            w.support.cite["termination"] = s.ordinal;
                            break;
                        }
                    }
                }
            } catch (const Error& e) {
                record(e);
            }
        } else {
            w.errors.push_back({doc.contract_id, "E_NO_EFFECTIVE", "no effective date; lifecycle not computed"});
        }
    });

    std::vector<ContractFacts> all;
    for (const auto& w : work) all.push_back(w.facts);
    MasterDirectory directory(all);
    FeatureCache cache;
    for (auto& w : work) {
        if (w.row.effective) {
            MasterLink link = resolve_master(w.facts, directory);
            w.row.master_id = link.master_id;
            if (!link.error_code.empty()) {
                w.errors.push_back({w.row.contract_id, link.error_code, "master agreement not resolved"});
            }
        }
        cache.facts[w.row.contract_id] = w.support;
        cache.errors.insert(cache.errors.end(), w.errors.begin(), w.errors.end());
        cache.rows.push_back(std::move(w.row));
    }
    cache.corpus_digest = corpus_digest(docs_in);
    return cache;
}

namespace {

nlohmann::json facts_json(const FeatureCache& cache) {
    nlohmann::json contracts = nlohmann::json::object();
    for (const auto& [id, f] : cache.facts) {
        nlohmann::json j = {{"basis", f.basis}, {"cite", f.cite}};
        j["duration"] = f.duration ? nlohmann::json{{"count", f.duration->count}, {"unit", to_string(f.duration->unit)}}
                                   : nlohmann::json(nullptr);
        const CacheRow* row = cache.find(id);
        if (row) j["parties"] = row->parties;
        contracts[id] = std::move(j);
    }
    return {{"corpus_digest", cache.corpus_digest}, {"contracts", contracts}};
}

}  // namespace

void save_cache(const std::filesystem::path& dir, const FeatureCache& cache) {
    std::filesystem::create_directories(dir);
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& e : cache.errors) {
        errors.push_back({{"contract_id", e.contract_id}, {"code", e.code}, {"message", e.message}});
    }
    store::write_file_atomic(dir / "cache.facts.json", facts_json(cache).dump(1) + "\n");
    store::write_file_atomic(dir / "cache.errors.json", errors.dump(1) + "\n");
    store::write_file_atomic(dir / "cache.csv", write_cache_csv(cache.rows));
}

std::optional<FeatureCache> load_cache(const std::filesystem::path& dir) {
    if (!std::filesystem::exists(dir / "cache.csv") || !std::filesystem::exists(dir / "cache.facts.json")) {
        return std::nullopt;
    }
    FeatureCache cache;
    cache.rows = read_cache_csv(store::read_file(dir / "cache.csv"));
    try {
        auto facts = nlohmann::json::parse(store::read_file(dir / "cache.facts.json"));
        cache.corpus_digest = facts.at("corpus_digest").get<std::string>();
        for (const auto& [id, j] : facts.at("contracts").items()) {
            FactSupport f;
            f.basis = j.at("basis").get<std::string>();
            f.cite = j.at("cite").get<std::map<std::string, int>>();
            if (!j.at("duration").is_null()) {
                auto unit = parse_unit(j.at("duration").at("unit").get<std::string>());
                if (unit) f.duration = Duration{j.at("duration").at("count").get<int>(), *unit};
            }
            cache.facts[id] = std::move(f);
        }
        if (std::filesystem::exists(dir / "cache.errors.json")) {
            for (const auto& e : nlohmann::json::parse(store::read_file(dir / "cache.errors.json"))) {
                cache.errors.push_back({e.at("contract_id"), e.at("code"), e.at("message")});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("E_IO", std::string("bad cache sidecar: ") + e.what(), dir.string());
    }
    return cache;
}

}  // namespace law
