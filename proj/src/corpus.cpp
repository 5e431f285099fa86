#include "law/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(PartyRole role) {
    switch (role) {
        case PartyRole::fund: return "fund";
        case PartyRole::trust: return "trust";
        case PartyRole::custodian: return "custodian";
        case PartyRole::other: return "other";
    }
    return "other";
}

PartyRole parse_role(std::string_view text) {
    if (text == "fund") return PartyRole::fund;
    if (text == "trust") return PartyRole::trust;
    if (text == "custodian") return PartyRole::custodian;
    return PartyRole::other;
}

// ---------------------------------------------------------------------------
// markup normalization

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x110000) {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

const std::map<std::string, std::string, std::less<>>& named_entities() {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"amp", "&"},      {"lt", "<"},       {"gt", ">"},       {"quot", "\""},
        {"apos", "'"},     {"nbsp", " "},     {"ensp", " "},     {"emsp", " "},
        {"thinsp", " "},   {"mdash", "\xE2\x80\x94"},            {"ndash", "\xE2\x80\x93"},
        {"rsquo", "'"},    {"lsquo", "'"},    {"ldquo", "\""},   {"rdquo", "\""},
        {"sect", "\xC2\xA7"},                 {"copy", "\xC2\xA9"},
        {"reg", "\xC2\xAE"}, {"bull", "\xE2\x80\xA2"},          {"hellip", "..."}};
    return table;
}

/// Decodes one entity starting at text[pos] == '&'. Returns consumed length
/// (0 if not an entity) and writes the decoded bytes to out.
size_t decode_entity(std::string_view text, size_t pos, std::string& out) {
    size_t semi = text.find(';', pos + 1);
    if (semi == std::string_view::npos || semi - pos > 12 || semi == pos + 1) return 0;
    std::string_view body = text.substr(pos + 1, semi - pos - 1);
    if (body[0] == '#') {
        unsigned long cp = 0;
        bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
        std::string_view digits = body.substr(hex ? 2 : 1);
        if (digits.empty()) return 0;
        for (char c : digits) {
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else return 0;
            cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
            if (cp > 0x10FFFF) return 0;
        }
        if (cp == 0xA0) cp = ' ';
        if (cp == 0x2019 || cp == 0x2018) cp = '\'';
        if (cp == 0x201C || cp == 0x201D) cp = '"';
        append_utf8(out, cp);
        return semi - pos + 1;
    }
    auto it = named_entities().find(body);
    if (it == named_entities().end()) return 0;
    out += it->second;
    return semi - pos + 1;
}

bool is_block_tag(std::string_view name) {
    static constexpr std::string_view kBlocks[] = {
        "p",  "div", "h1", "h2",    "h3",    "h4",         "h5",    "h6",      "li",
        "ul", "ol",  "tr", "table", "title", "blockquote", "pre",   "section", "article",
        "hr", "dl",  "dt", "dd",    "body",  "html",       "center", "header", "footer",
        "td", "th",  "page"};
    return std::find(std::begin(kBlocks), std::end(kBlocks), name) != std::end(kBlocks);
}

/// Accumulates visible text into lines/paragraphs.
class TextSink {
public:
    void text_char(char c) {
        if (is_space(c)) {
            if (!line_.empty()) pending_space_ = true;
            return;
        }
        if (line_.empty()) {
            if (!out_.empty()) out_ += pending_break_ >= 2 ? "\n\n" : "\n";
            pending_break_ = 0;
            consecutive_br_ = 0;
        } else if (pending_space_) {
            line_.push_back(' ');
        }
        pending_space_ = false;
        line_.push_back(c);
    }
    void text(std::string_view s) {
        for (char c : s) text_char(c);
    }
    void line_break() {
        if (!line_.empty()) {
            flush();
            pending_break_ = std::max(pending_break_, 1);
            consecutive_br_ = 1;
        } else if (++consecutive_br_ >= 2) {
            pending_break_ = 2;
        }
    }
    void paragraph_break() {
        flush();
        pending_break_ = 2;
    }
    std::string finish() {
        flush();
        return out_;
    }

private:
    void flush() {
        if (line_.empty()) return;
        out_ += line_;
        line_.clear();
        pending_space_ = false;
    }

    std::string out_;
    std::string line_;
    bool pending_space_ = false;
    int pending_break_ = 0;
    int consecutive_br_ = 0;
};

bool looks_like_tag_start(std::string_view s, size_t i) {
    if (i + 1 >= s.size() || s[i] != '<') return false;
    char c = s[i + 1];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '/' || c == '!' || c == '?';
}

std::string normalize_plain(std::string_view raw) {
    std::string out;
    std::string line;
    int blank_run = 0;
    bool any = false;
    size_t i = 0;
    auto flush_line = [&]() {
        std::string decoded;
        for (size_t k = 0; k < line.size();) {
            if (line[k] == '&') {
                size_t used = decode_entity(line, k, decoded);
                if (used) {
                    k += used;
                    continue;
                }
            }
            decoded.push_back(line[k++]);
        }
        std::string collapsed;
        bool space = false;
        for (char c : decoded) {
            if (is_space(c)) {
                space = !collapsed.empty();
                continue;
            }
            if (space) collapsed.push_back(' ');
            space = false;
            collapsed.push_back(c);
        }
        if (collapsed.empty()) {
            ++blank_run;
        } else {
            if (any) out += blank_run > 0 ? "\n\n" : "\n";
            out += collapsed;
            any = true;
            blank_run = 0;
        }
        line.clear();
    };
    for (; i < raw.size(); ++i) {
        if (raw[i] == '\n') {
            flush_line();
        } else if (raw[i] != '\r') {
            line.push_back(raw[i]);
        }
    }
    flush_line();
    return out;
}

std::string lower_name(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c))) break;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

std::string normalize_markup(std::string_view raw) {
    bool has_markup = false;
    for (size_t i = 0; i + 1 < raw.size(); ++i) {
        if (looks_like_tag_start(raw, i)) {
            has_markup = true;
            break;
        }
    }
    if (!has_markup) return normalize_plain(raw);

    TextSink sink;
    size_t i = 0;
    const size_t n = raw.size();
    while (i < n) {
        char c = raw[i];
        if (c == '<' && looks_like_tag_start(raw, i)) {
            if (raw.compare(i, 4, "<!--") == 0) {
                size_t end = raw.find("-->", i + 4);
                i = end == std::string_view::npos ? n : end + 3;
                continue;
            }
            size_t end = raw.find('>', i + 1);
            if (end == std::string_view::npos) {
                // unterminated tag: drop the rest of the tag-like token
                size_t stop = i + 1;
                while (stop < n && !is_space(raw[stop])) ++stop;
                i = stop;
                continue;
            }
            std::string_view inner = raw.substr(i + 1, end - i - 1);
            bool closing = !inner.empty() && inner[0] == '/';
            std::string name = lower_name(closing ? inner.substr(1) : inner);
            i = end + 1;
            if (!closing && (name == "script" || name == "style")) {
                std::string close = "</" + name;
                size_t pos = i;
                for (;;) {
                    pos = raw.find("</", pos);
                    if (pos == std::string_view::npos) {
                        i = n;
                        break;
                    }
                    if (to_lower(raw.substr(pos, close.size())) == close) {
                        size_t gt = raw.find('>', pos);
                        i = gt == std::string_view::npos ? n : gt + 1;
                        break;
                    }
                    pos += 2;
                }
                continue;
            }
            if (name == "br") {
                sink.line_break();
            } else if (is_block_tag(name)) {
                sink.paragraph_break();
            }
            continue;
        }
        if (c == '&') {
            std::string decoded;
            size_t used = decode_entity(raw, i, decoded);
            if (used) {
                sink.text(decoded);
                i += used;
                continue;
            }
        }
        sink.text_char(c);
        ++i;
    }
    return sink.finish();
}

// ---------------------------------------------------------------------------
// sectionizer

namespace {

struct Line {
    size_t start = 0;
    size_t end = 0;  // exclusive
    std::string_view text;
    bool blank = true;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view t = text.substr(pos, end - pos);
        bool blank = std::all_of(t.begin(), t.end(), [](char c) { return is_space(c); });
        lines.push_back({pos, end, t, blank});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string_view> words_of(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        size_t j = i;
        while (j < s.size() && !is_space(s[j])) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

bool is_roman(std::string_view w) {
    if (w.empty()) return false;
    return std::all_of(w.begin(), w.end(), [](char c) {
        return c == 'I' || c == 'V' || c == 'X' || c == 'L' || c == 'C';
    });
}

bool is_number_path(std::string_view w) {
    // 3 / 3.1 / 3.1.2, optional trailing '.'
    if (w.empty() || !std::isdigit(static_cast<unsigned char>(w[0]))) return false;
    for (char c : w) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return false;
    }
    return true;
}

bool ends_with_clause_punct(std::string_view s) {
    if (s.empty()) return false;
    char last = s.back();
    return last == ':' || last == ';' || last == ',';
}

std::string_view strip_trailing_period(std::string_view w) {
    while (!w.empty() && (w.back() == '.' || w.back() == ':')) w.remove_suffix(1);
    return w;
}

/// Returns number of words of the "number only" prefix if the line is a
/// numbered heading, with `bare` set when nothing follows the number.
bool numbered_heading(std::string_view line, bool& bare) {
    auto words = words_of(line);
    if (words.empty()) return false;
    size_t title_from = 0;
    std::string_view first = words[0];
    if (first == "ARTICLE" || first == "Article") {
        if (words.size() < 2) return false;
        std::string_view num = strip_trailing_period(words[1]);
        if (!is_roman(num) && !is_number_path(num)) return false;
        title_from = 2;
    } else if (first == "SECTION" || first == "Section") {
        if (words.size() < 2) return false;
        std::string_view num = words[1];
        if (!is_number_path(num)) return false;
        // "Section 3 of the Agreement ..." is prose, not a heading
        if (words.size() > 2 && num.back() != '.') return false;
        title_from = 2;
    } else if (is_number_path(first) && first.back() == '.') {
        if (words.size() < 2) return false;
        title_from = 1;
    } else {
        return false;
    }
    size_t title_words = words.size() - title_from;
    if (title_words > 8) return false;
    if (title_words > 0 && ends_with_clause_punct(words.back())) return false;
    bare = title_words == 0;
    return true;
}

bool all_caps_heading(std::string_view line) {
    auto words = words_of(line);
    if (words.empty() || words.size() > 8) return false;
    bool letter = false;
    for (char c : line) {
        if (std::islower(static_cast<unsigned char>(c))) return false;
        if (std::isupper(static_cast<unsigned char>(c))) letter = true;
    }
    if (!letter) return false;
    return !ends_with_clause_punct(line);
}

bool is_small_word(std::string_view w) {
    static constexpr std::string_view kSmall[] = {"of", "and", "or", "the", "to", "in", "for",
                                                  "a",  "an",  "on", "by",  "with", "as", "at"};
    return std::find(std::begin(kSmall), std::end(kSmall), w) != std::end(kSmall);
}

bool title_case_line(std::string_view line) {
    auto words = words_of(line);
    if (words.empty() || words.size() > 8) return false;
    char last = line.back();
    if (last == '.' || last == ':' || last == ';' || last == ',' || last == '?' || last == '!')
        return false;
    for (size_t i = 0; i < words.size(); ++i) {
        std::string_view w = words[i];
        unsigned char c0 = static_cast<unsigned char>(w[0]);
        if (i > 0 && is_small_word(w)) continue;
        if (!std::isupper(c0) && !std::isdigit(c0)) return false;
    }
    return std::any_of(line.begin(), line.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

struct HeadingHit {
    size_t line_index = 0;
    size_t line_count = 1;
    HeadingKind kind = HeadingKind::none;
};

}  // namespace

std::vector<SectionSpan> sectionize(const ContractDoc& doc) {
    const std::string& text = doc.plain_text;
    std::vector<SectionSpan> out;
    if (trim(text).empty()) return out;

    auto lines = split_lines(text);
    std::vector<HeadingKind> kind(lines.size(), HeadingKind::none);
    std::vector<bool> bare(lines.size(), false);

    auto next_nonblank = [&](size_t i) -> std::optional<size_t> {
        for (size_t k = i + 1; k < lines.size(); ++k) {
            if (!lines[k].blank) return k;
        }
        return std::nullopt;
    };

    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].blank) continue;
        bool para_start = i == 0 || lines[i - 1].blank;
        std::string t = trim(lines[i].text);
        bool b = false;
        if (para_start && numbered_heading(t, b)) {
            kind[i] = HeadingKind::numbered;
            bare[i] = b;
        } else if (para_start && all_caps_heading(t)) {
            kind[i] = HeadingKind::all_caps;
        } else if (para_start && title_case_line(t)) {
            auto nxt = next_nonblank(i);
            if (nxt) {
                std::string nt = trim(lines[*nxt].text);
                bool nb = false;
                bool next_is_heading = numbered_heading(nt, nb) || all_caps_heading(nt) || title_case_line(nt);
                if (!next_is_heading) kind[i] = HeadingKind::title_case;
            }
        }
    }

    // Collect headings; a bare number line continues into the following short
    // line, and headings with no body between them merge into one.
    std::vector<HeadingHit> hits;
    for (size_t i = 0; i < lines.size(); ++i) {
        if (kind[i] == HeadingKind::none) continue;
        HeadingHit hit{i, 1, kind[i]};
        if (bare[i] && i + 1 < lines.size() && !lines[i + 1].blank) {
            auto w = words_of(lines[i + 1].text);
            if (!w.empty() && w.size() <= 8) {
                hit.line_count = 2;
                kind[i + 1] = HeadingKind::none;
            }
        }
        if (!hits.empty()) {
            HeadingHit& prev = hits.back();
            size_t prev_end = prev.line_index + prev.line_count;
            bool body_between = false;
            for (size_t k = prev_end; k < i; ++k) {
                if (!lines[k].blank) body_between = true;
            }
            if (!body_between) {
                prev.line_count = i + hit.line_count - prev.line_index;
                i = prev.line_index + prev.line_count - 1;
                continue;
            }
        }
        hits.push_back(hit);
        i = hit.line_index + hit.line_count - 1;
    }

    auto make_span = [&](size_t start, size_t end, std::string heading, size_t body_start, HeadingKind hk) {
        SectionSpan s;
        s.contract_id = doc.contract_id;
        s.ordinal = static_cast<int>(out.size());
        s.heading_text = std::move(heading);
        s.body_text = trim(std::string_view(text).substr(body_start, end - body_start));
        s.start_offset = start;
        s.end_offset = end;
        s.heading_kind = hk;
        out.push_back(std::move(s));
    };

    if (hits.empty()) {
        make_span(0, text.size(), "", 0, HeadingKind::none);
        return out;
    }

    size_t first_start = lines[hits.front().line_index].start;
    if (!trim(std::string_view(text).substr(0, first_start)).empty()) {
        make_span(0, first_start, "", 0, HeadingKind::none);
    }
    for (size_t h = 0; h < hits.size(); ++h) {
        const auto& hit = hits[h];
        size_t start = lines[hit.line_index].start;
        size_t end = h + 1 < hits.size() ? lines[hits[h + 1].line_index].start : text.size();
        std::vector<std::string> parts;
        size_t last_line = hit.line_index;
        for (size_t k = hit.line_index; k < hit.line_index + hit.line_count; ++k) {
            if (!lines[k].blank) parts.push_back(trim(lines[k].text));
            last_line = k;
        }
        size_t body_start = std::min(lines[last_line].end, end);
        // drop trailing newline-only remainder so that start < end always holds
        make_span(start, end, join(parts, " "), body_start, hit.kind);
    }
    return out;
}

double section_coverage(const ContractDoc& doc) {
    if (doc.plain_text.empty()) return 1.0;
    size_t covered = 0;
    for (const auto& s : doc.sections) covered += s.end_offset - s.start_offset;
    return static_cast<double>(covered) / static_cast<double>(doc.plain_text.size());
}

void ingest(ContractDoc& doc) {
    doc.plain_text = normalize_markup(doc.raw_markup);
    doc.sections = sectionize(doc);
}

std::vector<ContractDoc> ingest_all(std::vector<ContractDoc> docs, unsigned workers) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(docs.size())));
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (size_t i = next++; i < docs.size(); i = next++) ingest(docs[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    std::sort(docs.begin(), docs.end(),
              [](const ContractDoc& a, const ContractDoc& b) { return a.contract_id < b.contract_id; });
    return docs;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string_view heading_kind_name(HeadingKind k) {
    switch (k) {
        case HeadingKind::none: return "none";
        case HeadingKind::numbered: return "numbered";
        case HeadingKind::all_caps: return "all_caps";
        case HeadingKind::title_case: return "title_case";
    }
    return "none";
}

HeadingKind parse_heading_kind(std::string_view s) {
    if (s == "numbered") return HeadingKind::numbered;
    if (s == "all_caps") return HeadingKind::all_caps;
    if (s == "title_case") return HeadingKind::title_case;
    return HeadingKind::none;
}

}  // namespace

void to_json(json& j, const SectionSpan& s) {
    j = json{{"contract_id", s.contract_id},   {"ordinal", s.ordinal},
             {"heading_text", s.heading_text}, {"heading_kind", heading_kind_name(s.heading_kind)},
             {"title_label", s.title_label},   {"start_offset", s.start_offset},
             {"end_offset", s.end_offset},     {"body_text", s.body_text}};
}

void from_json(const json& j, SectionSpan& s) {
    s.contract_id = j.at("contract_id").get<std::string>();
    s.ordinal = j.at("ordinal").get<int>();
    s.heading_text = j.at("heading_text").get<std::string>();
    s.heading_kind = parse_heading_kind(j.value("heading_kind", "none"));
    s.title_label = j.value("title_label", "unknown");
    s.start_offset = j.at("start_offset").get<size_t>();
    s.end_offset = j.at("end_offset").get<size_t>();
    s.body_text = j.at("body_text").get<std::string>();
}

void to_json(json& j, const RegistryEntry& e) {
    j = json{{"name", e.name}, {"role", to_string(e.role)}};
}

void from_json(const json& j, RegistryEntry& e) {
    e.name = j.at("name").get<std::string>();
    e.role = parse_role(j.at("role").get<std::string>());
}

namespace store {

void write_file_atomic(const fs::path& path, std::string_view contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("E_IO", "cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error("E_IO", "short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("E_IO", "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_contract(const fs::path& root, const ContractDoc& doc) {
    fs::path dir = root / doc.contract_id;
    fs::create_directories(dir);
    write_file_atomic(dir / "raw.htm", doc.raw_markup);
    if (!doc.plain_text.empty()) write_file_atomic(dir / "text.txt", doc.plain_text);
    json meta = {{"contract_id", doc.contract_id},
                 {"accession_no", doc.accession_no},
                 {"source_uri", doc.source_uri},
                 {"filed_date", doc.filed_date ? to_string(*doc.filed_date) : ""},
                 {"metadata_parties", doc.metadata_parties}};
    write_file_atomic(dir / "meta.json", meta.dump(2) + "\n");
    if (!doc.sections.empty()) {
        write_file_atomic(dir / "sections.json", json(doc.sections).dump(2) + "\n");
    }
}

ContractDoc load_contract(const fs::path& root, const std::string& contract_id) {
    fs::path dir = root / contract_id;
    ContractDoc doc;
    json meta = json::parse(read_file(dir / "meta.json"));
    doc.contract_id = meta.at("contract_id").get<std::string>();
    doc.accession_no = meta.value("accession_no", "");
    doc.source_uri = meta.value("source_uri", "");
    if (auto fd = parse_canonical(meta.value("filed_date", ""))) doc.filed_date = fd;
    doc.metadata_parties = meta.value("metadata_parties", std::vector<std::string>{});
    doc.raw_markup = read_file(dir / "raw.htm");
    if (fs::exists(dir / "text.txt")) doc.plain_text = read_file(dir / "text.txt");
    if (fs::exists(dir / "sections.json")) {
        doc.sections = json::parse(read_file(dir / "sections.json")).get<std::vector<SectionSpan>>();
    }
    return doc;
}

std::vector<std::string> list_contracts(const fs::path& root) {
    std::vector<std::string> ids;
    if (!fs::exists(root)) throw Error("E_IO", "corpus directory not found: " + root.string());
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "meta.json")) {
            ids.push_back(entry.path().filename().string());
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<ContractDoc> load_corpus(const fs::path& root) {
    std::vector<ContractDoc> docs;
    for (const auto& id : list_contracts(root)) docs.push_back(load_contract(root, id));
    return docs;
}

void save_registry(const fs::path& root, const std::vector<RegistryEntry>& registry) {
    write_file_atomic(root / "registry.json", json(registry).dump(2) + "\n");
}

std::vector<RegistryEntry> load_registry(const fs::path& root) {
    fs::path p = root / "registry.json";
    if (!fs::exists(p)) return {};
    return json::parse(read_file(p)).get<std::vector<RegistryEntry>>();
}

}  // namespace store

}  // namespace law
