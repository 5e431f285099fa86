#include "law/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law {

SeededRng::SeededRng(std::uint64_t seed) : state_(seed) {}

// splitmix64
std::uint64_t SeededRng::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

long SeededRng::uniform(long lo, long hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
}

double SeededRng::unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

std::string_view to_string(HeadingStyle style) {
    switch (style) {
        case HeadingStyle::article: return "article";
        case HeadingStyle::section: return "section";
        case HeadingStyle::numbered: return "numbered";
        case HeadingStyle::caps: return "caps";
        case HeadingStyle::title: return "title";
    }
    return "caps";
}

HeadingStyle parse_heading_style(std::string_view text) {
    std::string t = to_lower(text);
    if (t == "article") return HeadingStyle::article;
    if (t == "section") return HeadingStyle::section;
    if (t == "numbered") return HeadingStyle::numbered;
    if (t == "caps") return HeadingStyle::caps;
    if (t == "title") return HeadingStyle::title;
    throw Error("E_USAGE", "unknown heading style " + std::string(text));
}

const ManifestContract* CorpusManifest::find(const std::string& contract_id) const {
    auto it = std::lower_bound(contracts.begin(), contracts.end(), contract_id,
                               [](const ManifestContract& c, const std::string& id) { return c.contract_id < id; });
    return it != contracts.end() && it->contract_id == contract_id ? &*it : nullptr;
}

namespace {

using Vars = std::map<std::string, std::string>;

std::string fill(std::string_view tpl, const Vars& vars) {
    std::string out;
    size_t i = 0;
    while (i < tpl.size()) {
        size_t open = tpl.find('{', i);
        if (open == std::string_view::npos) {
            out.append(tpl.substr(i));
            break;
        }
        size_t close = tpl.find('}', open);
        out.append(tpl.substr(i, open - i));
        auto it = vars.find(std::string(tpl.substr(open + 1, close - open - 1)));
        if (it == vars.end()) throw Error("E_INTERNAL", "template slot " + std::string(tpl.substr(open, close - open + 1)));
        out.append(it->second);
        i = close + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// vocabulary

struct LabelTemplate {
    std::string label;
    std::vector<std::string> headings;  // two aliased, last one lexicon-only
    std::vector<std::vector<std::string>> bodies;
};

const std::vector<LabelTemplate>& templates() {
    static const std::vector<LabelTemplate> t = {
        {"definitions",
         {"Definitions", "Defined Terms", "Interpretation"},
         {{"As used in this Agreement, the following terms shall have the meanings set forth below. \"Securities\" "
           "means stocks, bonds, notes and other instruments held for the account of a Fund. \"Business Day\" means "
           "any day on which banks in {law_state} are open. Capitalized terms used herein and not defined shall have "
           "the meanings given in the Prospectus."},
          {"Whenever used in this Agreement, the terms defined in this Article have the meanings indicated. The term "
           "\"Board\" means the Board of Trustees of the Trust, and the term \"Assets\" includes all cash and "
           "Securities of a Fund. Words importing the singular include the plural, and defined terms used herein "
           "have the same meaning throughout."}}},
        {"duties and responsibilities",
         {"Duties and Responsibilities", "Duties of the Custodian", "Custodial Services"},
         {{"The Custodian shall hold in safekeeping all Securities and cash delivered to it for the account of each "
           "Fund. The Custodian shall collect all income and other payments with respect to such Securities, "
           "maintain records of all holdings, and perform such other duties as are customarily performed by "
           "custodians of investment company assets. Securities held in physical form shall be segregated from the "
           "assets of the Custodian."},
          {"Subject to the terms hereof, the Custodian is responsible for the safekeeping of the assets of each Fund "
           "and shall maintain accurate records thereof. Its responsibilities include collecting income, presenting "
           "Securities for payment when due, and holding physical certificates in its vaults. The Custodian shall "
           "perform its duties in accordance with applicable law."}}},
        {"account transactions",
         {"Account Transactions", "Custody Account", "Movements of Cash and Securities"},
         {{"The Custodian shall open and maintain a separate account in the name of each Fund. Upon receipt of "
           "Instructions, the Custodian shall debit the account for the purchase of Securities and credit the account "
           "with the proceeds of any sale. Each settlement of a transaction shall be recorded in the account on the "
           "date of receipt of payment."},
          {"All cash received by the Custodian for a Fund shall be credited to the account of that Fund, and all "
           "payments made for a Fund shall be debited to such account. The Custodian shall effect purchase and sale "
           "transactions only against receipt of cash or Securities, and shall report each settlement in the account "
           "statements."}}},
        {"instructions",
         {"Instructions", "Proper Instructions", "Communications by the Trust"},
         {{"The Custodian shall act only upon Proper Instructions. Proper Instructions means written instructions "
           "signed by an Authorized Person, or oral instructions confirmed in writing, or instructions given by "
           "tested telex, facsimile or other electronic transmission. The Trust shall confirm oral instructions "
           "promptly."},
          {"Instructions may be given in writing, orally, or by electronic transmission acceptable to the Custodian. "
           "Oral instructions shall be confirmed by written instruction, and the Custodian may act on any "
           "instruction it reasonably believes to be genuine. Facsimile and tested electronic messages shall be "
           "treated as written instructions."}}},
        {"authorized persons",
         {"Authorized Persons", "Authorized Signatories", "Persons Entitled to Act"},
         {{"The Trust shall furnish the Custodian with a certified list of the names and specimen signatures of the "
           "officers and employees designated as Authorized Persons, who currently are {persons}. The Custodian may "
           "rely on such list until it receives a superseding certified list."},
          {"Each person named in the list of authorized persons delivered by the Trust may give Instructions on behalf "
           "of a Fund. The persons so designated are {persons}. The Trust shall deliver specimen signatures of each "
           "designated officer and shall notify the Custodian of any change to the list."}}},
        {"evidence of authority",
         {"Evidence of Authority", "Proof of Authority", "Reliance on Board Action"},
         {{"The Custodian shall be protected in acting upon any certificate, resolution or other document believed "
           "by it to be genuine. A copy of a resolution of the Board certified by the Secretary of the Trust shall be "
           "conclusive evidence of the authority of the Trustees, and the Custodian may rely on such certificate "
           "until notified otherwise."},
          {"The Trust shall deliver to the Custodian a certificate of its Secretary setting forth the resolutions of "
           "the Board authorizing this Agreement. The Custodian may conclusively rely on any vote of the Trustees or "
           "directors so certified as evidence of authority."}}},
        {"nominees",
         {"Nominees", "Registration in Nominee Name", "Form of Registration"},
         {{"Securities held by the Custodian may be registered in the name of the Custodian, its nominee, or the "
           "nominee of a securities depository, or may be held in bearer form. Registration in a nominee name shall "
           "not alter the beneficial ownership of the Fund, and the Custodian shall keep a record of each nominee "
           "registration."},
          {"The Custodian may cause Securities to be registered in the name of a nominee partnership or held in "
           "street name. Each nominee shall hold such Securities of record for the Fund, and the form of registration "
           "shall be shown on the records of the Custodian."}}},
        {"subcustodians and securities depositories",
         {"Subcustodians and Securities Depositories", "Securities Depositories", "Use of Book-Entry Systems"},
         {{"The Custodian may deposit Securities in a securities depository or in the book entry system of the "
           "Federal Reserve, and may appoint subcustodians that are participants in such clearing agencies. "
           "Securities held through a depository shall be identified on the records of the Custodian as belonging "
           "to the Fund."},
          {"With the consent of the Trust, the Custodian may employ subcustodians and may use securities "
           "depositories, including DTC and the Federal Reserve book entry system, as clearing agencies for "
           "Securities of the Funds. Each subcustodian shall be a participant in good standing."}}},
        {"foreign custodian and subcustodian",
         {"Foreign Custodian and Subcustodian", "Foreign Custody", "Assets Held Abroad"},
         {{"With respect to assets held outside the United States, the Custodian may delegate responsibilities to "
           "eligible foreign custodians as defined in Rule 17f-5. The Custodian shall monitor the custody risk of "
           "each foreign country and market in which assets are held and shall report material changes to the "
           "Board."},
          {"The Trust may place assets with eligible foreign custodians in each country selected by it. The Custodian "
           "shall act as foreign custody manager under Rule 17f-5, shall assess the risk of each foreign market and "
           "jurisdiction, and shall monitor the foreign custodians to which it has made a delegation."}}},
        {"standard of care liabilities",
         {"Standard of Care Liabilities", "Standard of Care", "Degree of Diligence"},
         {{"The Custodian shall exercise reasonable care, prudence and diligence in carrying out its obligations. "
           "The Custodian shall be liable only for losses resulting from its negligence, willful misconduct or bad "
           "faith, and shall use the skill of a prudent professional custodian."},
          {"In performing hereunder the Custodian shall act with the care, skill and diligence of a reasonable "
           "custodian. It shall not be liable for any act or omission absent negligence, bad faith or willful "
           "misconduct on its part, and this standard of care applies to all services."}}},
        {"limitations and scope of use or liability",
         {"Limitations and Scope of Use or Liability", "Limitation of Liability", "Exclusion of Certain Damages"},
         {{"In no event shall either party be liable for special, indirect, incidental, punitive or consequential "
           "damages, even if advised of the possibility of such damages. The aggregate liability of the Custodian "
           "shall not exceed the scope of losses that were reasonably foreseeable."},
          {"Neither party shall be liable for consequential, special or indirect damages, whether or not "
           "foreseeable, and regardless of whether it was advised of the possibility thereof. The limitations in "
           "this paragraph define the scope of liability in the aggregate."}}},
        {"indemnification",
         {"Indemnification", "Indemnity", "Protection of the Custodian"},
         {{"The Trust shall indemnify and hold harmless the Custodian from and against all losses, claims, damages, "
           "liabilities, judgments and costs, including reasonable attorneys fees, arising out of its performance "
           "hereunder, except those resulting from its own negligence. The Custodian shall promptly notify the "
           "Trust of any claim for which it may seek indemnification."},
          {"Each Fund agrees to indemnify the Custodian and to defend and hold it harmless against any claims, "
           "losses, damages, liabilities and judgments incurred in acting hereunder, together with costs and "
           "attorneys fees. The right to be indemnified shall survive the termination of this Agreement."}}},
        {"fees and expenses",
         {"Fees and Expenses", "Compensation", "Payment for Services"},
         {{"Each Fund shall pay the Custodian compensation for its services as agreed in writing from time to time, "
           "and shall reimburse the Custodian for its reasonable out of pocket costs and disbursements. The "
           "Custodian shall invoice such expenses monthly, and overdraft charges shall be paid at the rate then in "
           "effect."},
          {"The Custodian shall be entitled to reimbursement of all expenses incurred in performing its services, "
           "including pocket costs and disbursements, in addition to the fees payable hereunder. Invoices shall be "
           "payable within ten (10) business days of receipt."}}},
        {"proprietary information",
         {"Proprietary Information", "Confidentiality", "Protection of Records"},
         {{"Each party shall treat as confidential all proprietary information of the other party, including trade "
           "secrets and nonpublic information concerning shareholders, and shall not disclose such information "
           "except to regulators or as required by law."},
          {"All records and nonpublic information relating to a Fund are the proprietary and confidential "
           "information of the Trust. The Custodian shall maintain the confidentiality of such information and shall "
           "make no disclosure of it, other than to its regulators, without the consent of the Trust."}}},
        {"termination",
         {"Termination", "Term and Termination", "Duration of Agreement"},
         {}},
        {"successor custodian",
         {"Successor Custodian", "Successor Custodians", "Delivery of Assets to New Custodian"},
         {{"Upon termination, the Trust shall designate a successor custodian, which shall be a qualified bank, and "
           "the Custodian shall deliver all assets of the Funds to such successor. If no successor is designated, "
           "the Custodian may deliver the assets to a qualified bank of its choice, and pending such transfer shall "
           "continue to hold the assets."},
          {"In the event of the appointment of a successor custodian, the Custodian shall transfer and deliver to the "
           "successor all Securities and cash then held by it. Pending delivery, the Custodian shall continue to act "
           "under this Agreement with respect to the assets not yet transferred."}}},
        {"governing law",
         {"Governing Law", "Choice of Law", "Construction of Agreement"},
         {{"This Agreement shall be governed by and construed in accordance with the laws of the State of "
           "{law_state}, without regard to its conflicts of law principles. The parties submit to the jurisdiction "
           "of the courts located in {law_state} and waive any objection to venue therein."},
          {"The laws of the State of {law_state} shall govern this Agreement and it shall be construed accordingly, "
           "without giving effect to principles of conflicts of laws. Each party submits to the jurisdiction and "
           "venue of the state and federal courts sitting in {law_state}."}}},
        {"miscellaneous",
         {"Miscellaneous", "General Provisions", "Other Matters"},
         {{"This Agreement constitutes the entire understanding of the parties and supersedes all prior agreements. "
           "No waiver of any provision shall be effective unless in writing, and no assignment shall be made without "
           "consent, except to successors. If any provision is held invalid, the remainder shall be severable. This "
           "Agreement may be executed in counterparts, and headings are for convenience only. Notices shall be sent "
           "to the addresses of the parties on record."},
          {"Notices hereunder shall be in writing. The headings herein are for reference only. This Agreement may not "
           "be assigned without consent and binds the successors of the parties. Any invalid provision shall be "
           "severable, no waiver shall be implied, and this Agreement may be signed in counterparts and constitutes "
           "the entire understanding of the parties."}}},
        {"fee schedule",
         {"Fee Schedule", "Schedule of Fees", "Custody Pricing"},
         {{"The Custodian shall charge an annual fee of {bp} basis points on the average net assets of each Fund, "
           "billed monthly, subject to a minimum annual charge of ${min_fee} per Fund. Transaction charges shall be "
           "${tx_fee} per settlement."},
          {"Annual custody fee: {bp} basis points per annum, computed on average monthly net assets and billed "
           "monthly. Minimum fee: ${min_fee} per Fund annually. Transaction fee: ${tx_fee} per trade, at the rate "
           "set forth in this schedule."}}},
    };
    return t;
}

const LabelTemplate& template_for(std::string_view label) {
    for (const auto& t : templates()) {
        if (t.label == label) return t;
    }
    throw Error("E_INTERNAL", "no template for " + std::string(label));
}

const std::vector<std::string> kCustodians = {
    "The Bank of New York Mellon",       "State Street Bank and Trust Company", "JPMorgan Chase Bank",
    "Citibank",                          "Brown Brothers Harriman & Co.",       "U.S. Bank National Association",
    "The Northern Trust Company",        "Wells Fargo Bank",
};

const std::vector<std::string> kBrandHeads = {"Ash",  "Bel",   "Cal",   "Dun",  "Elm",   "Fair", "Glen",
                                              "Har",  "Kings", "Lark",  "Mar",  "Oak",   "Pem",  "Red",
                                              "Stone", "Thorn", "Wes",  "Wood", "Silver", "Crane"};
const std::vector<std::string> kBrandTails = {"ford", "mont", "brook", "field", "haven",
                                              "ridge", "wick", "dale", "gate", "crest"};
const std::vector<std::string> kTrustSuffixes = {"Funds Trust", "Investment Trust", "Series Trust",
                                                 "Mutual Funds Trust"};
const std::vector<std::string> kFundAdjectives = {
    "Global",  "International", "Emerging Markets", "Small Cap", "Large Cap", "Mid Cap",      "Short-Term",
    "Tax-Exempt", "Municipal",  "Dividend",         "Growth",    "Value",     "Balanced",     "Core",
    "Total Return", "High Yield", "Inflation-Protected", "Strategic"};
const std::vector<std::string> kFundClasses = {"Equity",  "Bond",  "Income",       "Equity Income",
                                               "Opportunities", "Allocation", "Index", "Money Market"};
const std::vector<std::string> kFirstNames = {"Maria", "James", "Priya", "Thomas", "Grace", "Daniel",
                                              "Helen", "Robert", "Aiko",  "Samuel", "Laura", "Victor"};
const std::vector<std::string> kLastNames = {"Lopez", "Whitfield", "Raman", "Okafor", "Brennan", "Kowalski",
                                             "Sato", "Hargrove", "Lindqvist", "Moreau", "Castillo", "Dunning"};
const std::vector<std::string> kTitles = {"President", "Treasurer", "Secretary", "Vice President",
                                          "Assistant Treasurer", "Chief Compliance Officer"};
const std::vector<std::string> kStates = {"New York", "Massachusetts", "Delaware", "Maryland"};

const std::vector<std::string_view> kCanonicalOrder = {
    "definitions",
    "duties and responsibilities",
    "account transactions",
    "instructions",
    "authorized persons",
    "evidence of authority",
    "nominees",
    "subcustodians and securities depositories",
    "foreign custodian and subcustodian",
    "standard of care liabilities",
    "limitations and scope of use or liability",
    "indemnification",
    "fees and expenses",
    "proprietary information",
    "termination",
    "successor custodian",
    "governing law",
    "miscellaneous",
    "fee schedule",
};

// ---------------------------------------------------------------------------
// rendering helpers

std::string ordinal_suffix(int d) {
    if (d % 100 >= 11 && d % 100 <= 13) return "th";
    switch (d % 10) {
        case 1: return "st";
        case 2: return "nd";
        case 3: return "rd";
        default: return "th";
    }
}

std::string long_date(const CalendarDate& d) {
    return std::string(month_name(d.month)) + " " + std::to_string(d.day) + ", " + std::to_string(d.year);
}

std::string ordinal_date(const CalendarDate& d) {
    return "the " + std::to_string(d.day) + ordinal_suffix(d.day) + " day of " + std::string(month_name(d.month)) +
           ", " + std::to_string(d.year);
}

std::string render_date(const CalendarDate& d, SeededRng& rng, bool allow_ordinal = true) {
    long form = rng.uniform(0, allow_ordinal ? 3 : 2);
    if (form == 1) {
        return std::to_string(d.day) + " " + std::string(month_name(d.month)) + " " + std::to_string(d.year);
    }
    if (form == 2 && d.day > 12) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%02d/%02d/%04d", d.month, d.day, d.year);
        return buf;
    }
    if (form == 3) return ordinal_date(d);
    return long_date(d);
}

const char* kSmallNumbers[] = {"zero",    "one",     "two",       "three",    "four",     "five",    "six",
                               "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
                               "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};
const char* kTens[] = {"", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};

std::string number_words(int n) {
    if (n < 20) return kSmallNumbers[n];
    std::string w = kTens[n / 10];
    if (n % 10) w += std::string("-") + kSmallNumbers[n % 10];
    return w;
}

std::string render_duration(const Duration& d, SeededRng& rng) {
    std::string unit(to_string(d.unit));
    if (d.count == 1) unit.pop_back();
    if (d.count >= 100) return std::to_string(d.count) + " " + unit;
    switch (rng.uniform(0, 2)) {
        case 0: return number_words(d.count) + " (" + std::to_string(d.count) + ") " + unit;
        case 1: return number_words(d.count) + " " + unit;
        default: return std::to_string(d.count) + " " + unit;
    }
}

std::string roman(int n) {
    static const std::pair<int, const char*> table[] = {{10, "X"}, {9, "IX"}, {5, "V"}, {4, "IV"}, {1, "I"}};
    std::string out;
    for (auto [v, s] : table) {
        while (n >= v) {
            out += s;
            n -= v;
        }
    }
    return out;
}

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::string html_escape(std::string_view s, SeededRng& rng) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += rng.chance(0.5) ? "&quot;" : "&#34;"; break;
            case '\'': out += rng.chance(0.5) ? "'" : "&#39;"; break;
            default: out += c;
        }
    }
    return out;
}

// A document under construction: blocks of heading lines or paragraphs,
// rendered both as markup and as the normalized text they should produce.
class DocBuilder {
public:
    explicit DocBuilder(SeededRng& rng) : rng_(rng) {}

    void heading(HeadingStyle style, int number, const std::string& title) {
        std::string text;
        std::string markup;
        switch (style) {
            case HeadingStyle::article:
                text = "ARTICLE " + roman(number) + "\n" + title;
                heading_ = "ARTICLE " + roman(number) + " " + title;
                markup = "<p align=\"center\"><b>ARTICLE&nbsp;" + roman(number) + "</b><br>" + html_escape(title, rng_) + "</p>";
                break;
            case HeadingStyle::section:
                text = heading_ = "Section " + std::to_string(number) + ". " + title;
                markup = "<p><b>Section " + std::to_string(number) + ".&nbsp;" + html_escape(title, rng_) + "</b></p>";
                break;
            case HeadingStyle::numbered:
                text = heading_ = std::to_string(number) + ". " + upper(title);
                markup = "<p><b>" + std::to_string(number) + ". " + html_escape(upper(title), rng_) + "</b></p>";
                break;
            case HeadingStyle::caps:
                text = heading_ = upper(title);
                markup = "<p align=\"center\"><b>" + html_escape(upper(title), rng_) + "</b></p>";
                break;
            case HeadingStyle::title:
                text = heading_ = title;
                markup = "<p><u>" + html_escape(title, rng_) + "</u></p>";
                break;
        }
        push(text, markup);
    }

    void raw_heading(const std::string& caps_title) {
        heading_ = caps_title;
        push(caps_title, "<p align=\"center\"><b>" + html_escape(caps_title, rng_) + "</b></p>");
    }

    void paragraph(const std::string& text) {
        std::string markup = "<p>";
        // wrap long source lines like filing agents do; whitespace collapses
        size_t col = 0;
        for (char c : html_escape(text, rng_)) {
            if (c == ' ' && col > 70) {
                markup += '\n';
                col = 0;
                continue;
            }
            markup += c;
            ++col;
        }
        markup += "</p>";
        push(text, markup);
    }

    const std::string& last_heading() const { return heading_; }

    std::string markup() const { return "<html>\n<body>\n" + markup_ + "</body>\n</html>\n"; }
    const std::string& text() const { return text_; }

private:
    void push(const std::string& text, const std::string& markup) {
        if (!text_.empty()) text_ += "\n\n";
        text_ += text;
        markup_ += markup + "\n";
    }

    SeededRng& rng_;
    std::string text_;
    std::string markup_;
    std::string heading_;
};

// ---------------------------------------------------------------------------
// family generation

struct Family {
    int index = 0;
    std::string trust;
    std::string custodian;
    std::vector<std::string> funds;
    std::string state;
    std::string law_state;
    HeadingStyle style = HeadingStyle::caps;
    int cik = 0;
};

bool distinct_enough(const std::string& name, const std::vector<std::string>& taken) {
    std::string n = normalize_name(name);
    for (const auto& t : taken) {
        if (similarity(n, normalize_name(t)) >= 0.85) return false;
        if (n.find(normalize_name(t)) != std::string::npos || normalize_name(t).find(n) != std::string::npos) {
            // substrings are fine only between different roles; keep names apart
            return false;
        }
    }
    return true;
}

HeadingStyle pick_style(const std::map<HeadingStyle, double>& mix, SeededRng& rng) {
    static const HeadingStyle all[] = {HeadingStyle::article, HeadingStyle::section, HeadingStyle::numbered,
                                       HeadingStyle::caps, HeadingStyle::title};
    double total = 0;
    for (auto s : all) total += mix.empty() ? 1.0 : (mix.count(s) ? mix.at(s) : 0.0);
    if (total <= 0) throw Error("E_USAGE", "style mix has no positive weight");
    double x = rng.unit() * total;
    for (auto s : all) {
        double w = mix.empty() ? 1.0 : (mix.count(s) ? mix.at(s) : 0.0);
        if (x < w) return s;
        x -= w;
    }
    for (int i = 4; i >= 0; --i) {
        if (mix.empty() || (mix.count(all[i]) && mix.at(all[i]) > 0)) return all[i];
    }
    return HeadingStyle::caps;
}

std::string persons_list(SeededRng& rng) {
    int n = static_cast<int>(rng.uniform(2, 4));
    std::vector<std::string> out;
    std::set<std::string> used;
    while (static_cast<int>(out.size()) < n) {
        std::string name = rng.pick(kFirstNames) + " " + rng.pick(kLastNames);
        if (!used.insert(name).second) continue;
        out.push_back(name + " (" + rng.pick(kTitles) + ")");
    }
    std::string s;
    for (size_t i = 0; i < out.size(); ++i) {
        if (i) s += i + 1 == out.size() ? " and " : ", ";
        s += out[i];
    }
    return s;
}

Vars price_vars(SeededRng& rng) {
    return {{"bp", std::to_string(rng.uniform(1, 9))},
            {"min_fee", std::to_string(rng.uniform(5, 40) * 500)},
            {"tx_fee", std::to_string(rng.uniform(5, 30))}};
}

const std::vector<std::string> kNotices = {"sixty (60) days'", "ninety (90) days'", "thirty (30) days'", "180 days'"};

struct TerminationPlan {
    std::string basis = "evergreen";
    std::optional<Duration> duration;
    std::optional<CalendarDate> termination;
    bool in_recitals = false;
    std::string rendered_duration;
};

TerminationPlan plan_termination(const CalendarDate& effective, SeededRng& rng, bool allow_recitals) {
    TerminationPlan p;
    double x = rng.unit();
    double recitals_p = allow_recitals ? 0.10 : 0.0;
    if (x < 0.45 + recitals_p) {
        Duration d;
        double u = rng.unit();
        if (u < 0.6) d = {static_cast<int>(rng.uniform(1, 10)), DurationUnit::years};
        else if (u < 0.9) d = {static_cast<int>(rng.uniform(6, 60)), DurationUnit::months};
        else d = {static_cast<int>(rng.uniform(180, 999)), DurationUnit::days};
        p.basis = "effective_plus_duration";
        p.duration = d;
        p.termination = add(effective, d);
        p.rendered_duration = render_duration(d, rng);
        p.in_recitals = x >= 0.45;
    } else if (x < 0.65 + recitals_p) {
        p.basis = "explicit_termination_date";
        long days = rng.uniform(365 * 2, 365 * 8);
        p.termination = from_day_number(day_number(effective) + days);
    }
    return p;
}

std::vector<std::string> termination_paragraphs(const TerminationPlan& p, SeededRng& rng) {
    Vars v = {{"notice", rng.pick(kNotices)}};
    if (p.basis == "effective_plus_duration" && !p.in_recitals) {
        v["duration"] = p.rendered_duration;
        return {fill(rng.chance(0.5)
                         ? "This Agreement shall continue in force for an initial term of {duration}. Thereafter this "
                           "Agreement shall remain in effect until terminated by either party upon {notice} prior "
                           "written notice to the other party."
                         : "The initial term of this Agreement shall be {duration}. It shall thereafter continue in "
                           "effect unless terminated by either party upon {notice} written notice. Termination shall "
                           "not affect any liability accrued before the date of termination.",
                     v)};
    }
    if (p.basis == "explicit_termination_date") {
        v["end_date"] = render_date(*p.termination, rng);
        return {fill(rng.chance(0.5)
                         ? "This Agreement shall terminate on {end_date}, unless sooner terminated by either party "
                           "upon {notice} prior written notice. Upon termination the Custodian shall deliver the "
                           "assets as provided herein."
                         : "This Agreement shall remain in full force and effect until {end_date}, provided that "
                           "either party may terminate it earlier upon {notice} written notice to the other party.",
                     v)};
    }
    return {fill(rng.chance(0.5)
                     ? "This Agreement shall remain in effect until terminated by either party upon {notice} prior "
                       "written notice to the other party. Termination shall not affect any liability accrued before "
                       "the date of termination."
                     : "This Agreement shall continue in effect until terminated. Either party may terminate this "
                       "Agreement upon {notice} written notice delivered to the other party.",
                 v)};
}

std::string fund_list(const std::vector<std::string>& funds) {
    std::string s;
    for (size_t i = 0; i < funds.size(); ++i) {
        if (i) s += "; ";
        s += funds[i];
    }
    return s + ".";
}

std::string heading_for(const std::string& label, SeededRng& rng) {
    const auto& t = template_for(label);
    double x = rng.unit();
    if (x < 0.12) return t.headings[2];
    return x < 0.56 ? t.headings[0] : t.headings[1];
}

struct BuiltContract {
    ContractDoc doc;
    std::string text;
    ManifestContract manifest;
};

void add_section(DocBuilder& b, ManifestContract& m, HeadingStyle style, int number, const std::string& label,
                 const std::vector<std::string>& paragraphs, SeededRng& rng) {
    b.heading(style, number, heading_for(label, rng));
    for (const auto& p : paragraphs) b.paragraph(p);
    m.sections.push_back({b.last_heading(), label});
}

std::vector<std::string> body_for(const std::string& label, const Vars& vars, SeededRng& rng) {
    const auto& t = template_for(label);
    std::vector<std::string> out;
    for (const auto& p : rng.pick(t.bodies)) out.push_back(fill(p, vars));
    return out;
}

std::string accession(int cik, int year, SeededRng& rng) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%010d-%02d-%06ld", cik, year % 100, rng.uniform(1, 999999));
    return buf;
}

std::string contract_id(int family, int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "c%04d-%02d", family, k);
    return buf;
}

BuiltContract build_master(const Family& f, const CalendarDate& effective, SeededRng& rng) {
    BuiltContract out;
    ManifestContract& m = out.manifest;
    m.contract_id = contract_id(f.index, 0);
    m.family_master = m.contract_id;
    m.is_master = true;
    m.effective = effective;
    m.master = effective;
    m.dated = from_day_number(day_number(effective) - rng.uniform(0, 10));
    m.style = f.style;

    TerminationPlan term = plan_termination(effective, rng, true);
    m.termination_basis = term.basis;
    m.duration = term.duration;
    m.termination = term.termination;

    DocBuilder b(rng);
    b.raw_heading("CUSTODY AGREEMENT");
    Vars v = {{"trust", f.trust},
              {"custodian", f.custodian},
              {"state", f.state},
              {"made", rng.chance(0.5) ? "is made " + ordinal_date(m.dated).substr(0) : "is dated as of " + render_date(m.dated, rng, false)},
              {"effective", render_date(effective, rng)}};
    // "made this 13th day of ..." needs the ordinal form without the article
    if (v["made"].rfind("is made the ", 0) == 0) v["made"] = "is made this " + v["made"].substr(12);
    b.paragraph(fill("This CUSTODY AGREEMENT {made} and shall become effective as of {effective}, by and between "
                     "{trust}, a {state} statutory trust (the \"Trust\"), on behalf of each of its series listed on "
                     "Appendix A hereto (each, a \"Fund\"), and {custodian} (the \"Custodian\").",
                     v));
    b.paragraph("WITNESSETH:");
    b.paragraph("WHEREAS, the Trust is registered as an open-end management investment company under the Investment "
                "Company Act of 1940;");
    if (term.in_recitals) {
        b.paragraph(fill("WHEREAS, the Trust desires to retain the Custodian for an initial period of {d} to serve as "
                         "custodian of the assets of each Fund;",
                         {{"d", term.rendered_duration}}));
    } else {
        b.paragraph("WHEREAS, the Trust desires to retain the Custodian to serve as custodian of the assets of each "
                    "Fund;");
    }
    b.paragraph("NOW, THEREFORE, in consideration of the premises and mutual covenants contained herein, the parties "
                "agree as follows.");
    m.sections.push_back({"CUSTODY AGREEMENT", "recitals"});

    Vars body_vars = price_vars(rng);
    body_vars["law_state"] = f.law_state;
    body_vars["persons"] = persons_list(rng);
    int number = 1;
    for (auto label_view : kCanonicalOrder) {
        std::string label(label_view);
        std::vector<std::string> paras =
            label == "termination" ? termination_paragraphs(term, rng) : body_for(label, body_vars, rng);
        if (label == "miscellaneous") {
            paras.push_back("IN WITNESS WHEREOF, the parties hereto have caused this Agreement to be executed by "
                            "their duly authorized officers as of the date first above written.");
        }
        add_section(b, m, f.style, number++, label, paras, rng);
    }
    b.raw_heading("APPENDIX A");
    b.paragraph("Funds covered by this Agreement: " + fund_list(f.funds));
    m.sections.push_back({"APPENDIX A", "unknown"});

    m.parties.push_back({f.trust, PartyRole::trust});
    m.parties.push_back({f.custodian, PartyRole::custodian});
    for (const auto& fund : f.funds) m.parties.push_back({fund, PartyRole::fund});

    out.text = b.text();
    out.doc.raw_markup = b.markup();
    return out;
}

BuiltContract build_amendment(const Family& f, int k, const CalendarDate& master_date, const CalendarDate& effective,
                              bool force_authorized_persons, SeededRng& rng) {
    BuiltContract out;
    ManifestContract& m = out.manifest;
    m.contract_id = contract_id(f.index, k);
    m.family_master = contract_id(f.index, 0);
    m.amendment_no = k;
    m.effective = effective;
    m.master = master_date;
    m.dated = from_day_number(day_number(effective) - rng.uniform(1, 15));
    m.style = f.style;

    std::vector<std::string> amended;
    const std::pair<const char*, double> candidates[] = {
        {"instructions", 0.2},  {"authorized persons", 0.5}, {"fees and expenses", 0.3},
        {"termination", 0.4},   {"governing law", 0.15},     {"fee schedule", 0.5}};
    for (auto [label, p] : candidates) {
        bool take = rng.chance(p) || (force_authorized_persons && std::string_view(label) == "authorized persons");
        if (take) amended.push_back(label);
    }
    if (amended.empty()) amended.push_back("fee schedule");
    bool has_termination = std::find(amended.begin(), amended.end(), "termination") != amended.end();

    TerminationPlan term;
    if (has_termination) term = plan_termination(effective, rng, false);
    m.termination_basis = term.basis;
    m.duration = term.duration;
    m.termination = term.termination;

    DocBuilder b(rng);
    std::string title = "AMENDMENT NO. " + std::to_string(k) + " TO CUSTODY AGREEMENT";
    b.raw_heading(title);
    Vars v = {{"k", std::to_string(k)},
              {"trust", f.trust},
              {"custodian", f.custodian},
              {"state", f.state},
              {"dated", render_date(m.dated, rng)},
              {"effective", render_date(effective, rng)},
              {"master", render_date(master_date, rng)}};
    b.paragraph(fill("This Amendment No. {k} (the \"Amendment\") is dated as of {dated} and shall become effective as "
                     "of {effective}, by and between {trust}, a {state} statutory trust (the \"Trust\"), and "
                     "{custodian} (the \"Custodian\").",
                     v));
    b.paragraph(fill("WHEREAS, the Trust and the Custodian are parties to the Custody Agreement dated {master} (the "
                     "\"Agreement\"); and WHEREAS, the parties desire to amend the Agreement as set forth herein;",
                     v));
    b.paragraph("NOW, THEREFORE, in consideration of the premises and mutual covenants contained herein, the parties "
                "agree as follows.");
    m.sections.push_back({title, "recitals"});

    Vars body_vars = price_vars(rng);
    body_vars["law_state"] = f.law_state;
    body_vars["persons"] = persons_list(rng);
    int number = 1;
    for (const auto& label : amended) {
        std::vector<std::string> paras = {"The provisions of the Agreement concerning this subject are hereby "
                                          "replaced in their entirety by the following."};
        auto body = label == "termination" ? termination_paragraphs(term, rng) : body_for(label, body_vars, rng);
        paras.insert(paras.end(), body.begin(), body.end());
        add_section(b, m, f.style, number++, label, paras, rng);
    }
    bool list_funds = rng.chance(0.5);
    if (list_funds) {
        b.raw_heading("APPENDIX A");
        b.paragraph("Appendix A to the Agreement is hereby replaced with the following list of Funds: " + fund_list(f.funds));
        m.sections.push_back({"APPENDIX A", "unknown"});
    }
    add_section(b, m, f.style, number++, "miscellaneous",
                {"Except as expressly amended hereby, the Agreement shall remain in full force and effect. This "
                 "Amendment may be executed in counterparts, each of which shall be deemed an original.",
                 "IN WITNESS WHEREOF, the parties hereto have caused this Amendment to be executed by their duly "
                 "authorized officers as of the date first above written."},
                rng);

    m.parties.push_back({f.trust, PartyRole::trust});
    m.parties.push_back({f.custodian, PartyRole::custodian});
    if (list_funds) {
        for (const auto& fund : f.funds) m.parties.push_back({fund, PartyRole::fund});
    }
    out.text = b.text();
    out.doc.raw_markup = b.markup();
    return out;
}

Family make_family(int index, const SynthOptions& options, std::vector<std::string>& taken, SeededRng& rng) {
    Family f;
    f.index = index;
    f.cik = 1000000 + index * 7;
    f.style = pick_style(options.style_mix, rng);
    f.state = rng.pick(kStates);
    f.law_state = rng.pick(kStates);
    if (index == 0) {
        f.trust = "BNY Mellon Funds Trust";
        f.custodian = "The Bank of New York Mellon";
        f.funds = {"BNY Mellon International Equity Income Fund", "BNY Mellon Emerging Markets Fund",
                   "BNY Mellon Municipal Opportunities Fund"};
        for (const auto& n : f.funds) taken.push_back(n);
        taken.push_back(f.trust);
        return f;
    }
    f.custodian = rng.pick(kCustodians);
    for (int attempt = 0;; ++attempt) {
        if (attempt > 10000) throw Error("E_INTERNAL", "could not find distinct party names");
        std::string brand = rng.pick(kBrandHeads) + rng.pick(kBrandTails);
        std::string trust = brand + " " + rng.pick(kTrustSuffixes);
        if (!distinct_enough(trust, taken)) continue;
        std::vector<std::string> funds;
        int n = static_cast<int>(rng.uniform(2, 4));
        std::vector<std::string> local = taken;
        local.push_back(trust);
        for (int tries = 0; tries < 200 && static_cast<int>(funds.size()) < n; ++tries) {
            std::string fund = brand + " " + rng.pick(kFundAdjectives) + " " + rng.pick(kFundClasses) + " Fund";
            if (!distinct_enough(fund, local)) continue;
            funds.push_back(fund);
            local.push_back(fund);
        }
        if (static_cast<int>(funds.size()) < n) continue;
        f.trust = trust;
        f.funds = funds;
        taken = local;
        return f;
    }
}

}  // namespace

SynthCorpus generate_corpus(const SynthOptions& options) {
    if (options.n_families < 1) throw Error("E_USAGE", "n_families must be >= 1");
    SeededRng rng(options.seed);
    SynthCorpus out;
    out.manifest.seed = options.seed;
    std::vector<std::string> taken(kCustodians.begin(), kCustodians.end());
    std::vector<BuiltContract> built;
    std::set<std::string> custodians_used;

    for (size_t fi = 0; fi < options.n_families; ++fi) {
        if (options.target_contracts && built.size() >= *options.target_contracts) break;
        Family f = make_family(static_cast<int>(fi), options, taken, rng);
        CalendarDate master_eff = from_day_number(day_number(make_date(1, 1, 1995)) + rng.uniform(0, 365 * 17));
        int n_amend = fi == 0 ? 5 : static_cast<int>(rng.uniform(0, 5));
        if (options.target_contracts) {
            long room = static_cast<long>(*options.target_contracts) - static_cast<long>(built.size()) - 1;
            n_amend = static_cast<int>(std::min<long>(n_amend, std::max<long>(room, 0)));
        }

        ManifestFamily mf;
        mf.trust = f.trust;
        mf.custodian = f.custodian;
        mf.funds = f.funds;
        custodians_used.insert(f.custodian);

        auto master = build_master(f, master_eff, rng);
        mf.master_id = master.manifest.contract_id;
        built.push_back(std::move(master));
        CalendarDate eff = master_eff;
        for (int k = 1; k <= n_amend; ++k) {
            eff = from_day_number(day_number(eff) + rng.uniform(60, 800));
            auto a = build_amendment(f, k, master_eff, eff, fi == 0, rng);
            mf.amendment_ids.push_back(a.manifest.contract_id);
            built.push_back(std::move(a));
        }
        out.manifest.families.push_back(std::move(mf));
    }

    for (auto& b : built) {
        ManifestContract& m = b.manifest;
        const auto& fam = out.manifest.families[static_cast<size_t>(std::stoi(m.contract_id.substr(1, 4)))];
        int cik = 1000000 + std::stoi(m.contract_id.substr(1, 4)) * 7;
        m.accession_no = accession(cik, m.dated.year, rng);
        m.text_digest = hex64(fnv1a64(b.text));
        ContractDoc& d = b.doc;
        d.contract_id = m.contract_id;
        d.accession_no = m.accession_no;
        d.source_uri = "synthetic://seed" + std::to_string(options.seed) + "/" + m.contract_id;
        long filed = std::min(day_number(m.dated) + rng.uniform(5, 40), day_number(make_date(31, 12, 2100)));
        d.filed_date = from_day_number(filed);
        d.metadata_parties = {fam.trust, fam.custodian};
        out.docs.push_back(std::move(d));
        out.expected_texts.push_back(std::move(b.text));
        out.manifest.contracts.push_back(std::move(m));
    }

    std::set<std::string> seen;
    for (const auto& fam : out.manifest.families) {
        if (seen.insert(fam.trust).second) out.manifest.registry.push_back({fam.trust, PartyRole::trust});
        for (const auto& fund : fam.funds) {
            if (seen.insert(fund).second) out.manifest.registry.push_back({fund, PartyRole::fund});
        }
    }
    for (const auto& c : kCustodians) {
        if (custodians_used.count(c) && seen.insert(c).second) out.manifest.registry.push_back({c, PartyRole::custodian});
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

nlohmann::json date_json(const std::optional<CalendarDate>& d) {
    return d ? nlohmann::json(to_string(*d)) : nlohmann::json(nullptr);
}

CalendarDate parse_date_json(const nlohmann::json& j) {
    auto d = parse_canonical(j.get<std::string>());
    if (!d) throw Error("E_IO", "bad date in manifest: " + j.get<std::string>());
    return *d;
}

}  // namespace

void to_json(nlohmann::json& j, const CorpusManifest& m) {
    j = nlohmann::json::object();
    j["seed"] = m.seed;
    auto& fams = j["families"] = nlohmann::json::array();
    for (const auto& f : m.families) {
        fams.push_back({{"master_id", f.master_id},
                        {"amendment_ids", f.amendment_ids},
                        {"trust", f.trust},
                        {"custodian", f.custodian},
                        {"funds", f.funds}});
    }
    auto& cs = j["contracts"] = nlohmann::json::array();
    for (const auto& c : m.contracts) {
        nlohmann::json cj;
        cj["contract_id"] = c.contract_id;
        cj["accession_no"] = c.accession_no;
        cj["family_master"] = c.family_master;
        cj["is_master"] = c.is_master;
        cj["amendment_no"] = c.amendment_no;
        cj["effective_date"] = to_string(c.effective);
        cj["master_date"] = to_string(c.master);
        cj["dated_date"] = to_string(c.dated);
        cj["parties"] = c.parties;
        cj["duration"] = c.duration ? nlohmann::json{{"count", c.duration->count}, {"unit", to_string(c.duration->unit)}}
                                    : nlohmann::json(nullptr);
        cj["termination_basis"] = c.termination_basis;
        cj["termination_date"] = date_json(c.termination);
        cj["style"] = to_string(c.style);
        auto& secs = cj["sections"] = nlohmann::json::array();
        for (const auto& s : c.sections) secs.push_back({{"heading", s.heading}, {"label", s.label}});
        cj["text_digest"] = c.text_digest;
        cs.push_back(std::move(cj));
    }
    j["registry"] = m.registry;
}

void from_json(const nlohmann::json& j, CorpusManifest& m) {
    m = CorpusManifest{};
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& f : j.at("families")) {
        m.families.push_back({f.at("master_id"), f.at("amendment_ids").get<std::vector<std::string>>(), f.at("trust"),
                              f.at("custodian"), f.at("funds").get<std::vector<std::string>>()});
    }
    for (const auto& cj : j.at("contracts")) {
        ManifestContract c;
        c.contract_id = cj.at("contract_id");
        c.accession_no = cj.at("accession_no");
        c.family_master = cj.at("family_master");
        c.is_master = cj.at("is_master");
        c.amendment_no = cj.at("amendment_no");
        c.effective = parse_date_json(cj.at("effective_date"));
        c.master = parse_date_json(cj.at("master_date"));
        c.dated = parse_date_json(cj.at("dated_date"));
        c.parties = cj.at("parties").get<std::vector<RegistryEntry>>();
        if (!cj.at("duration").is_null()) {
            auto unit = parse_unit(cj.at("duration").at("unit").get<std::string>());
            if (!unit) throw Error("E_IO", "bad duration unit in manifest");
            c.duration = Duration{cj.at("duration").at("count").get<int>(), *unit};
        }
        c.termination_basis = cj.at("termination_basis");
        if (!cj.at("termination_date").is_null()) c.termination = parse_date_json(cj.at("termination_date"));
        c.style = parse_heading_style(cj.at("style").get<std::string>());
        for (const auto& s : cj.at("sections")) c.sections.push_back({s.at("heading"), s.at("label")});
        c.text_digest = cj.at("text_digest");
        m.contracts.push_back(std::move(c));
    }
    std::sort(m.contracts.begin(), m.contracts.end(),
              [](const ManifestContract& a, const ManifestContract& b) { return a.contract_id < b.contract_id; });
    m.registry = j.at("registry").get<std::vector<RegistryEntry>>();
}

void save_synth_corpus(const std::filesystem::path& root, const SynthCorpus& corpus) {
    std::filesystem::create_directories(root);
    for (const auto& doc : corpus.docs) store::save_contract(root, doc);
    store::save_registry(root, corpus.manifest.registry);
    store::write_file_atomic(root / "manifest.json", nlohmann::json(corpus.manifest).dump(1) + "\n");
}

CorpusManifest load_manifest(const std::filesystem::path& root) {
    try {
        return nlohmann::json::parse(store::read_file(root / "manifest.json")).get<CorpusManifest>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("E_IO", std::string("manifest: ") + e.what(), (root / "manifest.json").string());
    }
}

}  // namespace law
