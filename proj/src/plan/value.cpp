#include "law/plan/value.hpp"

#include "law/error.hpp"
#include "law/text_util.hpp"

namespace law::plan {

std::string to_string(const Type& t) {
    switch (t.kind) {
        case Type::Kind::any: return "Any";
        case Type::Kind::str: return "Str";
        case Type::Kind::integer: return "Int";
        case Type::Kind::boolean: return "Bool";
        case Type::Kind::date: return "Date";
        case Type::Kind::contract: return "Contract";
        case Type::Kind::section: return "Section";
        case Type::Kind::text: return "Text";
        case Type::Kind::list: return "List<" + to_string(t.args.at(0)) + ">";
        case Type::Kind::pair: return "Pair<" + to_string(t.args.at(0)) + "," + to_string(t.args.at(1)) + ">";
    }
    return "Any";
}

namespace {

struct TypeParser {
    std::string_view s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && s[i] == ' ') ++i;
    }
    void expect(char c) {
        skip();
        if (i >= s.size() || s[i] != c) throw Error("E_PARSE", std::string("expected '") + c + "' in type", std::string(s));
        ++i;
    }
    Type parse() {
        skip();
        size_t start = i;
        while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
        std::string_view name = s.substr(start, i - start);
        if (name == "Any") return Type::any();
        if (name == "Str") return Type::str();
        if (name == "Int") return Type::integer();
        if (name == "Bool") return Type::boolean();
        if (name == "Date") return Type::date();
        if (name == "Contract") return Type::contract();
        if (name == "Section") return Type::section();
        if (name == "Text") return Type::text();
        if (name == "List") {
            expect('<');
            Type e = parse();
            expect('>');
            return Type::list(e);
        }
        if (name == "Pair") {
            expect('<');
            Type a = parse();
            expect(',');
            Type b = parse();
            expect('>');
            return Type::pair(a, b);
        }
        throw Error("E_PARSE", "unknown type " + std::string(name), std::string(s));
    }
};

bool stringy(Type::Kind k) { return k == Type::Kind::str || k == Type::Kind::text; }

}  // namespace

Type parse_type(std::string_view text) {
    TypeParser p{text};
    Type t = p.parse();
    p.skip();
    if (p.i != text.size()) throw Error("E_PARSE", "trailing text in type", std::string(text));
    return t;
}

bool assignable(const Type& actual, const Type& expected) {
    if (actual.kind == Type::Kind::any || expected.kind == Type::Kind::any) return true;
    if (stringy(actual.kind) && stringy(expected.kind)) return true;
    if (actual.kind != expected.kind) return false;
    for (size_t i = 0; i < actual.args.size(); ++i) {
        if (!assignable(actual.args[i], expected.args[i])) return false;
    }
    return true;
}

Value Value::of_str(std::string s) {
    Value v;
    v.kind = Kind::str;
    v.str = std::move(s);
    return v;
}

Value Value::of_int(long i) {
    Value v;
    v.kind = Kind::integer;
    v.integer = i;
    return v;
}

Value Value::of_bool(bool b) {
    Value v;
    v.kind = Kind::boolean;
    v.boolean = b;
    return v;
}

Value Value::of_date(const CalendarDate& d) {
    Value v;
    v.kind = Kind::date;
    v.date = d;
    return v;
}

Value Value::of_optional_date(const std::optional<CalendarDate>& d) { return d ? of_date(*d) : null(); }

Value Value::of_contract(std::string id) {
    Value v;
    v.kind = Kind::contract;
    v.str = std::move(id);
    return v;
}

Value Value::of_section(SectionValue s) {
    Value v;
    v.kind = Kind::section;
    v.section = std::move(s);
    return v;
}

Value Value::of_list(std::vector<Value> items) {
    Value v;
    v.kind = Kind::list;
    v.items = std::move(items);
    return v;
}

Value Value::of_pair(Value a, Value b) {
    Value v;
    v.kind = Kind::pair;
    v.items = {std::move(a), std::move(b)};
    return v;
}

bool Value::empty() const {
    switch (kind) {
        case Kind::null: return true;
        case Kind::str: return trim(str).empty();
        case Kind::list: return items.empty();
        case Kind::section: return trim(section.text).empty();
        default: return false;
    }
}

std::string_view to_string(Value::Kind kind) {
    switch (kind) {
        case Value::Kind::null: return "null";
        case Value::Kind::str: return "str";
        case Value::Kind::integer: return "int";
        case Value::Kind::boolean: return "bool";
        case Value::Kind::date: return "date";
        case Value::Kind::contract: return "contract";
        case Value::Kind::section: return "section";
        case Value::Kind::list: return "list";
        case Value::Kind::pair: return "pair";
    }
    return "null";
}

nlohmann::json to_json_value(const Value& v) {
    using nlohmann::json;
    switch (v.kind) {
        case Value::Kind::null: return nullptr;
        case Value::Kind::str: return v.str;
        case Value::Kind::integer: return v.integer;
        case Value::Kind::boolean: return v.boolean;
        case Value::Kind::date: return to_string(v.date);
        case Value::Kind::contract: return json{{"contract_id", v.str}};
        case Value::Kind::section: {
            json j = {{"contract_id", v.section.contract_id},
                      {"ordinal", v.section.ordinal},
                      {"heading", v.section.heading},
                      {"label", v.section.label},
                      {"text", v.section.text}};
            j["effective_date"] = v.section.effective ? json(to_string(*v.section.effective)) : json(nullptr);
            return j;
        }
        case Value::Kind::list: {
            json a = json::array();
            for (const auto& x : v.items) a.push_back(to_json_value(x));
            return a;
        }
        case Value::Kind::pair: return json::array({to_json_value(v.items[0]), to_json_value(v.items[1])});
    }
    return nullptr;
}

}  // namespace law::plan
