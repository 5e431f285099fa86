#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "law/calendar.hpp"

namespace law::plan {

/// Semantic types of the plan language.
struct Type {
    enum class Kind { any, str, integer, boolean, date, contract, section, text, list, pair };
    Kind kind = Kind::any;
    std::vector<Type> args;  // list: 1, pair: 2

    static Type str() { return {Kind::str, {}}; }
    static Type integer() { return {Kind::integer, {}}; }
    static Type boolean() { return {Kind::boolean, {}}; }
    static Type date() { return {Kind::date, {}}; }
    static Type contract() { return {Kind::contract, {}}; }
    static Type section() { return {Kind::section, {}}; }
    static Type text() { return {Kind::text, {}}; }
    static Type any() { return {Kind::any, {}}; }
    static Type list(Type t) { return {Kind::list, {std::move(t)}}; }
    static Type pair(Type a, Type b) { return {Kind::pair, {std::move(a), std::move(b)}}; }

    bool operator==(const Type&) const = default;
};

std::string to_string(const Type& t);
/// Parses "List<Pair<Contract,Date>>" and friends; throws E_PARSE.
Type parse_type(std::string_view text);
/// True when a value of type `actual` may be passed where `expected` is
/// declared. Str and Text are interchangeable; Any unifies with everything.
bool assignable(const Type& actual, const Type& expected);

struct SectionValue {
    std::string contract_id;
    int ordinal = 0;
    std::string heading;
    std::string label;
    std::string text;
    std::optional<CalendarDate> effective;
    bool operator==(const SectionValue&) const = default;
};

/// Runtime value. Strings carry Str and Text; `null` stands for an absent
/// date (evergreen termination, unknown master date).
struct Value {
    enum class Kind { null, str, integer, boolean, date, contract, section, list, pair };
    Kind kind = Kind::null;
    std::string str;  // str / contract id
    long integer = 0;
    bool boolean = false;
    CalendarDate date{};
    SectionValue section;
    std::vector<Value> items;  // list elements or the two pair members

    static Value null() { return {}; }
    static Value of_str(std::string s);
    static Value of_int(long i);
    static Value of_bool(bool b);
    static Value of_date(const CalendarDate& d);
    static Value of_optional_date(const std::optional<CalendarDate>& d);
    static Value of_contract(std::string id);
    static Value of_section(SectionValue s);
    static Value of_list(std::vector<Value> items);
    static Value of_pair(Value a, Value b);

    bool empty() const;
    bool operator==(const Value&) const = default;
};

std::string_view to_string(Value::Kind kind);
nlohmann::json to_json_value(const Value& v);

}  // namespace law::plan
