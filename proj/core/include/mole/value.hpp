#pragma once

#include "mole/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mole {

/// Scalar inside a keyed record (one cell of a List[Dict[...]] answer).
using RecordScalar = std::variant<std::string, double, bool>;

/// One entry of a KeyedRecordList answer; field order follows the key
/// order declared by the answer type.
using KeyedRecord = std::vector<std::pair<std::string, RecordScalar>>;

/// A fully typed answer for one attribute. The tag always agrees with the
/// owning attribute's answer type after validation.
class AnswerValue {
public:
    using Storage = std::variant<std::string,              // Text, Url
                                 std::int64_t,             // Year
                                 double,                   // Number
                                 bool,                     // Flag
                                 std::vector<std::string>, // TextList
                                 std::vector<KeyedRecord>>; // KeyedRecordList

    AnswerValue() : tag_(AnswerTag::Text), value_(std::string()) {}
    AnswerValue(AnswerTag tag, Storage value) : tag_(tag), value_(std::move(value)) {}

    static AnswerValue text(std::string v) { return {AnswerTag::Text, std::move(v)}; }
    static AnswerValue url(std::string v) { return {AnswerTag::Url, std::move(v)}; }
    static AnswerValue year(std::int64_t v) { return {AnswerTag::Year, v}; }
    static AnswerValue number(double v) { return {AnswerTag::Number, v}; }
    static AnswerValue flag(bool v) { return {AnswerTag::Flag, v}; }
    static AnswerValue text_list(std::vector<std::string> v) {
        return {AnswerTag::TextList, std::move(v)};
    }
    static AnswerValue keyed_records(std::vector<KeyedRecord> v) {
        return {AnswerTag::KeyedRecordList, std::move(v)};
    }

    AnswerTag tag() const { return tag_; }

    const std::string& as_text() const { return std::get<std::string>(value_); }
    std::int64_t as_year() const { return std::get<std::int64_t>(value_); }
    double as_number() const { return std::get<double>(value_); }
    bool as_flag() const { return std::get<bool>(value_); }
    const std::vector<std::string>& items() const {
        return std::get<std::vector<std::string>>(value_);
    }
    std::vector<std::string>& items() { return std::get<std::vector<std::string>>(value_); }
    const std::vector<KeyedRecord>& records() const {
        return std::get<std::vector<KeyedRecord>>(value_);
    }
    std::vector<KeyedRecord>& records() { return std::get<std::vector<KeyedRecord>>(value_); }

    /// Answer length as used by length validation and adherence: item count
    /// for list shapes, whitespace word count for text, 1 for the scalar
    /// numeric and boolean shapes.
    std::size_t length() const;

    bool operator==(const AnswerValue&) const = default;

private:
    AnswerTag tag_;
    Storage value_;
};

nlohmann::ordered_json to_json(const AnswerValue& v);

nlohmann::ordered_json to_json(const RecordScalar& s);

/// A validated answer per schema attribute, in schema order.
struct MetadataRecord {
    Category schema_category = Category::ar;
    std::vector<std::pair<std::string, AnswerValue>> values;

    const AnswerValue* find(std::string_view name) const;
    AnswerValue* find(std::string_view name);

    bool operator==(const MetadataRecord&) const = default;
};

/// Flat JSON object attribute -> value, attribute order = schema order.
nlohmann::ordered_json record_to_json(const MetadataRecord& record);

} // namespace mole
