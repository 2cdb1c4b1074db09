#pragma once

#include "mole/types.hpp"
#include "mole/value.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mole {

/// Answer type of one attribute. Maps one-to-one onto the schema-file
/// literals: "str", "url", "date[year]", "List[str]", "float", "bool" and
/// "List[Dict[K1, K2, ...]]" (any non-empty, duplicate-free key list).
struct AnswerType {
    AnswerTag tag = AnswerTag::Text;
    std::vector<std::string> key_names; // KeyedRecordList only

    /// Throws SchemaError on an unknown literal.
    static AnswerType parse(std::string_view literal);

    std::string to_literal() const;

    bool is_list() const {
        return tag == AnswerTag::TextList || tag == AnswerTag::KeyedRecordList;
    }

    bool operator==(const AnswerType&) const = default;
};

/// Declarative description of one metadata attribute.
struct AttributeSpec {
    std::string name;
    std::string question;
    /// Option literals in file order. Flag options are stored as the
    /// strings "true"/"false" and serialized back as JSON booleans.
    std::optional<std::vector<std::string>> options;
    /// option -> explanation, in file order.
    std::vector<std::pair<std::string, std::string>> option_descriptions;
    AnswerType answer_type;
    std::optional<ValidationGroup> validation_group;
    int answer_min = 0;
    std::optional<int> answer_max;

    /// answer_min == 0 marks the attribute optional.
    bool is_optional() const { return answer_min == 0; }

    bool has_options() const { return options.has_value() && !options->empty(); }

    bool operator==(const AttributeSpec&) const = default;
};

/// A category's full attribute set, in file order.
struct Schema {
    Category category = Category::ar;
    std::vector<AttributeSpec> attributes;
    /// Raw schema-file text when parsed from a file; empty for schemas
    /// built programmatically. Prompts embed this text unmodified so the
    /// model sees questions and options exactly as authored.
    std::string source_text;

    const AttributeSpec* find(std::string_view name) const;
    bool has(std::string_view name) const { return find(name) != nullptr; }

    /// Text to embed in prompts: the raw file text when available,
    /// otherwise the canonical serialization.
    std::string prompt_text() const;

    bool operator==(const Schema& other) const {
        return category == other.category && attributes == other.attributes;
    }
};

/// Parses a schema file (JSON object of attribute objects). Preserves file
/// order, rejects unknown per-attribute keys, and reports violated
/// invariants naming the offending attribute.
Schema parse_schema(std::string_view raw_text, Category category = Category::ar);

/// Canonical schema-file serialization (4-space indent, file order).
std::string serialize_schema(const Schema& schema);

struct SchemaViolation {
    std::string attribute;
    std::string rule;   // stable id, e.g. "min>max"
    std::string detail;
};

/// Structural checks over an already-parsed schema. Violations are data,
/// not errors; an empty result means every invariant holds.
std::vector<SchemaViolation> validate_schema(const Schema& schema);

/// Fallback value used when an answer is missing or cannot be coerced:
/// empty text, year 0, 0.0, false, or an empty list.
AnswerValue default_answer(const AttributeSpec& spec);

/// A Low/Mid/High tightening of answer bounds for selected attributes.
struct LengthProfile {
    enum class Level { Low, Mid, High };

    struct Bounds {
        int answer_min = 0;
        std::optional<int> answer_max;
        bool operator==(const Bounds&) const = default;
    };

    Level level = Level::Low;
    std::vector<std::pair<std::string, Bounds>> overrides;

    bool operator==(const LengthProfile&) const = default;
};

std::string to_string(LengthProfile::Level level);
std::optional<LengthProfile::Level> parse_profile_level(std::string_view s);

/// Built-in profiles. Low is empty (identity); Mid and High tighten
/// Name, Description, Provider, Derived From and Tasks.
LengthProfile builtin_profile(LengthProfile::Level level);

/// Parses a profile file: {"level": "mid", "overrides": {attr: {answer_min,
/// answer_max?}}}.
LengthProfile parse_length_profile(std::string_view raw_text);

/// Copy of the schema with answer bounds replaced per the profile's
/// overrides. Throws SchemaError when an override names an absent
/// attribute.
Schema apply_length_profile(const Schema& schema, const LengthProfile& profile);

} // namespace mole
