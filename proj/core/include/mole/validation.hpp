#pragma once

#include "mole/schema.hpp"
#include "mole/value.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mole {

enum class ValidationAction { cast, option_matched, defaulted, length_violation, key_dropped };

std::string to_string(ValidationAction a);

struct ValidationEntry {
    std::string attribute;
    ValidationAction action;
    std::string detail;
};

/// Audit trail of corrective actions and length observations, one entry per
/// action, in attribute order.
struct ValidationLog {
    std::vector<ValidationEntry> entries;

    void add(std::string attribute, ValidationAction action, std::string detail) {
        entries.push_back({std::move(attribute), action, std::move(detail)});
    }

    /// True when any entry changed a value (everything but
    /// length_violation, which only observes).
    bool has_corrective() const;

    std::size_t count(ValidationAction action) const;
};

nlohmann::ordered_json log_to_json(const ValidationLog& log);

/// Coerces a raw JSON value to the spec's answer type. Casts where stated
/// (numeric text <-> number, 4-digit year, scalar <-> singleton list,
/// "true"/"false" text -> bool); anything impossible becomes the default
/// with a logged action.
std::pair<AnswerValue, std::vector<ValidationEntry>> coerce_type(
    const nlohmann::ordered_json& raw, const AttributeSpec& spec);

/// Nearest option by similarity 1 - normalized_edit_distance over
/// case-folded text; exact (trimmed, folded) matches return the canonical
/// option. Ties break in option file order. `changed` reports v != chosen.
struct OptionMatch {
    std::string option;
    bool changed = false;
};
OptionMatch match_option(std::string_view value, const AttributeSpec& spec);

/// Validates a parsed JSON object against the schema: missing attributes
/// default, values are coerced, option values snap to the nearest option,
/// lengths outside [answer_min, answer_max] are logged (never truncated),
/// and keys absent from the schema are dropped. Total: any input yields a
/// schema-complete record.
std::pair<MetadataRecord, ValidationLog> validate_record(
    const nlohmann::ordered_json& raw, const Schema& schema);

} // namespace mole
