#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace mole {

/// Language category a schema (and its annotated papers) belongs to.
enum class Category { ar, en, fr, jp, ru, multi };

std::string to_string(Category c);
std::optional<Category> parse_category(std::string_view s);

/// Attribute clusters used for scored aggregation. Attributes without a
/// group form the unscored "general" set.
enum class ValidationGroup { Diversity, Accessibility, Content, Evaluation };

std::string to_string(ValidationGroup g);
std::optional<ValidationGroup> parse_validation_group(std::string_view s);

/// The seven value shapes an attribute answer can take.
enum class AnswerTag { Text, Url, Year, TextList, Number, Flag, KeyedRecordList };

std::string to_string(AnswerTag t);

} // namespace mole
