#include "mole/types.hpp"

namespace mole {

std::string to_string(Category c) {
    switch (c) {
    case Category::ar: return "ar";
    case Category::en: return "en";
    case Category::fr: return "fr";
    case Category::jp: return "jp";
    case Category::ru: return "ru";
    case Category::multi: return "multi";
    }
    return "ar";
}

std::optional<Category> parse_category(std::string_view s) {
    if (s == "ar") return Category::ar;
    if (s == "en") return Category::en;
    if (s == "fr") return Category::fr;
    if (s == "jp") return Category::jp;
    if (s == "ru") return Category::ru;
    if (s == "multi") return Category::multi;
    return std::nullopt;
}

std::string to_string(ValidationGroup g) {
    switch (g) {
    case ValidationGroup::Diversity: return "DIVERSITY";
    case ValidationGroup::Accessibility: return "ACCESSIBILITY";
    case ValidationGroup::Content: return "CONTENT";
    case ValidationGroup::Evaluation: return "EVALUATION";
    }
    return "CONTENT";
}

std::optional<ValidationGroup> parse_validation_group(std::string_view s) {
    if (s == "DIVERSITY") return ValidationGroup::Diversity;
    if (s == "ACCESSIBILITY") return ValidationGroup::Accessibility;
    if (s == "CONTENT") return ValidationGroup::Content;
    if (s == "EVALUATION") return ValidationGroup::Evaluation;
    return std::nullopt;
}

std::string to_string(AnswerTag t) {
    switch (t) {
    case AnswerTag::Text: return "Text";
    case AnswerTag::Url: return "Url";
    case AnswerTag::Year: return "Year";
    case AnswerTag::TextList: return "TextList";
    case AnswerTag::Number: return "Number";
    case AnswerTag::Flag: return "Flag";
    case AnswerTag::KeyedRecordList: return "KeyedRecordList";
    }
    return "Text";
}

} // namespace mole
