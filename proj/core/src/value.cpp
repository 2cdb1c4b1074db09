#include "mole/value.hpp"

#include "mole/text.hpp"

namespace mole {

std::size_t AnswerValue::length() const {
    switch (tag_) {
    case AnswerTag::TextList:
        return items().size();
    case AnswerTag::KeyedRecordList:
        return records().size();
    case AnswerTag::Text:
    case AnswerTag::Url:
        return word_count(as_text());
    case AnswerTag::Year:
    case AnswerTag::Number:
    case AnswerTag::Flag:
        return 1;
    }
    return 0;
}

nlohmann::ordered_json to_json(const RecordScalar& s) {
    if (std::holds_alternative<std::string>(s)) return std::get<std::string>(s);
    if (std::holds_alternative<double>(s)) return std::get<double>(s);
    return std::get<bool>(s);
}

nlohmann::ordered_json to_json(const AnswerValue& v) {
    switch (v.tag()) {
    case AnswerTag::Text:
    case AnswerTag::Url:
        return v.as_text();
    case AnswerTag::Year:
        return v.as_year();
    case AnswerTag::Number:
        return v.as_number();
    case AnswerTag::Flag:
        return v.as_flag();
    case AnswerTag::TextList:
        return nlohmann::ordered_json(v.items());
    case AnswerTag::KeyedRecordList: {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& record : v.records()) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (const auto& [key, scalar] : record) obj[key] = to_json(scalar);
            out.push_back(std::move(obj));
        }
        return out;
    }
    }
    return nullptr;
}

const AnswerValue* MetadataRecord::find(std::string_view name) const {
    for (const auto& [attr, value] : values) {
        if (attr == name) return &value;
    }
    return nullptr;
}

AnswerValue* MetadataRecord::find(std::string_view name) {
    for (auto& [attr, value] : values) {
        if (attr == name) return &value;
    }
    return nullptr;
}

nlohmann::ordered_json record_to_json(const MetadataRecord& record) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [name, value] : record.values) out[name] = to_json(value);
    return out;
}

} // namespace mole
