#include "mole/schema.hpp"

#include "mole/errors.hpp"
#include "mole/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace mole {

using ordered_json = nlohmann::ordered_json;

AnswerType AnswerType::parse(std::string_view literal) {
    if (literal == "str") return {AnswerTag::Text, {}};
    if (literal == "url") return {AnswerTag::Url, {}};
    if (literal == "date[year]") return {AnswerTag::Year, {}};
    if (literal == "List[str]") return {AnswerTag::TextList, {}};
    if (literal == "float") return {AnswerTag::Number, {}};
    if (literal == "bool") return {AnswerTag::Flag, {}};

    // List[Dict[K1, K2, ...]] with any key list inside the inner brackets.
    constexpr std::string_view prefix = "List[Dict[";
    if (starts_with(literal, prefix) && literal.size() >= prefix.size() + 2 &&
        literal.substr(literal.size() - 2) == "]]") {
        std::string_view inner =
            literal.substr(prefix.size(), literal.size() - prefix.size() - 2);
        std::vector<std::string> keys;
        std::size_t pos = 0;
        while (pos <= inner.size()) {
            std::size_t comma = inner.find(',', pos);
            std::string_view piece =
                (comma == std::string_view::npos) ? inner.substr(pos)
                                                  : inner.substr(pos, comma - pos);
            std::string key = trim(piece);
            if (!key.empty()) keys.push_back(std::move(key));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (!keys.empty()) return {AnswerTag::KeyedRecordList, std::move(keys)};
    }

    throw SchemaError("", "unknown answer_type literal '" + std::string(literal) + "'");
}

std::string AnswerType::to_literal() const {
    switch (tag) {
    case AnswerTag::Text: return "str";
    case AnswerTag::Url: return "url";
    case AnswerTag::Year: return "date[year]";
    case AnswerTag::TextList: return "List[str]";
    case AnswerTag::Number: return "float";
    case AnswerTag::Flag: return "bool";
    case AnswerTag::KeyedRecordList: {
        std::string out = "List[Dict[";
        for (std::size_t i = 0; i < key_names.size(); ++i) {
            if (i) out += ", ";
            out += key_names[i];
        }
        out += "]]";
        return out;
    }
    }
    return "str";
}

const AttributeSpec* Schema::find(std::string_view name) const {
    for (const auto& attr : attributes) {
        if (attr.name == name) return &attr;
    }
    return nullptr;
}

std::string Schema::prompt_text() const {
    return source_text.empty() ? serialize_schema(*this) : source_text;
}

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "question", "options", "option_description", "answer_type",
    "validation_group", "answer_min", "answer_max"};

int require_int(const ordered_json& v, const std::string& attr, const char* key) {
    if (!v.is_number_integer())
        throw SchemaError(attr, std::string(key) + " must be an integer");
    return v.get<int>();
}

AttributeSpec parse_attribute(const std::string& name, const ordered_json& body) {
    if (!body.is_object())
        throw SchemaError(name, "attribute body must be a JSON object");

    for (const auto& [key, _] : body.items()) {
        if (kKnownKeys.find(key) == kKnownKeys.end())
            throw SchemaError(name, "unknown schema key '" + key + "'");
    }

    AttributeSpec spec;
    spec.name = name;

    if (!body.contains("question") || !body["question"].is_string())
        throw SchemaError(name, "missing or non-string question");
    spec.question = body["question"].get<std::string>();
    if (spec.question.empty()) throw SchemaError(name, "question is empty");

    if (!body.contains("answer_type") || !body["answer_type"].is_string())
        throw SchemaError(name, "missing or non-string answer_type");
    try {
        spec.answer_type = AnswerType::parse(body["answer_type"].get<std::string>());
    } catch (const SchemaError& e) {
        throw SchemaError(name, e.what());
    }

    if (body.contains("options")) {
        const auto& opts = body["options"];
        if (!opts.is_array()) throw SchemaError(name, "options must be an array");
        std::vector<std::string> literals;
        for (const auto& opt : opts) {
            if (opt.is_string()) {
                literals.push_back(opt.get<std::string>());
            } else if (opt.is_boolean()) {
                literals.push_back(opt.get<bool>() ? "true" : "false");
            } else {
                throw SchemaError(name, "option literals must be strings or booleans");
            }
        }
        spec.options = std::move(literals);
    }

    if (body.contains("option_description")) {
        const auto& descriptions = body["option_description"];
        if (!descriptions.is_object())
            throw SchemaError(name, "option_description must be an object");
        for (const auto& [opt, text] : descriptions.items()) {
            if (!text.is_string())
                throw SchemaError(name, "option_description values must be strings");
            spec.option_descriptions.emplace_back(opt, text.get<std::string>());
        }
    }

    if (body.contains("validation_group")) {
        const auto& group = body["validation_group"];
        if (!group.is_string())
            throw SchemaError(name, "validation_group must be a string");
        auto parsed = parse_validation_group(group.get<std::string>());
        if (!parsed)
            throw SchemaError(name, "unknown validation_group '" +
                                        group.get<std::string>() + "'");
        spec.validation_group = *parsed;
    }

    if (!body.contains("answer_min"))
        throw SchemaError(name, "missing answer_min");
    spec.answer_min = require_int(body["answer_min"], name, "answer_min");
    if (spec.answer_min < 0) throw SchemaError(name, "answer_min must be >= 0");

    if (body.contains("answer_max")) {
        int max = require_int(body["answer_max"], name, "answer_max");
        if (max < 1) throw SchemaError(name, "answer_max must be >= 1");
        spec.answer_max = max;
    }

    if (spec.answer_max && spec.answer_min > *spec.answer_max)
        throw SchemaError(name, "answer_min > answer_max");

    for (const auto& [opt, _] : spec.option_descriptions) {
        const auto& opts = spec.options;
        if (!opts || std::find(opts->begin(), opts->end(), opt) == opts->end())
            throw SchemaError(name, "option_description key '" + opt +
                                        "' is not an option");
    }

    if (spec.answer_type.tag == AnswerTag::KeyedRecordList) {
        std::set<std::string> seen;
        for (const auto& key : spec.answer_type.key_names) {
            if (!seen.insert(key).second)
                throw SchemaError(name, "duplicate key '" + key +
                                            "' in answer_type key list");
        }
    }

    return spec;
}

} // namespace

Schema parse_schema(std::string_view raw_text, Category category) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(raw_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", std::string("malformed schema JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw SchemaError("", "schema file must be a JSON object of objects");

    Schema schema;
    schema.category = category;
    schema.source_text = std::string(raw_text);
    for (const auto& [name, body] : doc.items()) {
        if (schema.has(name))
            throw SchemaError(name, "duplicate attribute name");
        schema.attributes.push_back(parse_attribute(name, body));
    }
    return schema;
}

std::string serialize_schema(const Schema& schema) {
    ordered_json doc = ordered_json::object();
    for (const auto& spec : schema.attributes) {
        ordered_json body = ordered_json::object();
        body["question"] = spec.question;
        if (spec.options) {
            ordered_json opts = ordered_json::array();
            for (const auto& literal : *spec.options) {
                if (spec.answer_type.tag == AnswerTag::Flag)
                    opts.push_back(literal == "true");
                else
                    opts.push_back(literal);
            }
            body["options"] = std::move(opts);
        }
        if (!spec.option_descriptions.empty()) {
            ordered_json descriptions = ordered_json::object();
            for (const auto& [opt, text] : spec.option_descriptions)
                descriptions[opt] = text;
            body["option_description"] = std::move(descriptions);
        }
        body["answer_type"] = spec.answer_type.to_literal();
        if (spec.validation_group)
            body["validation_group"] = to_string(*spec.validation_group);
        body["answer_min"] = spec.answer_min;
        if (spec.answer_max) body["answer_max"] = *spec.answer_max;
        doc[spec.name] = std::move(body);
    }
    return doc.dump(4);
}

std::vector<SchemaViolation> validate_schema(const Schema& schema) {
    std::vector<SchemaViolation> violations;
    std::set<std::string> names;
    for (const auto& spec : schema.attributes) {
        if (!names.insert(spec.name).second)
            violations.push_back({spec.name, "duplicate-name", "attribute name repeats"});
        if (spec.question.empty())
            violations.push_back({spec.name, "empty-question", "question is empty"});
        if (spec.answer_min < 0)
            violations.push_back({spec.name, "negative-min", "answer_min below zero"});
        if (spec.answer_max && spec.answer_min > *spec.answer_max)
            violations.push_back({spec.name, "min>max",
                                  "answer_min " + std::to_string(spec.answer_min) +
                                      " exceeds answer_max " +
                                      std::to_string(*spec.answer_max)});
        for (const auto& [opt, _] : spec.option_descriptions) {
            const auto& opts = spec.options;
            if (!opts || std::find(opts->begin(), opts->end(), opt) == opts->end())
                violations.push_back({spec.name, "description-without-option",
                                      "option_description key '" + opt +
                                          "' is not an option"});
        }
        if (spec.answer_type.tag == AnswerTag::KeyedRecordList) {
            if (spec.answer_type.key_names.empty())
                violations.push_back({spec.name, "empty-key-list",
                                      "List[Dict[...]] declares no keys"});
            std::set<std::string> keys;
            for (const auto& key : spec.answer_type.key_names) {
                if (!keys.insert(key).second)
                    violations.push_back({spec.name, "duplicate-record-key",
                                          "key '" + key + "' repeats"});
            }
        }
    }
    return violations;
}

AnswerValue default_answer(const AttributeSpec& spec) {
    switch (spec.answer_type.tag) {
    case AnswerTag::Text: return AnswerValue::text("");
    case AnswerTag::Url: return AnswerValue::url("");
    case AnswerTag::Year: return AnswerValue::year(0);
    case AnswerTag::Number: return AnswerValue::number(0.0);
    case AnswerTag::Flag: return AnswerValue::flag(false);
    case AnswerTag::TextList: return AnswerValue::text_list({});
    case AnswerTag::KeyedRecordList: return AnswerValue::keyed_records({});
    }
    return AnswerValue::text("");
}

std::string to_string(LengthProfile::Level level) {
    switch (level) {
    case LengthProfile::Level::Low: return "low";
    case LengthProfile::Level::Mid: return "mid";
    case LengthProfile::Level::High: return "high";
    }
    return "low";
}

std::optional<LengthProfile::Level> parse_profile_level(std::string_view s) {
    if (s == "low" || s == "Low") return LengthProfile::Level::Low;
    if (s == "mid" || s == "Mid") return LengthProfile::Level::Mid;
    if (s == "high" || s == "High") return LengthProfile::Level::High;
    return std::nullopt;
}

LengthProfile builtin_profile(LengthProfile::Level level) {
    LengthProfile profile;
    profile.level = level;
    if (level == LengthProfile::Level::Low) return profile;

    // Only Description's (50, 25, 12) progression is fixed; the remaining
    // bounds are shipped defaults that tighten monotonically and can be
    // edited in the profile files under data/profiles/.
    if (level == LengthProfile::Level::Mid) {
        profile.overrides = {
            {"Name", {1, 4}},
            {"Description", {0, 25}},
            {"Provider", {0, 5}},
            {"Derived From", {0, 10}},
            {"Tasks", {1, 3}},
        };
    } else {
        profile.overrides = {
            {"Name", {1, 3}},
            {"Description", {0, 12}},
            {"Provider", {0, 3}},
            {"Derived From", {0, 5}},
            {"Tasks", {1, 2}},
        };
    }
    return profile;
}

LengthProfile parse_length_profile(std::string_view raw_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(raw_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", std::string("malformed profile JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("level") || !doc["level"].is_string())
        throw SchemaError("", "profile file must carry a string 'level'");

    LengthProfile profile;
    auto level = parse_profile_level(doc["level"].get<std::string>());
    if (!level)
        throw SchemaError("", "unknown profile level '" +
                                  doc["level"].get<std::string>() + "'");
    profile.level = *level;

    if (doc.contains("overrides")) {
        if (!doc["overrides"].is_object())
            throw SchemaError("", "profile overrides must be an object");
        for (const auto& [attr, bounds] : doc["overrides"].items()) {
            if (!bounds.is_object() || !bounds.contains("answer_min"))
                throw SchemaError(attr, "override needs an answer_min");
            LengthProfile::Bounds b;
            b.answer_min = require_int(bounds["answer_min"], attr, "answer_min");
            if (bounds.contains("answer_max"))
                b.answer_max = require_int(bounds["answer_max"], attr, "answer_max");
            profile.overrides.emplace_back(attr, b);
        }
    }
    return profile;
}

Schema apply_length_profile(const Schema& schema, const LengthProfile& profile) {
    Schema out = schema;
    for (const auto& [name, bounds] : profile.overrides) {
        bool found = false;
        for (auto& spec : out.attributes) {
            if (spec.name == name) {
                spec.answer_min = bounds.answer_min;
                spec.answer_max = bounds.answer_max;
                found = true;
                break;
            }
        }
        if (!found)
            throw SchemaError(name, "length profile override names an absent attribute");
    }
    if (!profile.overrides.empty()) out.source_text.clear(); // bounds changed
    return out;
}

} // namespace mole
