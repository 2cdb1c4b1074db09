#include "mole/validation.hpp"

#include "mole/errors.hpp"
#include "mole/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace mole {

std::string to_string(ValidationAction a) {
    switch (a) {
    case ValidationAction::cast: return "cast";
    case ValidationAction::option_matched: return "option_matched";
    case ValidationAction::defaulted: return "defaulted";
    case ValidationAction::length_violation: return "length_violation";
    case ValidationAction::key_dropped: return "key_dropped";
    }
    return "unknown";
}

bool ValidationLog::has_corrective() const {
    return std::any_of(entries.begin(), entries.end(), [](const ValidationEntry& e) {
        return e.action != ValidationAction::length_violation;
    });
}

std::size_t ValidationLog::count(ValidationAction action) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(),
                      [action](const ValidationEntry& e) { return e.action == action; }));
}

nlohmann::ordered_json log_to_json(const ValidationLog& log) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& e : log.entries) {
        out.push_back({{"attribute", e.attribute},
                       {"action", to_string(e.action)},
                       {"detail", e.detail}});
    }
    return out;
}

namespace {

std::optional<std::string> scalar_to_text(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
    if (v.is_number()) return v.dump();
    return std::nullopt;
}

std::optional<double> parse_number_text(std::string_view raw) {
    std::string s{trim(raw)};
    // Tolerate thousands separators ("40,000").
    s.erase(std::remove(s.begin(), s.end(), ','), s.end());
    if (s.empty()) return std::nullopt;
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    double value = std::strtod(begin, &end);
    if (end != begin + s.size() || errno == ERANGE || !std::isfinite(value))
        return std::nullopt;
    return value;
}

bool year_in_range(std::int64_t y) { return y == 0 || (y >= 1900 && y <= 2100); }

std::optional<std::int64_t> parse_year_text(std::string_view raw) {
    std::string s{trim(raw)};
    if (s.empty()) return std::nullopt;
    const char* begin = s.c_str();
    char* end = nullptr;
    long full = std::strtol(begin, &end, 10);
    if (end == begin + s.size() && year_in_range(full)) return full;
    // Otherwise take the first standalone 4-digit run inside the text.
    std::size_t i = 0;
    const auto digit = [&](std::size_t k) {
        return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]));
    };
    while (i < s.size()) {
        if (!digit(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (digit(j)) ++j;
        if (j - i == 4) {
            long y = std::strtol(s.c_str() + i, nullptr, 10);
            if (y >= 1900 && y <= 2100) return y;
        }
        i = j;
    }
    return std::nullopt;
}

struct Coercion {
    AnswerValue value;
    std::vector<ValidationEntry> entries;

    void note(const AttributeSpec& spec, ValidationAction action, std::string detail) {
        entries.push_back({spec.name, action, std::move(detail)});
    }
};

Coercion fallback(const AttributeSpec& spec, std::string detail) {
    Coercion c{default_answer(spec), {}};
    c.note(spec, ValidationAction::defaulted, std::move(detail));
    return c;
}

Coercion coerce_text(const nlohmann::ordered_json& raw, const AttributeSpec& spec) {
    AnswerTag tag = spec.answer_type.tag;
    auto make = [tag](std::string s) {
        return tag == AnswerTag::Url ? AnswerValue::url(std::move(s))
                                     : AnswerValue::text(std::move(s));
    };
    Coercion c;
    if (raw.is_string()) {
        c.value = make(raw.get<std::string>());
    } else if (tag == AnswerTag::Text && (raw.is_number() || raw.is_boolean())) {
        c.value = make(*scalar_to_text(raw));
        c.note(spec, ValidationAction::cast,
               raw.is_boolean() ? "boolean rendered as text" : "number rendered as text");
    } else if (tag == AnswerTag::Text && raw.is_array()) {
        std::vector<std::string> parts;
        for (const auto& item : raw) {
            auto s = scalar_to_text(item);
            if (!s) return fallback(spec, "list element is not a scalar");
            parts.push_back(std::move(*s));
        }
        std::string joined;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) joined += ", ";
            joined += parts[i];
        }
        c.value = make(std::move(joined));
        c.note(spec, ValidationAction::cast, "list joined into text");
    } else {
        return fallback(spec, "value is not text");
    }
    if (tag == AnswerTag::Url && !c.value.as_text().empty() && !looks_like_url(c.value.as_text()))
        return fallback(spec, "malformed url");
    return c;
}

Coercion coerce_year(const nlohmann::ordered_json& raw, const AttributeSpec& spec) {
    Coercion c;
    if (raw.is_number_integer() || raw.is_number_unsigned()) {
        auto y = raw.get<std::int64_t>();
        if (!year_in_range(y)) return fallback(spec, "year outside 1900..2100");
        c.value = AnswerValue::year(y);
        return c;
    }
    if (raw.is_number_float()) {
        double d = raw.get<double>();
        auto y = static_cast<std::int64_t>(std::llround(d));
        if (static_cast<double>(y) != d || !year_in_range(y))
            return fallback(spec, "number is not a valid year");
        c.value = AnswerValue::year(y);
        c.note(spec, ValidationAction::cast, "number cast to year");
        return c;
    }
    if (raw.is_string()) {
        auto y = parse_year_text(raw.get<std::string>());
        if (!y) return fallback(spec, "no 4-digit year in text");
        c.value = AnswerValue::year(*y);
        c.note(spec, ValidationAction::cast, "text cast to year");
        return c;
    }
    return fallback(spec, "value is not a year");
}

Coercion coerce_number(const nlohmann::ordered_json& raw, const AttributeSpec& spec) {
    Coercion c;
    if (raw.is_number()) {
        c.value = AnswerValue::number(raw.get<double>());
        return c;
    }
    if (raw.is_string()) {
        auto v = parse_number_text(raw.get<std::string>());
        if (!v) return fallback(spec, "text is not numeric");
        c.value = AnswerValue::number(*v);
        c.note(spec, ValidationAction::cast, "numeric text cast to number");
        return c;
    }
    return fallback(spec, "value is not numeric");
}

Coercion coerce_flag(const nlohmann::ordered_json& raw, const AttributeSpec& spec) {
    Coercion c;
    if (raw.is_boolean()) {
        c.value = AnswerValue::flag(raw.get<bool>());
        return c;
    }
    if (raw.is_string()) {
        std::string folded = fold_case(trim(raw.get<std::string>()));
        if (folded == "true" || folded == "false") {
            c.value = AnswerValue::flag(folded == "true");
            c.note(spec, ValidationAction::cast, "text cast to boolean");
            return c;
        }
        return fallback(spec, "text is not true/false");
    }
    return fallback(spec, "value is not boolean");
}

Coercion coerce_text_list(const nlohmann::ordered_json& raw, const AttributeSpec& spec) {
    Coercion c;
    if (raw.is_array()) {
        std::vector<std::string> items;
        std::size_t converted = 0;
        for (const auto& item : raw) {
            auto s = scalar_to_text(item);
            if (!s) return fallback(spec, "list element is not a scalar");
            converted += item.is_string() ? 0 : 1;
            items.push_back(std::move(*s));
        }
        c.value = AnswerValue::text_list(std::move(items));
        if (converted)
            c.note(spec, ValidationAction::cast,
                   std::to_string(converted) + " list element(s) rendered as text");
        return c;
    }
    auto s = scalar_to_text(raw);
    if (!s) return fallback(spec, "value is not a list or scalar");
    c.value = AnswerValue::text_list({std::move(*s)});
    c.note(spec, ValidationAction::cast, "scalar wrapped as a one-item list");
    return c;
}

RecordScalar record_key_default(const Schema* schema, const std::string& key) {
    if (schema != nullptr) {
        if (const AttributeSpec* peer = schema->find(key)) {
            if (peer->answer_type.tag == AnswerTag::Number) return 0.0;
            if (peer->answer_type.tag == AnswerTag::Flag) return false;
        }
    }
    return std::string();
}

Coercion coerce_records(const nlohmann::ordered_json& raw, const AttributeSpec& spec,
                        const Schema* schema) {
    if (!raw.is_array()) return fallback(spec, "value is not a list of records");
    Coercion c;
    std::vector<KeyedRecord> records;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& item = raw[i];
        if (!item.is_object()) return fallback(spec, "list element is not a record");
        KeyedRecord record;
        for (const auto& key : spec.answer_type.key_names) {
            auto it = item.find(key);
            if (it == item.end() || it->is_null()) {
                record.emplace_back(key, record_key_default(schema, key));
                c.note(spec, ValidationAction::defaulted,
                       "record " + std::to_string(i) + " missing key " + key);
                continue;
            }
            if (it->is_string()) {
                record.emplace_back(key, it->get<std::string>());
            } else if (it->is_boolean()) {
                record.emplace_back(key, it->get<bool>());
            } else if (it->is_number()) {
                record.emplace_back(key, it->get<double>());
            } else {
                record.emplace_back(key, record_key_default(schema, key));
                c.note(spec, ValidationAction::defaulted,
                       "record " + std::to_string(i) + " key " + key + " is not a scalar");
            }
        }
        for (const auto& [key, unused] : item.items()) {
            (void)unused;
            bool known = std::find(spec.answer_type.key_names.begin(),
                                   spec.answer_type.key_names.end(),
                                   key) != spec.answer_type.key_names.end();
            if (!known)
                c.note(spec, ValidationAction::key_dropped,
                       "record " + std::to_string(i) + " key " + key);
        }
        records.push_back(std::move(record));
    }
    c.value = AnswerValue::keyed_records(std::move(records));
    return c;
}

Coercion coerce_impl(const nlohmann::ordered_json& raw, const AttributeSpec& spec,
                     const Schema* schema) {
    if (raw.is_null()) return fallback(spec, "null value");
    switch (spec.answer_type.tag) {
    case AnswerTag::Text:
    case AnswerTag::Url: return coerce_text(raw, spec);
    case AnswerTag::Year: return coerce_year(raw, spec);
    case AnswerTag::Number: return coerce_number(raw, spec);
    case AnswerTag::Flag: return coerce_flag(raw, spec);
    case AnswerTag::TextList: return coerce_text_list(raw, spec);
    case AnswerTag::KeyedRecordList: return coerce_records(raw, spec, schema);
    }
    return fallback(spec, "unknown answer type");
}

void match_scalar_options(AnswerValue& value, const AttributeSpec& spec, ValidationLog& log) {
    const std::string& current = value.as_text();
    if (current.empty()) return; // default stays default
    OptionMatch m = match_option(current, spec);
    if (m.changed) {
        log.add(spec.name, ValidationAction::option_matched,
                "'" + current + "' -> '" + m.option + "'");
        value = spec.answer_type.tag == AnswerTag::Url ? AnswerValue::url(m.option)
                                                       : AnswerValue::text(m.option);
    }
}

void match_list_options(AnswerValue& value, const AttributeSpec& spec, ValidationLog& log) {
    auto& items = value.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].empty()) continue;
        OptionMatch m = match_option(items[i], spec);
        if (m.changed) {
            log.add(spec.name, ValidationAction::option_matched,
                    "item " + std::to_string(i) + ": '" + items[i] + "' -> '" + m.option + "'");
            items[i] = m.option;
        }
    }
}

void match_record_options(AnswerValue& value, const AttributeSpec& spec, const Schema& schema,
                          ValidationLog& log) {
    auto& records = value.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (auto& [key, cell] : records[i]) {
            auto* text = std::get_if<std::string>(&cell);
            if (text == nullptr || text->empty()) continue;
            const AttributeSpec* peer = schema.find(key);
            if (peer == nullptr || !peer->has_options() ||
                peer->answer_type.tag == AnswerTag::Flag)
                continue;
            OptionMatch m = match_option(*text, *peer);
            if (m.changed) {
                log.add(spec.name, ValidationAction::option_matched,
                        "record " + std::to_string(i) + " key " + key + ": '" + *text + "' -> '" +
                            m.option + "'");
                *text = m.option;
            }
        }
    }
}

} // namespace

std::pair<AnswerValue, std::vector<ValidationEntry>> coerce_type(
    const nlohmann::ordered_json& raw, const AttributeSpec& spec) {
    Coercion c = coerce_impl(raw, spec, nullptr);
    return {std::move(c.value), std::move(c.entries)};
}

OptionMatch match_option(std::string_view value, const AttributeSpec& spec) {
    if (!spec.has_options())
        throw SchemaError(spec.name, "option matching requires an option list");
    const auto& options = *spec.options;
    std::string folded = fold_case(trim(value));
    for (const auto& opt : options) {
        if (fold_case(trim(opt)) == folded) return {opt, opt != value};
    }
    double best = -1.0;
    const std::string* chosen = &options.front();
    for (const auto& opt : options) {
        double sim = 1.0 - normalized_edit_distance(folded, fold_case(trim(opt)));
        if (sim > best) {
            best = sim;
            chosen = &opt;
        }
    }
    return {*chosen, *chosen != value};
}

std::pair<MetadataRecord, ValidationLog> validate_record(const nlohmann::ordered_json& raw,
                                                         const Schema& schema) {
    MetadataRecord record;
    record.schema_category = schema.category;
    ValidationLog log;

    for (const AttributeSpec& spec : schema.attributes) {
        Coercion c;
        auto it = raw.find(spec.name);
        if (it == raw.end()) {
            c.value = default_answer(spec);
            c.note(spec, ValidationAction::defaulted, "absent from response");
        } else {
            c = coerce_impl(*it, spec, &schema);
        }
        for (auto& entry : c.entries) log.entries.push_back(std::move(entry));

        AnswerValue value = std::move(c.value);
        if (spec.has_options() && spec.answer_type.tag != AnswerTag::Flag) {
            if (value.tag() == AnswerTag::TextList)
                match_list_options(value, spec, log);
            else if (value.tag() == AnswerTag::Text || value.tag() == AnswerTag::Url)
                match_scalar_options(value, spec, log);
        }
        if (value.tag() == AnswerTag::KeyedRecordList)
            match_record_options(value, spec, schema, log);

        std::size_t len = value.length();
        bool below = len < static_cast<std::size_t>(std::max(spec.answer_min, 0));
        bool above = spec.answer_max && len > static_cast<std::size_t>(*spec.answer_max);
        if (below || above) {
            std::ostringstream detail;
            detail << "length " << len << " outside [" << spec.answer_min << ", ";
            if (spec.answer_max)
                detail << *spec.answer_max;
            else
                detail << "inf";
            detail << "]";
            log.add(spec.name, ValidationAction::length_violation, detail.str());
        }

        record.values.emplace_back(spec.name, std::move(value));
    }

    for (const auto& [key, unused] : raw.items()) {
        (void)unused;
        if (!schema.has(key))
            log.add(key, ValidationAction::key_dropped, "not in schema");
    }

    return {std::move(record), std::move(log)};
}

} // namespace mole
