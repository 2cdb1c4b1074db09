#include "mole/extract.hpp"

#include "mole/json_repair.hpp"
#include "mole/rng.hpp"
#include "mole/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>

namespace mole {

std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::llm: return "llm";
    case Strategy::random: return "random";
    case Strategy::keyword: return "keyword";
    }
    return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
    if (s == "llm") return Strategy::llm;
    if (s == "random") return Strategy::random;
    if (s == "keyword") return Strategy::keyword;
    return std::nullopt;
}

nlohmann::ordered_json run_to_json(const ExtractionRun& run) {
    nlohmann::ordered_json out;
    out["document"] = run.document_id;
    out["strategy"] = to_string(run.strategy);
    if (run.strategy == Strategy::llm) out["model"] = run.model_id;
    out["shots"] = run.shots;
    out["fraction"] = run.fraction;
    out["attempts"] = run.attempts_used;
    if (!run.timestamp.empty()) out["timestamp"] = run.timestamp;
    out["record"] = record_to_json(run.record);
    out["validation_log"] = log_to_json(run.log);
    return out;
}

ExtractionRun extract_llm(const Document& d, const Schema& schema, const Gateway& gateway,
                          const ModelConfig& cfg, const std::vector<SyntheticExample>& shots,
                          double fraction) {
    Document clipped = truncate_context(d, fraction);
    MessageSequence messages = build_extraction_request(schema, clipped, shots);
    CompletionResult result = gateway.complete_with_retry(
        messages, cfg, [](const std::string& content) { return repairable(content); });

    auto [record, log] = validate_record(repair_json(result.content), schema);

    ExtractionRun run;
    run.document_id = d.id;
    run.strategy = Strategy::llm;
    run.model_id = cfg.model_id;
    run.shots = shots.size();
    run.fraction = fraction;
    run.record = std::move(record);
    run.log = std::move(log);
    run.attempts_used = result.attempts_used;
    return run;
}

namespace {

nlohmann::ordered_json sample_option_value(SeededRng& rng, const AttributeSpec& spec) {
    const auto& options = *spec.options;
    if (spec.answer_type.tag == AnswerTag::Flag) return rng.coin();
    if (spec.answer_type.tag == AnswerTag::TextList) {
        auto lo = static_cast<std::size_t>(std::max(spec.answer_min, 1));
        std::size_t hi = options.size();
        if (spec.answer_max) hi = std::min(hi, static_cast<std::size_t>(*spec.answer_max));
        lo = std::min(lo, options.size());
        if (hi < lo) hi = lo;
        std::size_t k = lo + rng.below(hi - lo + 1);
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (std::size_t index : sample_distinct(rng, options.size(), k))
            list.push_back(options[index]);
        return list;
    }
    return options[rng.below(options.size())];
}

} // namespace

ExtractionRun extract_random(const Schema& schema, std::uint64_t seed) {
    SeededRng rng(seed);
    nlohmann::ordered_json raw = nlohmann::ordered_json::object();
    for (const auto& spec : schema.attributes) {
        if (spec.has_options())
            raw[spec.name] = sample_option_value(rng, spec);
        else
            raw[spec.name] = to_json(default_answer(spec));
    }
    auto [record, log] = validate_record(raw, schema);

    ExtractionRun run;
    run.strategy = Strategy::random;
    run.record = std::move(record);
    run.log = std::move(log);
    return run;
}

namespace {

std::string_view strip_punct(std::string_view token) {
    while (!token.empty() && !std::isalnum(static_cast<unsigned char>(token.front())))
        token.remove_prefix(1);
    while (!token.empty() && !std::isalnum(static_cast<unsigned char>(token.back())))
        token.remove_suffix(1);
    return token;
}

std::optional<double> parse_token_number(std::string_view token) {
    std::string s{strip_punct(token)};
    s.erase(std::remove(s.begin(), s.end(), ','), s.end());
    if (s.empty()) return std::nullopt;
    const char* begin = s.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end != begin + s.size()) return std::nullopt;
    return value;
}

std::optional<std::string> earliest_option(const std::string& folded_text,
                                           const AttributeSpec& spec) {
    std::size_t best_pos = std::string::npos;
    const std::string* best = nullptr;
    for (const auto& option : *spec.options) {
        auto pos = folded_text.find(fold_case(option));
        if (pos != std::string::npos && pos < best_pos) {
            best_pos = pos;
            best = &option;
        }
    }
    if (best == nullptr) return std::nullopt;
    return *best;
}

std::optional<std::string> first_url(const std::string& text, const std::string& folded_text) {
    auto http = folded_text.find("http://");
    auto https = folded_text.find("https://");
    auto start = std::min(http, https);
    if (start == std::string::npos) return std::nullopt;
    auto end = start;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string url = text.substr(start, end - start);
    while (!url.empty() && std::string(".,;:)]}>\"'").find(url.back()) != std::string::npos)
        url.pop_back();
    return url;
}

std::optional<std::int64_t> most_frequent_year(const std::string& text) {
    std::map<std::int64_t, std::pair<std::size_t, std::size_t>> counts; // year -> (count, first)
    const auto digit = [&](std::size_t k) {
        return k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]));
    };
    std::size_t i = 0;
    while (i < text.size()) {
        if (!digit(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (digit(j)) ++j;
        if (j - i == 4) {
            std::int64_t year = std::strtol(text.c_str() + i, nullptr, 10);
            if (year >= 1900 && year <= 2100) {
                auto it = counts.find(year);
                if (it == counts.end())
                    counts.emplace(year, std::make_pair(std::size_t{1}, i));
                else
                    it->second.first += 1;
            }
        }
        i = j;
    }
    if (counts.empty()) return std::nullopt;
    auto best = counts.begin();
    for (auto it = std::next(counts.begin()); it != counts.end(); ++it) {
        bool more = it->second.first > best->second.first;
        bool tie_earlier =
            it->second.first == best->second.first && it->second.second < best->second.second;
        if (more || tie_earlier) best = it;
    }
    return best->first;
}

std::optional<double> largest_unit_adjacent_number(const std::vector<std::string>& words,
                                                   const std::vector<std::string>& unit_words) {
    if (unit_words.empty()) return std::nullopt;
    std::optional<double> best;
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto value = parse_token_number(words[i]);
        if (!value) continue;
        std::size_t lo = i >= 3 ? i - 3 : 0;
        std::size_t hi = std::min(words.size(), i + 4);
        bool near_unit = false;
        for (std::size_t j = lo; j < hi && !near_unit; ++j) {
            if (j == i) continue;
            std::string token{strip_punct(words[j])};
            near_unit = std::find(unit_words.begin(), unit_words.end(), fold_case(token)) !=
                        unit_words.end();
        }
        if (near_unit && (!best || *value > *best)) best = value;
    }
    return best;
}

} // namespace

ExtractionRun extract_keyword(const Document& d, const Schema& schema) {
    const std::string folded = fold_case(d.text);
    const std::vector<std::string> words = split_words(d.text);

    std::vector<std::string> unit_words;
    if (const AttributeSpec* unit = schema.find("Unit"); unit != nullptr && unit->has_options())
        for (const auto& option : *unit->options) unit_words.push_back(fold_case(option));

    nlohmann::ordered_json raw = nlohmann::ordered_json::object();
    for (const auto& spec : schema.attributes) {
        switch (spec.answer_type.tag) {
        case AnswerTag::Url:
            if (auto url = first_url(d.text, folded)) raw[spec.name] = *url;
            break;
        case AnswerTag::Year:
            if (auto year = most_frequent_year(d.text)) raw[spec.name] = *year;
            break;
        case AnswerTag::Number:
            if (auto value = largest_unit_adjacent_number(words, unit_words))
                raw[spec.name] = *value;
            break;
        case AnswerTag::Flag:
            if (spec.has_options()) {
                if (auto hit = earliest_option(folded, spec)) raw[spec.name] = (*hit == "true");
            }
            break;
        case AnswerTag::Text:
        case AnswerTag::TextList:
            if (spec.has_options()) {
                if (auto hit = earliest_option(folded, spec)) {
                    if (spec.answer_type.tag == AnswerTag::TextList)
                        raw[spec.name] = nlohmann::ordered_json::array({*hit});
                    else
                        raw[spec.name] = *hit;
                }
            }
            break;
        case AnswerTag::KeyedRecordList: break;
        }
    }

    auto [record, log] = validate_record(raw, schema);

    ExtractionRun run;
    run.document_id = d.id;
    run.strategy = Strategy::keyword;
    run.record = std::move(record);
    run.log = std::move(log);
    return run;
}

} // namespace mole
