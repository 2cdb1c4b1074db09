#include "mole/json_repair.hpp"

#include "mole/errors.hpp"
#include "mole/text.hpp"

#include <cctype>
#include <optional>
#include <string>

namespace mole {

using ordered_json = nlohmann::ordered_json;

namespace {

std::optional<ordered_json> try_parse_object(std::string_view text) {
    ordered_json parsed = ordered_json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) return std::nullopt;
    return parsed;
}

// Drops lines that are nothing but fence markers (``` or ```json), plus an
// inline "```json" prefix and trailing "```" and a leading bare "json" tag.
std::string strip_fences(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t pos = 0;
    while (pos <= raw.size()) {
        std::size_t eol = raw.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? raw.substr(pos)
                                    : raw.substr(pos, eol - pos);
        std::string stripped = trim(line);
        std::string folded = fold_case(stripped);
        bool fence_only = folded == "```" || folded == "```json" || folded == "``` json";
        if (!fence_only) {
            std::string kept(line);
            if (starts_with(folded, "```json"))
                kept = kept.substr(kept.find("```") + 7);
            else if (starts_with(folded, "```"))
                kept = kept.substr(kept.find("```") + 3);
            if (kept.size() >= 3 && kept.substr(kept.size() - 3) == "```")
                kept = kept.substr(0, kept.size() - 3);
            out += kept;
        }
        if (eol == std::string_view::npos) break;
        out += '\n';
        pos = eol + 1;
    }
    std::string trimmed = trim(out);
    if (starts_with(fold_case(trimmed), "json"))
        return trim(trimmed.substr(4));
    return trimmed;
}

// First balanced top-level {...} span, tracking string literals and escape
// sequences so braces inside strings do not count.
std::optional<std::string_view> balanced_object_span(std::string_view text) {
    for (std::size_t start = 0; start < text.size(); ++start) {
        if (text[start] != '{') continue;
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (std::size_t i = start; i < text.size(); ++i) {
            char c = text[i];
            if (in_string) {
                if (escaped) escaped = false;
                else if (c == '\\') escaped = true;
                else if (c == '"') in_string = false;
                continue;
            }
            if (c == '"') in_string = true;
            else if (c == '{') ++depth;
            else if (c == '}') {
                if (--depth == 0) return text.substr(start, i - start + 1);
            }
        }
        // This '{' never closes; try the next one.
    }
    return std::nullopt;
}

// Removes commas that directly precede } or ] (outside strings).
std::string drop_trailing_commas(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            out.push_back(c);
            if (escaped) escaped = false;
            else if (c == '\\') escaped = true;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') {
            in_string = true;
            out.push_back(c);
            continue;
        }
        if (c == ',') {
            std::size_t j = i + 1;
            while (j < text.size() &&
                   std::isspace(static_cast<unsigned char>(text[j])))
                ++j;
            if (j < text.size() && (text[j] == '}' || text[j] == ']')) continue;
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

nlohmann::ordered_json repair_json(std::string_view raw) {
    if (auto direct = try_parse_object(trim(raw))) return *direct;

    std::string cleaned = strip_fences(raw);
    auto span = balanced_object_span(cleaned);
    if (!span)
        throw RepairError("no balanced JSON object found in model output");

    if (auto parsed = try_parse_object(*span)) return *parsed;

    std::string without_commas = drop_trailing_commas(*span);
    if (auto parsed = try_parse_object(without_commas)) return *parsed;

    throw RepairError("JSON object still unparseable after repair passes");
}

bool repairable(std::string_view raw) {
    try {
        repair_json(raw);
        return true;
    } catch (const RepairError&) {
        return false;
    }
}

} // namespace mole
