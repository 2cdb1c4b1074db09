#pragma once

#include "mole/document.hpp"
#include "mole/gateway.hpp"
#include "mole/prompt.hpp"
#include "mole/schema.hpp"
#include "mole/validation.hpp"
#include "mole/value.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mole {

enum class Strategy { llm, random, keyword };

std::string to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view s);

struct ExtractionRun {
    std::string document_id;
    Strategy strategy = Strategy::llm;
    std::string model_id; // llm only
    std::size_t shots = 0;
    double fraction = 1.0;
    MetadataRecord record;
    ValidationLog log;
    int attempts_used = 0;
    /// Left empty by default so seeded runs serialize bit-identically.
    std::string timestamp;
};

nlohmann::ordered_json run_to_json(const ExtractionRun& run);

/// Truncates the paper to the leading fraction, builds the chat request and
/// retries until the reply repairs into JSON. The repaired object goes
/// through validate_record, so the result is always schema-complete.
ExtractionRun extract_llm(const Document& d, const Schema& schema, const Gateway& gateway,
                          const ModelConfig& cfg, const std::vector<SyntheticExample>& shots,
                          double fraction = 1.0);

/// Seeded uniform baseline: option-bearing attributes sample from their
/// options (list types draw a distinct subset of in-bounds size), all other
/// attributes take type defaults. No document, no network.
ExtractionRun extract_random(const Schema& schema, std::uint64_t seed);

/// Heuristic baseline over the raw text: earliest-occurring option literal,
/// first http(s) link, most frequent in-range 4-digit year, and the largest
/// number within three words of a unit option word. Free-text attributes
/// stay at their defaults. No network.
ExtractionRun extract_keyword(const Document& d, const Schema& schema);

} // namespace mole
