#pragma once

#include "mole/document.hpp"
#include "mole/schema.hpp"
#include "mole/value.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace mole {

struct Message {
    enum class Role { system, user, assistant };
    Role role;
    std::string content;

    bool operator==(const Message&) const = default;
};

std::string to_string(Message::Role role);

/// system first, then alternating user/assistant few-shot pairs, ending
/// with the user message that carries the paper under extraction.
using MessageSequence = std::vector<Message>;

nlohmann::ordered_json to_json(const Message& m);
nlohmann::ordered_json to_json(const MessageSequence& messages);

/// The fixed extraction instructions with "{columns}" replaced by the
/// schema's attribute names in file order, comma-joined.
std::string build_system_prompt(const Schema& schema);

/// A short template paper plus the record it describes. Golds are
/// schema-complete and in-bounds, so they validate with an action-free log.
struct SyntheticExample {
    std::string paper_text;
    MetadataRecord gold;
    std::uint64_t seed = 0;
};

/// Message count is always 2 + 2*shots: system, one user/assistant pair per
/// shot, and the final user message with the schema text and d.text.
MessageSequence build_extraction_request(const Schema& schema, const Document& d,
                                         const std::vector<SyntheticExample>& shots);

/// Generates n template papers with seeded sampling: options drawn from the
/// schema (task, unit, collection style, domain, license), a fresh volume
/// and year each time, fixed filler for names, authors and links. The
/// multilingual schema also gets a language subset table. Throws
/// SchemaError when the schema lacks an option list the template needs.
std::vector<SyntheticExample> generate_synthetic_examples(const Schema& schema, std::size_t n,
                                                          std::uint64_t seed);

} // namespace mole
