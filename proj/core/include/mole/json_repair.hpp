#pragma once

#include <nlohmann/json.hpp>

#include <string_view>

namespace mole {

/// Repairs raw model text into a JSON object. Passes, in order: strict
/// parse of the whole text; code-fence and leading "json" tag removal;
/// extraction of the first balanced top-level {...} span (string-aware);
/// removal of trailing commas before } and ]. Throws RepairError when no
/// balanced object exists or the span stays unparseable.
nlohmann::ordered_json repair_json(std::string_view raw);

/// True when repair_json would succeed. Used as the gateway success
/// predicate.
bool repairable(std::string_view raw);

} // namespace mole
