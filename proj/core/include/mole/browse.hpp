#pragma once

#include "mole/extract.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mole {

/// Where to look for a dataset's README given its Link value.
struct FetchPlan {
    enum class HostClass { GitHub, HuggingFace, Other };

    HostClass host_class = HostClass::Other;
    /// Candidates in fallback order; empty means nothing to browse.
    std::vector<std::string> fetch_urls;
    std::string source_link;

    bool empty() const { return fetch_urls.empty(); }
};

std::string to_string(FetchPlan::HostClass h);

/// GitHub repository pages map to raw README.md candidates on HEAD, main
/// and master; HuggingFace dataset pages map to their resolve/main
/// README.md; any other well-formed URL is fetched as-is. Malformed or
/// empty links produce an empty plan.
FetchPlan plan_fetch(const std::string& link);

/// Returns the body on success, std::nullopt on any failure.
using Fetcher = std::function<std::optional<std::string>(const std::string& url)>;

/// HTTPS GET fetcher with a fixed user agent. When cache_dir is given,
/// bodies are stored keyed by URL hash and reruns are served from disk.
Fetcher make_http_fetcher(std::optional<std::filesystem::path> cache_dir = std::nullopt);

struct BrowseOptions {
    /// Per-resource cap applied to fetched bodies before prompting.
    std::size_t byte_cap = 64 * 1024;
    /// Follow-up instruction; empty selects the built-in wording.
    std::string prompt_template;
};

/// The built-in follow-up instruction text.
const std::string& default_browse_prompt();

struct BrowseOutcome {
    ExtractionRun run;
    /// False when nothing was fetched and the prior passed through.
    bool browsed = false;
    /// First successful candidate of each plan.
    std::vector<std::string> fetched_urls;
    /// Set when plans existed but every fetch failed.
    std::string warning;
};

/// Re-extraction pass: fetch README content behind the prior record's Link
/// and HF Link, then ask the model for a full updated record given the
/// prior plus the fetched pages. All fetches failing (or an empty plan)
/// returns the prior unchanged.
BrowseOutcome extract_with_browsing(const Document& d, const Schema& schema,
                                    const MetadataRecord& prior, const Gateway& gateway,
                                    const ModelConfig& cfg, const Fetcher& fetcher,
                                    const BrowseOptions& options = {});

} // namespace mole
