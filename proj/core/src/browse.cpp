#include "mole/browse.hpp"

#include "mole/json_repair.hpp"
#include "mole/text.hpp"

#include <httplib.h>

#include <fstream>
#include <sstream>

namespace mole {

namespace {

struct UrlParts {
    std::string host;
    std::string path; // leading slash kept, query dropped
};

std::optional<UrlParts> parse_url(const std::string& url) {
    if (!looks_like_url(url)) return std::nullopt;
    auto scheme_end = url.find("://");
    auto rest = url.substr(scheme_end + 3);
    auto slash = rest.find('/');
    UrlParts parts;
    parts.host = fold_case(slash == std::string::npos ? rest : rest.substr(0, slash));
    parts.path = slash == std::string::npos ? "/" : rest.substr(slash);
    auto query = parts.path.find_first_of("?#");
    if (query != std::string::npos) parts.path.resize(query);
    return parts;
}

std::vector<std::string> path_segments(const std::string& path) {
    std::vector<std::string> segments;
    std::size_t i = 0;
    while (i < path.size()) {
        while (i < path.size() && path[i] == '/') ++i;
        std::size_t start = i;
        while (i < path.size() && path[i] != '/') ++i;
        if (i > start) segments.push_back(path.substr(start, i - start));
    }
    return segments;
}

std::string strip_git_suffix(std::string repo) {
    if (repo.size() > 4 && repo.substr(repo.size() - 4) == ".git")
        repo.resize(repo.size() - 4);
    return repo;
}

/// Keeps the cap a byte limit while never splitting a UTF-8 sequence.
std::string clip_bytes(std::string body, std::size_t cap) {
    if (body.size() <= cap) return body;
    std::size_t end = cap;
    while (end > 0 && (static_cast<unsigned char>(body[end]) & 0xC0) == 0x80) --end;
    body.resize(end);
    return body;
}

constexpr const char* kUserAgent = "mole-harness/0.1";

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : s) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string url_cache_name(const std::string& url) {
    std::ostringstream name;
    name << std::hex << fnv1a(url) << ".body";
    return name.str();
}

} // namespace

std::string to_string(FetchPlan::HostClass h) {
    switch (h) {
    case FetchPlan::HostClass::GitHub: return "github";
    case FetchPlan::HostClass::HuggingFace: return "huggingface";
    case FetchPlan::HostClass::Other: return "other";
    }
    return "unknown";
}

FetchPlan plan_fetch(const std::string& link) {
    FetchPlan plan;
    plan.source_link = link;
    auto parts = parse_url(trim(link));
    if (!parts) return plan;

    const std::string& host = parts->host;
    auto segments = path_segments(parts->path);

    if (host == "github.com" || host == "www.github.com") {
        if (segments.size() >= 2) {
            plan.host_class = FetchPlan::HostClass::GitHub;
            std::string base = "https://raw.githubusercontent.com/" + segments[0] + "/" +
                               strip_git_suffix(segments[1]) + "/";
            for (const char* branch : {"HEAD", "main", "master"})
                plan.fetch_urls.push_back(base + branch + "/README.md");
            return plan;
        }
    }
    if ((host == "huggingface.co" || host == "www.huggingface.co") && !segments.empty() &&
        segments[0] == "datasets" && segments.size() >= 2) {
        plan.host_class = FetchPlan::HostClass::HuggingFace;
        std::string id = segments[1];
        if (segments.size() >= 3) id += "/" + segments[2];
        plan.fetch_urls.push_back("https://huggingface.co/datasets/" + id +
                                  "/resolve/main/README.md");
        return plan;
    }

    plan.host_class = FetchPlan::HostClass::Other;
    plan.fetch_urls.push_back(trim(link));
    return plan;
}

Fetcher make_http_fetcher(std::optional<std::filesystem::path> cache_dir) {
    return [cache_dir](const std::string& url) -> std::optional<std::string> {
        std::filesystem::path cached;
        if (cache_dir) {
            cached = *cache_dir / url_cache_name(url);
            std::ifstream in(cached, std::ios::binary);
            if (in) {
                std::ostringstream body;
                body << in.rdbuf();
                return body.str();
            }
        }

        auto parts = parse_url(url);
        if (!parts) return std::nullopt;
        auto scheme_end = url.find("://");
        auto slash = url.find('/', scheme_end + 3);
        std::string base = slash == std::string::npos ? url : url.substr(0, slash);
        std::string path = slash == std::string::npos ? "/" : url.substr(slash);

        httplib::Client client(base);
        client.set_follow_location(true);
        client.set_connection_timeout(20, 0);
        client.set_read_timeout(20, 0);
        httplib::Headers headers{{"User-Agent", kUserAgent}};
        auto res = client.Get(path, headers);
        if (!res || res->status < 200 || res->status >= 300) return std::nullopt;

        if (cache_dir) {
            std::filesystem::create_directories(*cache_dir);
            std::ofstream out(cached, std::ios::binary);
            out << res->body;
        }
        return res->body;
    };
}

const std::string& default_browse_prompt() {
    static const std::string prompt =
        "You already extracted the metadata below from the paper. The following repository "
        "content was fetched from the dataset's links and may contain updated values for "
        "attributes such as License, Link, and Volume. Update a value only when the repository "
        "is clearly authoritative for it; when the paper and the repository conflict, keep the "
        "value extracted from the paper. Respond with the full updated 'Output JSON' "
        "containing every key.";
    return prompt;
}

BrowseOutcome extract_with_browsing(const Document& d, const Schema& schema,
                                    const MetadataRecord& prior, const Gateway& gateway,
                                    const ModelConfig& cfg, const Fetcher& fetcher,
                                    const BrowseOptions& options) {
    BrowseOutcome outcome;
    outcome.run.document_id = d.id;
    outcome.run.strategy = Strategy::llm;
    outcome.run.model_id = cfg.model_id;
    outcome.run.record = prior;

    std::vector<FetchPlan> plans;
    bool had_plan = false;
    for (const char* attribute : {"Link", "HF Link"}) {
        const AnswerValue* value = prior.find(attribute);
        if (value == nullptr || value->tag() != AnswerTag::Url) continue;
        FetchPlan plan = plan_fetch(value->as_text());
        if (plan.empty()) continue;
        had_plan = true;
        plans.push_back(std::move(plan));
    }

    std::vector<std::pair<std::string, std::string>> pages; // url -> body
    for (const auto& plan : plans) {
        for (const auto& url : plan.fetch_urls) {
            if (auto body = fetcher(url)) {
                pages.emplace_back(url, clip_bytes(std::move(*body), options.byte_cap));
                outcome.fetched_urls.push_back(url);
                break;
            }
        }
    }

    if (pages.empty()) {
        if (had_plan) outcome.warning = "browsing skipped: every candidate fetch failed";
        return outcome;
    }

    std::ostringstream user;
    user << (options.prompt_template.empty() ? default_browse_prompt()
                                             : options.prompt_template);
    user << "\n\nInput schema:\n" << schema.prompt_text();
    user << "\n\nPreviously extracted metadata:\n" << record_to_json(prior).dump(2);
    for (const auto& [url, body] : pages)
        user << "\n\nRepository content from " << url << ":\n" << body;

    MessageSequence messages;
    messages.push_back({Message::Role::system, build_system_prompt(schema)});
    messages.push_back({Message::Role::user, user.str()});

    CompletionResult result = gateway.complete_with_retry(
        messages, cfg, [](const std::string& content) { return repairable(content); });

    auto [record, log] = validate_record(repair_json(result.content), schema);
    outcome.run.record = std::move(record);
    outcome.run.log = std::move(log);
    outcome.run.attempts_used = result.attempts_used;
    outcome.browsed = true;
    return outcome;
}

} // namespace mole
