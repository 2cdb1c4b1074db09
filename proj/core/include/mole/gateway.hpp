#pragma once

#include "mole/prompt.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mole {

struct ModelConfig {
    std::string model_id;
    std::string endpoint_url = "https://openrouter.ai/api/v1/chat/completions";
    double temperature = 0.0;
    int max_attempts = 6;
    std::string api_key_env = "MOLE_API_KEY";
    double request_timeout_seconds = 120.0;
};

/// Parses {"model_id": ..., "endpoint_url"?, "temperature"?, "max_attempts"?,
/// "api_key_env"?, "request_timeout"?} and checks the invariants
/// (max_attempts >= 1, temperature >= 0).
ModelConfig parse_model_config(std::string_view raw_text);

struct CompletionResult {
    std::string content;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    int attempts_used = 1;
};

/// USD per 1M input/output tokens for one model.
struct ModelPrices {
    double input_per_million = 0.0;
    double output_per_million = 0.0;
};

/// File shape: JSON map model_id -> [input_usd_per_1m, output_usd_per_1m].
struct PriceTable {
    std::vector<std::pair<std::string, ModelPrices>> entries;

    static PriceTable parse(std::string_view raw_text);
    const ModelPrices* find(std::string_view model_id) const;
};

/// Token totals per model, accumulated across every attempt (failed ones
/// included, with whatever usage the server reported). Thread safe;
/// insertion ordered.
class CostLedger {
public:
    struct Totals {
        std::int64_t input_tokens = 0;
        std::int64_t output_tokens = 0;
        std::int64_t attempts = 0;
    };

    void add(const std::string& model_id, std::int64_t input_tokens, std::int64_t output_tokens);
    std::vector<std::pair<std::string, Totals>> snapshot() const;

private:
    mutable std::mutex mutex_;
    std::vector<std::pair<std::string, Totals>> totals_;
};

struct CostRow {
    std::string model_id;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    std::int64_t attempts = 0;
    /// Unset when the price table lacks the model (unknown, not zero).
    std::optional<double> usd;
};

/// Row order follows ledger insertion order.
std::vector<CostRow> estimate_cost(const CostLedger& ledger, const PriceTable& prices);

nlohmann::ordered_json cost_report_json(const std::vector<CostRow>& rows);

/// One chat-completion transport. Implementations throw GatewayError on
/// transport or HTTP-status failures.
class ChatBackend {
public:
    struct Reply {
        std::string content;
        std::int64_t input_tokens = 0;
        std::int64_t output_tokens = 0;
    };

    virtual ~ChatBackend() = default;
    virtual Reply complete(const nlohmann::ordered_json& request_body, const ModelConfig& cfg) = 0;
};

/// Pulls choices[0].message.content and usage token counts (0 when the
/// server omits usage) out of a chat-completion response body.
ChatBackend::Reply parse_completion_response(const std::string& body);

/// Scripted transport for tests and offline runs. Steps are consumed in
/// order; the last step repeats once the script is exhausted.
class MockBackend : public ChatBackend {
public:
    struct Step {
        std::string content;
        bool transport_error = false;
        std::int64_t input_tokens = 0;
        std::int64_t output_tokens = 0;
    };

    explicit MockBackend(std::vector<Step> steps) : steps_(std::move(steps)) {}

    Reply complete(const nlohmann::ordered_json& request_body, const ModelConfig& cfg) override;

    std::vector<nlohmann::ordered_json> requests() const;

private:
    mutable std::mutex mutex_;
    std::vector<Step> steps_;
    std::size_t next_ = 0;
    std::vector<nlohmann::ordered_json> requests_;
};

/// HTTPS transport speaking the chat-completion protocol, bearer token read
/// from cfg.api_key_env.
std::unique_ptr<ChatBackend> make_http_backend();

struct GatewayOptions {
    std::chrono::milliseconds backoff{2000};
    /// Default: real sleep. Injectable so retry tests run instantly.
    std::function<void(std::chrono::milliseconds)> sleeper;
    /// Called once per attempt with the request body.
    std::function<void(const nlohmann::ordered_json&)> observer;
    int max_in_flight = 4;
};

/// Retry wrapper around a backend: up to cfg.max_attempts requests, fixed
/// 2s pause between attempts (injectable for tests), every attempt billed
/// to the ledger. Shareable across threads; an in-flight cap bounds
/// concurrent requests.
class Gateway {
public:
    using SuccessPredicate = std::function<bool(const std::string&)>;

    Gateway(std::shared_ptr<ChatBackend> backend, std::shared_ptr<CostLedger> ledger,
            GatewayOptions options = GatewayOptions());

    /// Returns the first attempt whose content satisfies is_success; throws
    /// GatewayError carrying the attempt count and last failure reason once
    /// the bound is exhausted. A reply that fails the predicate counts as a
    /// failed attempt.
    CompletionResult complete_with_retry(const MessageSequence& messages, const ModelConfig& cfg,
                                         const SuccessPredicate& is_success) const;

    static nlohmann::ordered_json build_request_body(const MessageSequence& messages,
                                                     const ModelConfig& cfg);

    CostLedger& ledger() { return *ledger_; }
    const CostLedger& ledger() const { return *ledger_; }

private:
    void acquire_slot() const;
    void release_slot() const;

    std::shared_ptr<ChatBackend> backend_;
    std::shared_ptr<CostLedger> ledger_;
    GatewayOptions options_;
    mutable std::mutex slot_mutex_;
    mutable std::condition_variable slot_cv_;
    mutable int in_flight_ = 0;
};

} // namespace mole
