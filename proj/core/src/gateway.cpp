#include "mole/gateway.hpp"

#include "mole/errors.hpp"

#include <algorithm>
#include <thread>

namespace mole {

ModelConfig parse_model_config(std::string_view raw_text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(raw_text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error("model config is not a JSON object");
    ModelConfig cfg;
    if (!j.contains("model_id") || !j["model_id"].is_string())
        throw Error("model config needs a string model_id");
    cfg.model_id = j["model_id"].get<std::string>();
    if (j.contains("endpoint_url")) cfg.endpoint_url = j["endpoint_url"].get<std::string>();
    if (j.contains("temperature")) cfg.temperature = j["temperature"].get<double>();
    if (j.contains("max_attempts")) cfg.max_attempts = j["max_attempts"].get<int>();
    if (j.contains("api_key_env")) cfg.api_key_env = j["api_key_env"].get<std::string>();
    if (j.contains("request_timeout"))
        cfg.request_timeout_seconds = j["request_timeout"].get<double>();
    if (cfg.max_attempts < 1) throw Error("model config: max_attempts must be >= 1");
    if (cfg.temperature < 0) throw Error("model config: temperature must be >= 0");
    return cfg;
}

PriceTable PriceTable::parse(std::string_view raw_text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(raw_text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error("price table is not a JSON object");
    PriceTable table;
    for (const auto& [model, pair] : j.items()) {
        if (!pair.is_array() || pair.size() != 2)
            throw Error("price table entry for " + model + " must be [input, output] per 1M");
        table.entries.emplace_back(model, ModelPrices{pair[0].get<double>(),
                                                      pair[1].get<double>()});
    }
    return table;
}

const ModelPrices* PriceTable::find(std::string_view model_id) const {
    for (const auto& [model, prices] : entries)
        if (model == model_id) return &prices;
    return nullptr;
}

void CostLedger::add(const std::string& model_id, std::int64_t input_tokens,
                     std::int64_t output_tokens) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = std::find_if(totals_.begin(), totals_.end(),
                           [&](const auto& entry) { return entry.first == model_id; });
    if (it == totals_.end()) {
        totals_.emplace_back(model_id, Totals{});
        it = std::prev(totals_.end());
    }
    it->second.input_tokens += input_tokens;
    it->second.output_tokens += output_tokens;
    it->second.attempts += 1;
}

std::vector<std::pair<std::string, CostLedger::Totals>> CostLedger::snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return totals_;
}

std::vector<CostRow> estimate_cost(const CostLedger& ledger, const PriceTable& prices) {
    std::vector<CostRow> rows;
    for (const auto& [model, totals] : ledger.snapshot()) {
        CostRow row;
        row.model_id = model;
        row.input_tokens = totals.input_tokens;
        row.output_tokens = totals.output_tokens;
        row.attempts = totals.attempts;
        if (const ModelPrices* p = prices.find(model)) {
            row.usd = (static_cast<double>(totals.input_tokens) * p->input_per_million +
                       static_cast<double>(totals.output_tokens) * p->output_per_million) /
                      1e6;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::ordered_json cost_report_json(const std::vector<CostRow>& rows) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json r{{"model", row.model_id},
                                 {"input_tokens", row.input_tokens},
                                 {"output_tokens", row.output_tokens},
                                 {"attempts", row.attempts}};
        if (row.usd)
            r["usd"] = *row.usd;
        else
            r["usd"] = nullptr;
        out.push_back(std::move(r));
    }
    return out;
}

ChatBackend::Reply parse_completion_response(const std::string& body) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw GatewayError("response body is not JSON", 0);
    ChatBackend::Reply reply;
    auto choices = j.find("choices");
    if (choices == j.end() || !choices->is_array() || choices->empty())
        throw GatewayError("response has no choices", 0);
    const auto& message = (*choices)[0].value("message", nlohmann::ordered_json::object());
    if (!message.contains("content") || !message["content"].is_string())
        throw GatewayError("response choice has no message content", 0);
    reply.content = message["content"].get<std::string>();
    if (j.contains("usage") && j["usage"].is_object()) {
        const auto& usage = j["usage"];
        reply.input_tokens = usage.value("prompt_tokens", std::int64_t{0});
        reply.output_tokens = usage.value("completion_tokens", std::int64_t{0});
    }
    return reply;
}

ChatBackend::Reply MockBackend::complete(const nlohmann::ordered_json& request_body,
                                         const ModelConfig& cfg) {
    (void)cfg;
    Step step;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        requests_.push_back(request_body);
        if (steps_.empty()) throw GatewayError("mock backend has no scripted steps", 0);
        step = steps_[std::min(next_, steps_.size() - 1)];
        ++next_;
    }
    if (step.transport_error) throw GatewayError("scripted transport error", 0);
    return {step.content, step.input_tokens, step.output_tokens};
}

std::vector<nlohmann::ordered_json> MockBackend::requests() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return requests_;
}

Gateway::Gateway(std::shared_ptr<ChatBackend> backend, std::shared_ptr<CostLedger> ledger,
                 GatewayOptions options)
    : backend_(std::move(backend)), ledger_(std::move(ledger)), options_(std::move(options)) {
    if (!ledger_) ledger_ = std::make_shared<CostLedger>();
    if (!options_.sleeper)
        options_.sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    if (options_.max_in_flight < 1) options_.max_in_flight = 1;
}

nlohmann::ordered_json Gateway::build_request_body(const MessageSequence& messages,
                                                   const ModelConfig& cfg) {
    nlohmann::ordered_json body;
    body["model"] = cfg.model_id;
    body["messages"] = to_json(messages);
    body["temperature"] = cfg.temperature;
    return body;
}

void Gateway::acquire_slot() const {
    std::unique_lock<std::mutex> lock(slot_mutex_);
    slot_cv_.wait(lock, [this] { return in_flight_ < options_.max_in_flight; });
    ++in_flight_;
}

void Gateway::release_slot() const {
    {
        std::lock_guard<std::mutex> lock(slot_mutex_);
        --in_flight_;
    }
    slot_cv_.notify_one();
}

CompletionResult Gateway::complete_with_retry(const MessageSequence& messages,
                                              const ModelConfig& cfg,
                                              const SuccessPredicate& is_success) const {
    nlohmann::ordered_json body = build_request_body(messages, cfg);
    std::string last_failure = "no attempts made";

    for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
        if (attempt > 1) options_.sleeper(options_.backoff);
        if (options_.observer) options_.observer(body);

        ChatBackend::Reply reply;
        bool transport_ok = true;
        acquire_slot();
        try {
            reply = backend_->complete(body, cfg);
        } catch (const std::exception& e) {
            transport_ok = false;
            last_failure = e.what();
        }
        release_slot();

        ledger_->add(cfg.model_id, reply.input_tokens, reply.output_tokens);
        if (!transport_ok) continue;

        if (!is_success || is_success(reply.content))
            return {reply.content, reply.input_tokens, reply.output_tokens, attempt};
        last_failure = "response content failed validation";
    }
    throw GatewayError(last_failure, cfg.max_attempts);
}

} // namespace mole
