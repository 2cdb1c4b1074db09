#include "mole/gateway.hpp"

#include "mole/errors.hpp"

#include <httplib.h>

#include <cmath>
#include <cstdlib>
#include <string>

namespace mole {

namespace {

struct Endpoint {
    std::string base; // scheme://host[:port]
    std::string path;
};

Endpoint split_endpoint(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw GatewayError("endpoint url has no scheme: " + url, 0);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

class HttpBackend : public ChatBackend {
public:
    Reply complete(const nlohmann::ordered_json& request_body, const ModelConfig& cfg) override {
        Endpoint endpoint = split_endpoint(cfg.endpoint_url);
        httplib::Client client(endpoint.base);
        client.set_follow_location(true);

        auto seconds = static_cast<time_t>(cfg.request_timeout_seconds);
        auto micros = static_cast<time_t>(
            std::llround((cfg.request_timeout_seconds - static_cast<double>(seconds)) * 1e6));
        client.set_connection_timeout(seconds, micros);
        client.set_read_timeout(seconds, micros);
        client.set_write_timeout(seconds, micros);

        httplib::Headers headers;
        if (!cfg.api_key_env.empty()) {
            const char* key = std::getenv(cfg.api_key_env.c_str());
            if (key != nullptr && *key != '\0')
                headers.emplace("Authorization", std::string("Bearer ") + key);
        }

        auto res = client.Post(endpoint.path, headers, request_body.dump(), "application/json");
        if (!res)
            throw GatewayError("transport error: " + httplib::to_string(res.error()), 0);
        if (res->status < 200 || res->status >= 300)
            throw GatewayError("http status " + std::to_string(res->status) + ": " +
                                   res->body.substr(0, 200),
                               0);
        return parse_completion_response(res->body);
    }
};

} // namespace

std::unique_ptr<ChatBackend> make_http_backend() { return std::make_unique<HttpBackend>(); }

} // namespace mole
