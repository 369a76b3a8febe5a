#include "documint/remote.hpp"

#include <thread>

#include <httplib.h>

#include "documint/errors.hpp"
#include "documint/util.hpp"

namespace documint::remote {

namespace {

struct ParsedUrl {
    std::string host_port;  // "host:port" as httplib::Client accepts
    std::string path;
};

ParsedUrl parse_http_url(const std::string& url) {
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) != 0) {
        throw TransportError("unsupported URL (only http:// endpoints): " + url);
    }
    std::string rest = url.substr(scheme.size());
    std::size_t slash = rest.find('/');
    ParsedUrl out;
    if (slash == std::string::npos) {
        out.host_port = rest;
        out.path = "/";
    } else {
        out.host_port = rest.substr(0, slash);
        out.path = rest.substr(slash);
    }
    if (out.host_port.empty()) throw TransportError("URL has no host: " + url);
    return out;
}

}  // namespace

nlohmann::json post_json(const std::string& url,
                         const nlohmann::json& payload,
                         std::chrono::milliseconds timeout,
                         int max_retries,
                         std::chrono::milliseconds initial_backoff) {
    ParsedUrl parsed = parse_http_url(url);
    std::string body = payload.dump();

    std::string last_failure;
    std::chrono::milliseconds backoff = initial_backoff;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        if (attempt > 0) {
            util::log_debug("retrying " + url + " after " + last_failure);
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
        httplib::Client client(parsed.host_port);
        auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
        auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
        client.set_connection_timeout(seconds.count(), micros.count());
        client.set_read_timeout(seconds.count(), micros.count());
        client.set_write_timeout(seconds.count(), micros.count());

        auto result = client.Post(parsed.path.c_str(), body, "application/json");
        if (!result) {
            last_failure = "connection failure (" + httplib::to_string(result.error()) + ")";
            continue;
        }
        if (result->status >= 500) {
            last_failure = "server status " + std::to_string(result->status);
            continue;
        }
        if (result->status < 200 || result->status >= 300) {
            throw TransportError(url + " returned status " + std::to_string(result->status));
        }
        nlohmann::json parsed_body = nlohmann::json::parse(result->body, nullptr, false);
        if (parsed_body.is_discarded()) {
            throw ContractViolationError(url + " returned a non-JSON body");
        }
        return parsed_body;
    }
    throw TransportError(url + ": " + last_failure + " after " +
                         std::to_string(max_retries + 1) + " attempts");
}

}  // namespace documint::remote
