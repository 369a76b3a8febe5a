#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

namespace documint::remote {

// POSTs `payload` as application/json and returns the parsed JSON body.
// Connection failures, timeouts and 5xx responses are retried up to
// `max_retries` extra attempts with exponential backoff, then surface as
// TransportError. Non-JSON bodies and non-2xx/5xx statuses raise
// ContractViolationError / TransportError without retry. Only plain http
// URLs are supported.
nlohmann::json post_json(const std::string& url,
                         const nlohmann::json& payload,
                         std::chrono::milliseconds timeout,
                         int max_retries = 2,
                         std::chrono::milliseconds initial_backoff = std::chrono::milliseconds(100));

}  // namespace documint::remote
