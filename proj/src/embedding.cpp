#include "documint/embedding.hpp"

#include <stdexcept>

#include "documint/errors.hpp"
#include "documint/metrics.hpp"
#include "documint/remote.hpp"
#include "documint/util.hpp"

namespace documint::embed {

EmbeddingVector embed_builtin(std::string_view text, std::size_t dimension) {
    if (dimension < 8) throw std::invalid_argument("embedding dimension must be >= 8");
    if (util::trim(text).empty()) throw EmptyTextError();
    EmbeddingVector out;
    out.values.assign(dimension, 0.0);
    out.dimension = dimension;
    out.provider_id = "builtin_hash/" + std::to_string(dimension);
    for (auto& token : metrics::words(text)) {
        for (auto& c : token) {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        out.values[util::fnv1a64(token) % dimension] += 1.0;
    }
    return out;
}

std::vector<EmbeddingVector> BuiltinEmbedder::embed(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) out.push_back(embed_builtin(text, dimension_));
    return out;
}

std::string BuiltinEmbedder::provider_id() const {
    return "builtin_hash/" + std::to_string(dimension_);
}

RemoteEmbedder::RemoteEmbedder(std::string endpoint_url,
                               std::chrono::milliseconds timeout,
                               int max_retries,
                               std::chrono::milliseconds initial_backoff)
    : endpoint_url_(std::move(endpoint_url)),
      timeout_(timeout),
      max_retries_(max_retries),
      initial_backoff_(initial_backoff) {}

std::vector<EmbeddingVector> RemoteEmbedder::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) throw std::invalid_argument("embed batch is empty");
    nlohmann::json payload;
    payload["texts"] = texts;
    nlohmann::json body =
        remote::post_json(endpoint_url_, payload, timeout_, max_retries_, initial_backoff_);

    if (!body.is_object() || !body.contains("vectors") || !body["vectors"].is_array()) {
        throw ContractViolationError(endpoint_url_ + ": response lacks a \"vectors\" array");
    }
    const auto& vectors = body["vectors"];
    if (vectors.size() != texts.size()) {
        throw ContractViolationError(endpoint_url_ + ": sent " + std::to_string(texts.size()) +
                                     " texts, received " + std::to_string(vectors.size()) +
                                     " vectors");
    }
    std::vector<EmbeddingVector> out;
    out.reserve(vectors.size());
    std::size_t dimension = 0;
    for (const auto& row : vectors) {
        if (!row.is_array() || row.empty()) {
            throw ContractViolationError(endpoint_url_ + ": vector rows must be non-empty arrays");
        }
        EmbeddingVector vec;
        vec.provider_id = endpoint_url_;
        vec.values.reserve(row.size());
        for (const auto& cell : row) {
            if (!cell.is_number()) {
                throw ContractViolationError(endpoint_url_ + ": vector cells must be numbers");
            }
            vec.values.push_back(cell.get<double>());
        }
        vec.dimension = vec.values.size();
        if (dimension == 0) dimension = vec.dimension;
        if (vec.dimension != dimension) {
            throw ContractViolationError(endpoint_url_ + ": vectors have mixed dimensions " +
                                         std::to_string(dimension) + " and " +
                                         std::to_string(vec.dimension));
        }
        out.push_back(std::move(vec));
    }
    return out;
}

std::string RemoteEmbedder::provider_id() const { return endpoint_url_; }

std::unique_ptr<Embedder> make_embedder(const ProviderConfig& config) {
    if (config.kind == ProviderConfig::Kind::builtin_hash) {
        return std::make_unique<BuiltinEmbedder>(config.dimension);
    }
    if (config.endpoint_url.empty()) {
        throw std::invalid_argument("remote embedder requires an endpoint URL");
    }
    return std::make_unique<RemoteEmbedder>(config.endpoint_url, config.timeout);
}

}  // namespace documint::embed
