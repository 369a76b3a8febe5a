#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace documint::embed {

struct EmbeddingVector {
    std::vector<double> values;
    std::string provider_id;
    std::size_t dimension = 0;
};

struct ProviderConfig {
    enum class Kind { builtin_hash, remote };

    Kind kind = Kind::builtin_hash;
    std::string endpoint_url;                           // remote only
    std::chrono::milliseconds timeout{10000};
    std::size_t dimension = 256;                        // builtin only
};

// Bag-of-words embedding: metric-rule tokens, lowercased, FNV-1a 64-bit
// hashed into `dimension` buckets with +1 counts. Deterministic across
// platforms. Throws EmptyTextError; dimension must be >= 8.
EmbeddingVector embed_builtin(std::string_view text, std::size_t dimension = 256);

class Embedder {
public:
    virtual ~Embedder() = default;

    // One vector per input text, order preserved, uniform dimension.
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;

    virtual std::string provider_id() const = 0;
};

class BuiltinEmbedder final : public Embedder {
public:
    explicit BuiltinEmbedder(std::size_t dimension = 256) : dimension_(dimension) {}

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    std::string provider_id() const override;

private:
    std::size_t dimension_;
};

// POST {"texts": [...]} -> {"vectors": [[...], ...]}. Transport failures are
// retried up to `max_retries` extra attempts with exponential backoff; a
// malformed or arity-violating response is a ContractViolationError and is
// not retried. Thread-safe: each call uses an independent connection.
class RemoteEmbedder final : public Embedder {
public:
    RemoteEmbedder(std::string endpoint_url,
                   std::chrono::milliseconds timeout = std::chrono::milliseconds(10000),
                   int max_retries = 2,
                   std::chrono::milliseconds initial_backoff = std::chrono::milliseconds(100));

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    std::string provider_id() const override;

private:
    std::string endpoint_url_;
    std::chrono::milliseconds timeout_;
    int max_retries_;
    std::chrono::milliseconds initial_backoff_;
};

std::unique_ptr<Embedder> make_embedder(const ProviderConfig& config);

}  // namespace documint::embed
