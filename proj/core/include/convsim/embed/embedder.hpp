#pragma once

#include <memory>
#include <string>
#include <vector>

namespace convsim::embed {

struct EmbeddingVector {
    std::vector<float> values;
    std::string model_id;

    std::size_t dimension() const { return values.size(); }
    bool operator==(const EmbeddingVector&) const = default;
};

/// Selects and configures an embedding backend.
///  - provider "stub": deterministic token-bag hash vectors, no network.
///  - provider "http": POST {model, input[]} to an embeddings endpoint.
struct EmbeddingConfig {
    std::string provider = "stub";
    std::string model_id = "stub-64";
    int dimension = 64;
    std::string endpoint;
    std::string credential_env;
    std::string cache_dir;  // empty = no disk cache
};

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
    virtual const std::string& model_id() const = 0;
    virtual int dimension() const = 0;

    EmbeddingVector embed_one(const std::string& text) { return embed({text}).front(); }
};

// Pure hash-to-unit-vector map: each token hashes to a fixed pseudo-random
// direction and the text embeds as the normalized token sum, so texts sharing
// vocabulary land closer together. Stable across processes and platforms.
class StubEmbedder final : public Embedder {
public:
    explicit StubEmbedder(int dimension = 64, std::string model_id = "stub-64");
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    const std::string& model_id() const override { return model_id_; }
    int dimension() const override { return dimension_; }

private:
    int dimension_;
    std::string model_id_;
};

/// Wraps any embedder with a disk cache keyed by (model id, text digest).
class CachingEmbedder final : public Embedder {
public:
    CachingEmbedder(std::unique_ptr<Embedder> inner, std::string cache_dir);
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    const std::string& model_id() const override { return inner_->model_id(); }
    int dimension() const override { return inner_->dimension(); }

    std::size_t backend_calls() const { return backend_calls_; }

private:
    std::unique_ptr<Embedder> inner_;
    std::string cache_dir_;
    std::size_t backend_calls_ = 0;
};

std::unique_ptr<Embedder> make_embedder(const EmbeddingConfig& config);

/// One vector per input text, order preserving. Empty strings are input
/// errors; an empty list is an empty result.
std::vector<EmbeddingVector> embed_sentences(const std::vector<std::string>& texts,
                                             Embedder& embedder);

/// dot(a,b) / (|a||b|). Dimension mismatch and zero vectors are input errors.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace convsim::embed
