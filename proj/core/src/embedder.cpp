#include "convsim/embed/embedder.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/util/rng.hpp"
#include "convsim/util/sha256.hpp"
#include "convsim/util/strings.hpp"

#ifdef CONVSIM_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace convsim::embed {

namespace {

std::vector<std::string> hash_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

void add_token_direction(std::vector<double>& acc, const std::string& token) {
    Rng rng(fnv1a64(token));
    for (auto& v : acc) {
        v += rng.unit() * 2.0 - 1.0;
    }
}

}  // namespace

StubEmbedder::StubEmbedder(int dimension, std::string model_id)
    : dimension_(dimension), model_id_(std::move(model_id)) {
    if (dimension_ < 1) {
        throw ConfigError("embedding dimension must be >= 1");
    }
}

std::vector<EmbeddingVector> StubEmbedder::embed(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        std::vector<double> acc(static_cast<size_t>(dimension_), 0.0);
        auto tokens = hash_tokens(text);
        if (tokens.empty()) {
            tokens.push_back("\x1f" + text);  // punctuation-only text still embeds
        }
        for (const auto& token : tokens) {
            add_token_direction(acc, token);
        }
        double norm = 0.0;
        for (double v : acc) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            acc[0] = 1.0;
            norm = 1.0;
        }
        EmbeddingVector vec;
        vec.model_id = model_id_;
        vec.values.reserve(acc.size());
        for (double v : acc) {
            vec.values.push_back(static_cast<float>(v / norm));
        }
        out.push_back(std::move(vec));
    }
    return out;
}

namespace {

// OpenAI-style embeddings endpoint client.
class HttpEmbedder final : public Embedder {
public:
    explicit HttpEmbedder(EmbeddingConfig config) : config_(std::move(config)) {
        if (config_.endpoint.empty()) {
            throw ConfigError("http embedder requires an endpoint");
        }
    }

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
        nlohmann::json body;
        body["model"] = config_.model_id;
        body["input"] = texts;

        httplib::Headers headers;
        if (!config_.credential_env.empty()) {
            const char* key = std::getenv(config_.credential_env.c_str());
            if (key == nullptr || *key == '\0') {
                throw ConfigError("credential env var " + config_.credential_env + " not set");
            }
            headers.emplace("Authorization", std::string("Bearer ") + key);
        }

        const auto [host, path] = split_endpoint(config_.endpoint);
        auto client = make_client(host);
        auto res = client->Post(path, headers, body.dump(), "application/json");
        if (!res) {
            throw ProviderError("embedding request to " + config_.endpoint + " failed: " +
                                httplib::to_string(res.error()));
        }
        if (res->status < 200 || res->status >= 300) {
            throw ProviderError("embedding request returned HTTP " + std::to_string(res->status) +
                                ": " + res->body);
        }
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::parse_error& e) {
            throw ProviderError(std::string("embedding response is not JSON: ") + e.what());
        }
        std::vector<EmbeddingVector> out;
        try {
            for (const auto& item : doc.at("data")) {
                EmbeddingVector vec;
                vec.model_id = config_.model_id;
                for (const auto& v : item.at("embedding")) {
                    vec.values.push_back(v.get<float>());
                }
                out.push_back(std::move(vec));
            }
        } catch (const nlohmann::json::exception& e) {
            throw ProviderError(std::string("unexpected embedding response shape: ") + e.what());
        }
        if (out.size() != texts.size()) {
            throw ProviderError("embedding response count mismatch");
        }
        for (const auto& vec : out) {
            if (config_.dimension > 0 &&
                vec.values.size() != static_cast<size_t>(config_.dimension)) {
                throw ProviderError("embedding dimension " + std::to_string(vec.values.size()) +
                                    " does not match the declared " +
                                    std::to_string(config_.dimension));
            }
            for (float v : vec.values) {
                if (!std::isfinite(v)) {
                    throw ProviderError("embedding contains non-finite entries");
                }
            }
        }
        return out;
    }

    const std::string& model_id() const override { return config_.model_id; }
    int dimension() const override { return config_.dimension; }

private:
    static std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
        const auto scheme_end = endpoint.find("://");
        const size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
        const auto path_start = endpoint.find('/', host_start);
        if (path_start == std::string::npos) {
            return {endpoint, "/"};
        }
        return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
    }

    std::unique_ptr<httplib::Client> make_client(const std::string& host) const {
        auto client = std::make_unique<httplib::Client>(host);
        client->set_connection_timeout(30, 0);
        client->set_read_timeout(60, 0);
        return client;
    }

    EmbeddingConfig config_;
};

}  // namespace

CachingEmbedder::CachingEmbedder(std::unique_ptr<Embedder> inner, std::string cache_dir)
    : inner_(std::move(inner)), cache_dir_(std::move(cache_dir)) {
    std::filesystem::create_directories(cache_dir_);
}

std::vector<EmbeddingVector> CachingEmbedder::embed(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out(texts.size());
    std::vector<size_t> missing;
    std::vector<std::string> missing_texts;

    auto key_path = [&](const std::string& text) {
        return std::filesystem::path(cache_dir_) /
               (sha256_hex(inner_->model_id() + "\x1f" + text) + ".vec");
    };

    for (size_t i = 0; i < texts.size(); ++i) {
        const auto path = key_path(texts[i]);
        std::ifstream in(path, std::ios::binary);
        if (in.good()) {
            uint32_t dim = 0;
            in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
            EmbeddingVector vec;
            vec.model_id = inner_->model_id();
            vec.values.resize(dim);
            in.read(reinterpret_cast<char*>(vec.values.data()),
                    static_cast<std::streamsize>(dim * sizeof(float)));
            if (in.good()) {
                out[i] = std::move(vec);
                continue;
            }
        }
        missing.push_back(i);
        missing_texts.push_back(texts[i]);
    }

    if (!missing.empty()) {
        ++backend_calls_;
        auto fresh = inner_->embed(missing_texts);
        for (size_t j = 0; j < missing.size(); ++j) {
            const auto& vec = fresh[j];
            std::string blob;
            const uint32_t dim = static_cast<uint32_t>(vec.values.size());
            blob.append(reinterpret_cast<const char*>(&dim), sizeof(dim));
            blob.append(reinterpret_cast<const char*>(vec.values.data()),
                        dim * sizeof(float));
            write_file_atomic(key_path(missing_texts[j]).string(), blob);
            out[missing[j]] = std::move(fresh[j]);
        }
    }
    return out;
}

std::unique_ptr<Embedder> make_embedder(const EmbeddingConfig& config) {
    std::unique_ptr<Embedder> base;
    if (config.provider == "stub") {
        base = std::make_unique<StubEmbedder>(config.dimension, config.model_id);
    } else if (config.provider == "http") {
        base = std::make_unique<HttpEmbedder>(config);
    } else {
        throw ConfigError("unknown embedding provider: " + config.provider);
    }
    if (!config.cache_dir.empty()) {
        return std::make_unique<CachingEmbedder>(std::move(base), config.cache_dir);
    }
    return base;
}

std::vector<EmbeddingVector> embed_sentences(const std::vector<std::string>& texts,
                                             Embedder& embedder) {
    for (size_t i = 0; i < texts.size(); ++i) {
        if (texts[i].empty()) {
            throw InputError("cannot embed empty text at index " + std::to_string(i));
        }
    }
    if (texts.empty()) return {};
    return embedder.embed(texts);
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.values.size() != b.values.size()) {
        throw InputError("cosine similarity dimension mismatch: " +
                         std::to_string(a.values.size()) + " vs " +
                         std::to_string(b.values.size()));
    }
    if (a.values.empty()) {
        throw InputError("cosine similarity of empty vectors is undefined");
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        const double x = a.values[i];
        const double y = b.values[i];
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if (na == 0.0 || nb == 0.0) {
        throw InputError("cosine similarity is undefined for a zero vector");
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace convsim::embed
