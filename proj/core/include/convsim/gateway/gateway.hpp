#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "convsim/gateway/provider.hpp"
#include "convsim/gateway/transcript.hpp"
#include "convsim/prompt/prompt.hpp"

namespace convsim::gateway {

/// A judge's reconstruction of generation parameters from a transcript alone.
/// Paths use the parameter file format's dotted camelCase names.
struct InferredParameters {
    std::map<std::string, double> numeric;
    std::map<std::string, std::string> categorical;
    std::string judge_id = "llm";  // "llm" | "human"
    std::string raw_output;
    std::map<std::string, std::string> invalid;  // path -> raw value, excluded from scoring
    std::vector<std::string> missing;            // requested paths the judge did not answer
    std::string conversation_id;                 // for imported labels
    std::string annotator_id;

    bool operator==(const InferredParameters&) const = default;
};

/// One parameter the judge protocol asks about: either numeric with an
/// inclusive range or categorical with a closed label set. Values outside
/// the domain are recorded as invalid and excluded from scoring.
struct JudgePathSpec {
    std::string path;
    bool numeric = false;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::string> labels;
};

const std::vector<JudgePathSpec>& judge_path_specs();

struct GatewayOptions {
    std::string cache_dir;     // empty = caching disabled
    bool cache_enabled = true;
};

/// Talks to chat providers: generates conversations from prompt bundles and
/// runs the blinded parameter-inference protocol. A disk cache keyed by
/// (prompt hash, provider, model) sits in front of every call; rate limits
/// are enforced per provider across threads.
class Gateway {
public:
    explicit Gateway(GatewayOptions options = {});

    /// Generates and parses one conversation. A turn-count mismatch against
    /// the bundle is recorded as a quality flag, not an error.
    Transcript generate_conversation(const prompt::PromptBundle& bundle,
                                     const ProviderConfig& config, uint64_t seed = 0);

    /// Builds the blinded judge prompt (transcript + parameter definitions,
    /// never the true values) and parses the judge's structured answer.
    InferredParameters judge_infer_parameters(const Transcript& transcript,
                                              const ProviderConfig& config);

    /// Renders the judge prompt without calling any provider.
    static std::string render_judge_prompt(const Transcript& transcript);

    /// Number of provider invocations (cache misses) since construction.
    uint64_t provider_calls() const { return provider_calls_.load(); }

private:
    std::string call_with_cache(const PromptRequest& request, const ProviderConfig& config,
                                std::string* timestamp_out);
    void throttle(const ProviderConfig& config);

    GatewayOptions options_;
    std::atomic<uint64_t> provider_calls_{0};
    std::mutex buckets_mutex_;
    struct Bucket;
    std::map<std::string, std::shared_ptr<Bucket>> buckets_;
};

/// Parses the documented JSONL human-label format. Malformed rows become
/// row-level errors; well-formed rows still import.
struct LabelImport {
    std::vector<InferredParameters> records;
    std::vector<std::string> row_errors;
};

LabelImport import_human_labels(const std::string& path);

}  // namespace convsim::gateway
