#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convsim/embed/embedder.hpp"
#include "convsim/gateway/provider.hpp"

namespace convsim::runner {

enum class ExperimentKind { diversity, adherence, drift, stability, revisit };

std::string to_string(ExperimentKind kind);
ExperimentKind kind_from_string(const std::string& name);

/// One experiment design: which evaluation task, at what scale, against which
/// providers. Paper-scale presets ship under the names paper-diversity,
/// paper-adherence, paper-drift, paper-stability, paper-revisit; `scale`
/// multiplies the per-arm conversation counts so desk-scale runs use the
/// same code path.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::diversity;
    std::string preset_name;
    uint64_t seed = 1;
    double scale = 1.0;
    std::size_t profile_count = 10;
    std::vector<int> turn_lengths{10};
    std::vector<std::string> industry_pool;
    std::vector<gateway::ProviderConfig> providers;
    gateway::ProviderConfig judge_provider;
    embed::EmbeddingConfig embedding;
    double cluster_threshold = 0.85;
    int workers = 2;
    std::string human_labels_file;
    std::string out_dir;

    static ExperimentConfig preset(const std::string& name);
    static ExperimentConfig from_json_text(const std::string& text);

    /// Canonical JSON of every semantic field (paths like out_dir and cache
    /// locations excluded); its SHA-256 is the manifest integrity hash.
    std::string canonical_json() const;
    std::string config_hash() const;

    std::size_t scaled_profiles() const;
};

struct RunSummary {
    std::size_t cells_total = 0;
    std::size_t cells_completed = 0;   // completed in this invocation
    std::size_t cells_skipped = 0;     // already on disk
    std::size_t cells_failed = 0;
    uint64_t provider_calls = 0;
    std::string out_dir;
};

/// Generates (or replays from cache) every conversation in the design grid,
/// computes the kind's metrics, and writes per-cell records plus a manifest.
/// Per-cell provider failures become failure records; the run continues.
RunSummary run_experiment(const ExperimentConfig& config);

/// Completes only the missing cells of an interrupted run. Refuses to touch
/// a directory whose manifest hash does not match its embedded config.
RunSummary resume(const std::string& run_dir);

/// Aggregates cell records into report files (format: csv, jsonl, markdown)
/// under <run_dir>/reports. Returns the paths written.
std::vector<std::string> report(const std::string& run_dir, const std::string& format);

/// Built-in provider registry for the CLI: "mock", "openai", or "custom"
/// (endpoint/model/key from CONVSIM_ENDPOINT, CONVSIM_MODEL, CONVSIM_API_KEY).
gateway::ProviderConfig provider_by_id(const std::string& id);

}  // namespace convsim::runner
