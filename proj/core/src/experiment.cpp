#include "convsim/runner/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/gateway/gateway.hpp"
#include "convsim/metrics/adherence.hpp"
#include "convsim/metrics/drift.hpp"
#include "convsim/metrics/entities.hpp"
#include "convsim/metrics/stability.hpp"
#include "convsim/persona/persona.hpp"
#include "convsim/prompt/prompt.hpp"
#include "convsim/schema/json_io.hpp"
#include "convsim/schema/randomize.hpp"
#include "convsim/util/rng.hpp"
#include "convsim/util/sha256.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::runner {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

const std::vector<std::string>& default_industries() {
    static const std::vector<std::string> pool = {
        "food-business", "technology", "healthcare",  "retail",      "education",
        "fitness",       "logistics",  "hospitality", "agriculture", "consulting",
        "manufacturing", "creative-services"};
    return pool;
}

ojson provider_to_json(const gateway::ProviderConfig& p) {
    ojson out;
    out["providerId"] = p.provider_id;
    out["modelId"] = p.model_id;
    out["endpoint"] = p.endpoint;
    out["credentialEnv"] = p.credential_env;
    if (p.temperature) out["temperature"] = *p.temperature;
    out["timeoutSeconds"] = p.timeout_seconds;
    out["maxRetries"] = p.max_retries;
    out["requestsPerSecond"] = p.requests_per_second;
    out["fixtureDir"] = p.fixture_dir;
    return out;
}

gateway::ProviderConfig provider_from_json(const ojson& doc) {
    gateway::ProviderConfig p;
    p.provider_id = doc.value("providerId", "mock");
    p.model_id = doc.value("modelId", "mock-1");
    p.endpoint = doc.value("endpoint", "");
    p.credential_env = doc.value("credentialEnv", "");
    if (doc.contains("temperature")) p.temperature = doc.at("temperature").get<double>();
    p.timeout_seconds = doc.value("timeoutSeconds", 60.0);
    p.max_retries = doc.value("maxRetries", 3);
    p.requests_per_second = doc.value("requestsPerSecond", 0.0);
    p.fixture_dir = doc.value("fixtureDir", "");
    return p;
}

struct Cell {
    std::string id;
    std::size_t provider_index = 0;
    std::string arm;  // "" | "A" | "F" | "baseline" | "full" | "formality" | "technical"
    std::size_t profile_index = 0;
    int turns = 0;
    int kgl = 0;  // 0 = not part of this design
};

std::string pad_index(std::size_t i) {
    std::string s = std::to_string(i);
    while (s.size() < 4) s.insert(s.begin(), '0');
    return s;
}

std::vector<Cell> build_grid(const ExperimentConfig& config) {
    std::vector<Cell> cells;
    const std::size_t profiles = config.scaled_profiles();

    auto push = [&](std::size_t provider, const std::string& arm, std::size_t profile, int turns,
                    int kgl) {
        Cell cell;
        cell.provider_index = provider;
        cell.arm = arm;
        cell.profile_index = profile;
        cell.turns = turns;
        cell.kgl = kgl;
        std::ostringstream id;
        id << to_string(config.kind) << "-p" << provider;
        if (!arm.empty()) id << "-" << arm;
        id << "-i" << pad_index(profile) << "-t" << turns;
        if (kgl > 0) id << "-k" << kgl;
        cell.id = id.str();
        cells.push_back(std::move(cell));
    };

    for (std::size_t p = 0; p < config.providers.size(); ++p) {
        switch (config.kind) {
            case ExperimentKind::diversity:
                for (std::size_t i = 0; i < profiles; ++i) {
                    push(p, "", i, config.turn_lengths.front(), 0);
                }
                break;
            case ExperimentKind::adherence:
                for (int turns : config.turn_lengths) {
                    for (std::size_t i = 0; i < profiles; ++i) {
                        push(p, "", i, turns, 0);
                    }
                }
                break;
            case ExperimentKind::drift:
                for (const char* arm : {"A", "F", "baseline"}) {
                    for (std::size_t i = 0; i < profiles; ++i) {
                        push(p, arm, i, config.turn_lengths.front(), 0);
                    }
                }
                break;
            case ExperimentKind::stability:
                for (const char* arm : {"full", "formality", "technical"}) {
                    for (std::size_t i = 0; i < profiles; ++i) {
                        push(p, arm, i, config.turn_lengths.front(), 0);
                    }
                }
                break;
            case ExperimentKind::revisit:
                for (int kgl = 1; kgl <= 5; ++kgl) {
                    for (int turns : config.turn_lengths) {
                        for (std::size_t i = 0; i < profiles; ++i) {
                            push(p, "", i, turns, kgl);
                        }
                    }
                }
                break;
        }
    }
    return cells;
}

std::string build_constraints(const ExperimentConfig& config, const Cell& cell,
                              const persona::EntrepreneurProfile& profile) {
    ojson constraints;
    constraints["fundamentals.turns"] = cell.turns;
    constraints["learningApproach.industryContext"] = profile.industry;
    constraints["fundamentals.topicScope"] =
        std::vector<std::string>{profile.business_idea, profile.industry};
    switch (config.kind) {
        case ExperimentKind::drift:
            constraints["conversationDynamics.smoothnessFactor"] = cell.arm;
            constraints["fundamentals.initiator"] = "user";
            break;
        case ExperimentKind::stability:
            // the "omitted" parameter is pinned to its midpoint so only the
            // controlled dimension varies across the arm
            if (cell.arm == "formality") {
                constraints["linguisticPatterns.technicalLanguageLevel"] = 0.5;
            } else if (cell.arm == "technical") {
                constraints["conversationDynamics.formality"] = 0.5;
            }
            break;
        case ExperimentKind::revisit:
            constraints["participants.knowledgeGapLevel"] = cell.kgl;
            break;
        default:
            break;
    }
    return constraints.dump();
}

std::string first_user_turn(const gateway::Transcript& transcript) {
    for (const auto& turn : transcript.turns) {
        if (turn.speaker == gateway::Speaker::user) return turn.content;
    }
    return transcript.turns.front().content;
}

gateway::Transcript prefix_transcript(const gateway::Transcript& full, int length) {
    gateway::Transcript out = full;
    out.turns.resize(static_cast<std::size_t>(length));
    out.metadata.total_turns = length;
    return out;
}

class Runner {
public:
    Runner(ExperimentConfig config, bool resuming)
        : config_(std::move(config)), resuming_(resuming) {
        if (config_.out_dir.empty()) {
            throw ConfigError("experiment needs an output directory");
        }
        if (config_.providers.empty()) {
            throw ConfigError("experiment needs at least one provider");
        }
        for (int t : config_.turn_lengths) {
            if (t < 1) throw ConfigError("turn lengths must be >= 1");
        }
        if (config_.turn_lengths.empty()) {
            throw ConfigError("experiment needs at least one turn length");
        }
        if (config_.scaled_profiles() == 0) {
            throw ConfigError("design grid is empty");
        }

        const char* cache_override = std::getenv("SIM_CACHE_DIR");
        cache_root_ = cache_override != nullptr && *cache_override != '\0'
                          ? std::string(cache_override)
                          : (fs::path(config_.out_dir) / "cache").string();

        embedding_ = config_.embedding;
        if (embedding_.cache_dir.empty()) {
            embedding_.cache_dir = (fs::path(cache_root_) / "embeddings").string();
        }
    }

    RunSummary run() {
        prepare_manifest();

        const std::vector<Cell> cells = build_grid(config_);
        auto industries =
            config_.industry_pool.empty() ? default_industries() : config_.industry_pool;
        profiles_ = persona::generate_profiles(config_.seed, config_.scaled_profiles(), industries);

        gateway::Gateway gw(
            {.cache_dir = (fs::path(cache_root_) / "responses").string(), .cache_enabled = true});

        RunSummary summary;
        summary.cells_total = cells.size();
        summary.out_dir = config_.out_dir;

        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> completed{0};
        std::atomic<std::size_t> skipped{0};
        std::atomic<std::size_t> failed{0};

        auto worker = [&] {
            while (true) {
                const std::size_t index = next.fetch_add(1);
                if (index >= cells.size()) break;
                const Cell& cell = cells[index];
                const std::string record_path = cell_record_path(cell.id);
                if (fs::exists(record_path)) {
                    skipped.fetch_add(1);
                    continue;
                }
                try {
                    const ojson record = execute_cell(gw, cell);
                    write_file_atomic(record_path, record.dump(2) + "\n");
                    completed.fetch_add(1);
                } catch (const std::exception& e) {
                    ojson record = cell_header(cell);
                    record["error"] = e.what();
                    write_file_atomic(record_path, record.dump(2) + "\n");
                    failed.fetch_add(1);
                }
            }
        };

        const int worker_count = std::max(1, config_.workers);
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();

        summary.cells_completed = completed.load();
        summary.cells_skipped = skipped.load();
        summary.cells_failed = failed.load();
        summary.provider_calls = gw.provider_calls();

        ojson run_summary;
        run_summary["cellsTotal"] = summary.cells_total;
        run_summary["cellsCompleted"] = summary.cells_completed;
        run_summary["cellsSkipped"] = summary.cells_skipped;
        run_summary["cellsFailed"] = summary.cells_failed;
        run_summary["providerCalls"] = summary.provider_calls;
        write_file_atomic((fs::path(config_.out_dir) / "run_summary.json").string(),
                          run_summary.dump(2) + "\n");
        return summary;
    }

private:
    std::string cell_record_path(const std::string& cell_id) const {
        return (fs::path(config_.out_dir) / "metrics" / "cells" / (cell_id + ".json")).string();
    }

    void prepare_manifest() {
        const std::string manifest_path = (fs::path(config_.out_dir) / "manifest.json").string();
        if (fs::exists(manifest_path)) {
            ojson manifest = ojson::parse(read_file(manifest_path));
            const std::string recorded_hash = manifest.value("configHash", "");
            if (recorded_hash != config_.config_hash()) {
                throw ConfigError("run directory " + config_.out_dir +
                                  " holds a different experiment (config hash mismatch)");
            }
            return;
        }
        if (resuming_) {
            throw ConfigError("no manifest found in " + config_.out_dir);
        }
        ojson manifest;
        manifest["presetName"] = config_.preset_name;
        manifest["kind"] = to_string(config_.kind);
        manifest["configHash"] = config_.config_hash();
        manifest["config"] = ojson::parse(config_.canonical_json());
        manifest["templateVersion"] = prompt::PromptTemplates::builtin().version;
        {
            const std::time_t now = std::time(nullptr);
            char buf[32];
            std::tm tm_utc{};
            gmtime_r(&now, &tm_utc);
            std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
            manifest["createdAt"] = buf;
        }
        manifest["gridSize"] = build_grid(config_).size();
        write_file_atomic(manifest_path, manifest.dump(2) + "\n");
    }

    ojson cell_header(const Cell& cell) const {
        const auto& provider = config_.providers[cell.provider_index];
        ojson record;
        record["cellId"] = cell.id;
        record["kind"] = to_string(config_.kind);
        record["provider"] = provider.provider_id;
        record["model"] = provider.model_id;
        if (!cell.arm.empty()) record["arm"] = cell.arm;
        record["profileIndex"] = cell.profile_index;
        record["turns"] = cell.turns;
        if (cell.kgl > 0) record["knowledgeGapLevel"] = cell.kgl;
        return record;
    }

    ojson execute_cell(gateway::Gateway& gw, const Cell& cell) {
        const auto& provider = config_.providers[cell.provider_index];
        const bool is_baseline = cell.arm == "baseline";

        persona::EntrepreneurProfile profile;
        if (is_baseline) {
            profile = persona::baseline_profile(mix_seed(config_.seed, 0xBA5E0000ULL + cell.profile_index));
        } else {
            profile = profiles_[cell.profile_index];
        }

        const uint64_t cell_seed = mix_seed(config_.seed, fnv1a64(cell.id));

        prompt::PromptBundle bundle;
        std::optional<schema::ConversationParameters> params;
        if (is_baseline) {
            bundle = prompt::compile_baseline(profile, cell.turns);
        } else {
            params = schema::randomize_parameters(cell_seed,
                                                  build_constraints(config_, cell, profile));
            bundle = prompt::compile_parameterized(profile, *params);
        }
        save_bundle(bundle);

        gateway::Transcript transcript = gw.generate_conversation(bundle, provider, cell_seed);
        const std::string transcript_name =
            bundle.content_hash.substr(0, 24) + "-" + provider.model_id + ".json";
        const std::string transcript_path =
            (fs::path(config_.out_dir) / "transcripts" / transcript_name).string();
        if (!fs::exists(transcript_path)) {
            write_file_atomic(transcript_path, gateway::serialize_transcript(transcript));
        }

        ojson record = cell_header(cell);
        record["profileId"] = profile.id;
        record["promptHash"] = bundle.content_hash;
        record["mode"] = is_baseline ? "baseline" : "parameterized";
        record["hasParameterBlock"] = bundle.parameter_block.has_value();
        record["transcriptFile"] = "transcripts/" + transcript_name;
        record["flags"] = transcript.quality_flags;
        if (params) {
            record["params"] = ojson::parse(schema::serialize_parameters(*params));
        }
        record["metrics"] = compute_metrics(gw, cell, profile, params, transcript);
        return record;
    }

    void save_bundle(const prompt::PromptBundle& bundle) const {
        const std::string path =
            (fs::path(config_.out_dir) / "prompts" / (bundle.content_hash + ".json")).string();
        if (fs::exists(path)) return;
        ojson doc;
        doc["contentHash"] = bundle.content_hash;
        doc["mode"] = bundle.mode == prompt::PromptMode::baseline ? "baseline" : "parameterized";
        doc["templateVersion"] = bundle.template_version;
        doc["targetTurns"] = bundle.target_turns;
        doc["systemText"] = bundle.system_text;
        doc["instructionText"] = bundle.instruction_text;
        if (bundle.parameter_block) {
            doc["parameterBlock"] = *bundle.parameter_block;
        }
        write_file_atomic(path, doc.dump(2) + "\n");
    }

    ojson compute_metrics(gateway::Gateway& gw, const Cell& cell,
                          const persona::EntrepreneurProfile& profile,
                          const std::optional<schema::ConversationParameters>& params,
                          const gateway::Transcript& transcript) {
        ojson out;
        switch (config_.kind) {
            case ExperimentKind::diversity: {
                out["topic"] = first_user_turn(transcript);
                break;
            }
            case ExperimentKind::adherence: {
                const auto inferred = gw.judge_infer_parameters(transcript, config_.judge_provider);
                ojson judge;
                judge["numeric"] = inferred.numeric;
                judge["categorical"] = inferred.categorical;
                judge["invalid"] = inferred.invalid;
                judge["missing"] = inferred.missing;
                out["judge"] = std::move(judge);
                if (params) {
                    out["setNumeric"] = metrics::judged_numeric_values(*params);
                    out["setCategorical"] = metrics::judged_categorical_values(*params);
                }
                break;
            }
            case ExperimentKind::drift: {
                auto embedder = embed::make_embedder(embedding_);
                const auto series =
                    metrics::topic_drift_series(transcript, profile.business_idea, *embedder);
                ojson points = ojson::array();
                int ordinal = 1;
                for (const auto& point : series.points) {
                    points.push_back({{"userTurn", ordinal++},
                                      {"turn", point.turn},
                                      {"similarity", point.similarity},
                                      {"drift", point.drift}});
                }
                out["openingTopic"] = profile.business_idea;
                out["driftSeries"] = std::move(points);
                break;
            }
            case ExperimentKind::stability: {
                const auto& scoring = metrics::ScoringConfig::builtin();
                ojson by_prefix = ojson::array();
                for (int prefix : {5, 10, 15, 20}) {
                    if (prefix > static_cast<int>(transcript.turns.size())) continue;
                    const auto slice = prefix_transcript(transcript, prefix);
                    const auto score = metrics::stability_score(slice, *params, scoring);
                    double controlled;
                    if (cell.arm == "formality") {
                        controlled = score.formality_error;
                    } else if (cell.arm == "technical") {
                        controlled = score.technical_error;
                    } else {
                        controlled = 0.5 * (score.formality_error + score.technical_error);
                    }
                    by_prefix.push_back({{"prefixTurns", prefix},
                                         {"formalityError", score.formality_error},
                                         {"technicalError", score.technical_error},
                                         {"stability", score.stability},
                                         {"controlledError", controlled}});
                }
                out["byPrefix"] = std::move(by_prefix);
                break;
            }
            case ExperimentKind::revisit: {
                const auto sets = metrics::extract_entities(transcript);
                const auto result = metrics::revisit_rate(sets);
                ojson fractions = ojson::array();
                for (const auto& [turn, fraction] : result.per_turn) {
                    fractions.push_back({{"turn", turn}, {"fraction", fraction}});
                }
                out["revisitRate"] = result.aggregate;
                out["rawMeanCount"] = result.raw_mean_count;
                out["perTurn"] = std::move(fractions);
                break;
            }
        }
        return out;
    }

    ExperimentConfig config_;
    bool resuming_;
    std::string cache_root_;
    embed::EmbeddingConfig embedding_;
    std::vector<persona::EntrepreneurProfile> profiles_;
};

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::diversity: return "diversity";
        case ExperimentKind::adherence: return "adherence";
        case ExperimentKind::drift: return "drift";
        case ExperimentKind::stability: return "stability";
        case ExperimentKind::revisit: return "revisit";
    }
    return "?";
}

ExperimentKind kind_from_string(const std::string& name) {
    if (name == "diversity") return ExperimentKind::diversity;
    if (name == "adherence") return ExperimentKind::adherence;
    if (name == "drift") return ExperimentKind::drift;
    if (name == "stability") return ExperimentKind::stability;
    if (name == "revisit") return ExperimentKind::revisit;
    throw ConfigError("unknown experiment kind: " + name);
}

std::size_t ExperimentConfig::scaled_profiles() const {
    const double scaled = static_cast<double>(profile_count) * scale;
    return static_cast<std::size_t>(std::max<long long>(1, std::llround(scaled)));
}

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
    ExperimentConfig config;
    config.preset_name = name;
    config.providers = {provider_by_id("mock")};
    config.judge_provider = provider_by_id("mock");

    if (name == "paper-diversity") {
        config.kind = ExperimentKind::diversity;
        config.profile_count = 800;
        config.turn_lengths = {10};
    } else if (name == "paper-adherence") {
        config.kind = ExperimentKind::adherence;
        config.profile_count = 200;
        config.turn_lengths = {5, 10, 15, 20};
    } else if (name == "paper-drift") {
        config.kind = ExperimentKind::drift;
        config.profile_count = 200;
        config.turn_lengths = {20};
    } else if (name == "paper-stability") {
        config.kind = ExperimentKind::stability;
        config.profile_count = 500;
        config.turn_lengths = {20};
    } else if (name == "paper-revisit") {
        config.kind = ExperimentKind::revisit;
        config.profile_count = 100;
        config.turn_lengths = {5, 10, 15, 20};
    } else {
        throw ConfigError("unknown preset: " + name);
    }
    return config;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed experiment config: ") + e.what());
    }

    ExperimentConfig config;
    if (doc.contains("preset")) {
        config = preset(doc.at("preset").get<std::string>());
    }
    if (doc.contains("kind")) config.kind = kind_from_string(doc.at("kind").get<std::string>());
    if (doc.contains("presetName")) config.preset_name = doc.at("presetName").get<std::string>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<uint64_t>();
    if (doc.contains("scale")) config.scale = doc.at("scale").get<double>();
    if (doc.contains("profileCount")) config.profile_count = doc.at("profileCount").get<std::size_t>();
    if (doc.contains("turnLengths")) {
        config.turn_lengths.clear();
        for (const auto& v : doc.at("turnLengths")) config.turn_lengths.push_back(v.get<int>());
    }
    if (doc.contains("industryPool")) {
        config.industry_pool.clear();
        for (const auto& v : doc.at("industryPool")) {
            config.industry_pool.push_back(v.get<std::string>());
        }
    }
    if (doc.contains("providers")) {
        config.providers.clear();
        for (const auto& v : doc.at("providers")) config.providers.push_back(provider_from_json(v));
    }
    if (doc.contains("judgeProvider")) {
        config.judge_provider = provider_from_json(doc.at("judgeProvider"));
    }
    if (doc.contains("embedding")) {
        const auto& e = doc.at("embedding");
        config.embedding.provider = e.value("provider", config.embedding.provider);
        config.embedding.model_id = e.value("modelId", config.embedding.model_id);
        config.embedding.dimension = e.value("dimension", config.embedding.dimension);
        config.embedding.endpoint = e.value("endpoint", config.embedding.endpoint);
        config.embedding.credential_env = e.value("credentialEnv", config.embedding.credential_env);
    }
    if (doc.contains("clusterThreshold")) {
        config.cluster_threshold = doc.at("clusterThreshold").get<double>();
    }
    if (doc.contains("workers")) config.workers = doc.at("workers").get<int>();
    if (doc.contains("humanLabelsFile")) {
        config.human_labels_file = doc.at("humanLabelsFile").get<std::string>();
    }
    return config;
}

std::string ExperimentConfig::canonical_json() const {
    ojson doc;
    doc["kind"] = to_string(kind);
    doc["presetName"] = preset_name;
    doc["seed"] = seed;
    doc["scale"] = scale;
    doc["profileCount"] = profile_count;
    doc["turnLengths"] = turn_lengths;
    doc["industryPool"] = industry_pool;
    ojson providers_json = ojson::array();
    for (const auto& p : providers) providers_json.push_back(provider_to_json(p));
    doc["providers"] = std::move(providers_json);
    doc["judgeProvider"] = provider_to_json(judge_provider);
    doc["embedding"] = {{"provider", embedding.provider},
                        {"modelId", embedding.model_id},
                        {"dimension", embedding.dimension},
                        {"endpoint", embedding.endpoint},
                        {"credentialEnv", embedding.credential_env}};
    doc["clusterThreshold"] = cluster_threshold;
    doc["workers"] = workers;
    doc["humanLabelsFile"] = human_labels_file;
    return doc.dump(2);
}

std::string ExperimentConfig::config_hash() const { return sha256_hex(canonical_json()); }

RunSummary run_experiment(const ExperimentConfig& config) {
    Runner runner(config, /*resuming=*/false);
    return runner.run();
}

RunSummary resume(const std::string& run_dir) {
    const std::string manifest_path = (fs::path(run_dir) / "manifest.json").string();
    if (!fs::exists(manifest_path)) {
        throw ConfigError("no manifest found in " + run_dir);
    }
    ojson manifest;
    try {
        manifest = ojson::parse(read_file(manifest_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!manifest.contains("config") || !manifest.contains("configHash")) {
        throw ConfigError("manifest is missing config or configHash");
    }
    ExperimentConfig config = ExperimentConfig::from_json_text(manifest.at("config").dump());
    config.out_dir = run_dir;
    if (config.config_hash() != manifest.at("configHash").get<std::string>()) {
        throw ConfigError("manifest has been edited: config hash mismatch, refusing to resume");
    }
    Runner runner(config, /*resuming=*/true);
    return runner.run();
}

gateway::ProviderConfig provider_by_id(const std::string& id) {
    gateway::ProviderConfig config;
    if (id == "mock") {
        config.provider_id = "mock";
        config.model_id = "mock-1";
        return config;
    }
    if (id == "openai") {
        config.provider_id = "openai";
        config.model_id = "gpt-4o-mini";
        config.endpoint = "https://api.openai.com/v1/chat/completions";
        config.credential_env = "OPENAI_API_KEY";
        return config;
    }
    if (id == "custom") {
        const char* endpoint = std::getenv("CONVSIM_ENDPOINT");
        const char* model = std::getenv("CONVSIM_MODEL");
        if (endpoint == nullptr || *endpoint == '\0') {
            throw ConfigError("provider \"custom\" needs CONVSIM_ENDPOINT set");
        }
        config.provider_id = "custom";
        config.endpoint = endpoint;
        config.model_id = model != nullptr && *model != '\0' ? model : "custom-model";
        config.credential_env = "CONVSIM_API_KEY";
        return config;
    }
    throw ConfigError("unknown provider id: " + id + " (expected mock, openai, or custom)");
}

}  // namespace convsim::runner
