#include "convsim/gateway/gateway.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/gateway/response_cache.hpp"
#include "convsim/util/sha256.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::gateway {

const std::vector<JudgePathSpec>& judge_path_specs() {
    static const std::vector<JudgePathSpec> paths = {
        {"participants.knowledgeGapLevel", true, 1, 5, {}},
        {"participants.user.focusLevel", true, 1, 5, {}},
        {"participants.user.priorKnowledgeLevel", true, 1, 5, {}},
        {"participants.user.decisionMakingStyle",
         false, 0, 0,
         {"analytical", "intuitive", "consultative", "risk-averse", "impulsive"}},
        {"participants.user.feedbackReception",
         false, 0, 0,
         {"receptive", "balanced", "skeptical", "resistant"}},
        {"conversationDynamics.smoothnessFactor", false, 0, 0, {"A", "B", "C", "D", "E", "F"}},
        {"conversationDynamics.formality", true, 0, 1, {}},
        {"linguisticPatterns.technicalLanguageLevel", true, 0, 1, {}},
    };
    return paths;
}

namespace {

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string extract_json_object(const std::string& raw) {
    std::string cleaned;
    std::istringstream lines(raw);
    std::string line;
    while (std::getline(lines, line)) {
        if (starts_with(trim(line), "```")) continue;
        cleaned += line;
        cleaned += '\n';
    }
    const auto open = cleaned.find('{');
    const auto close = cleaned.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        return cleaned;
    }
    return cleaned.substr(open, close - open + 1);
}

}  // namespace

struct Gateway::Bucket {
    std::mutex mutex;
    double tokens = 1.0;
    double rate = 0.0;
    std::chrono::steady_clock::time_point last = std::chrono::steady_clock::now();
};

Gateway::Gateway(GatewayOptions options) : options_(std::move(options)) {}

void Gateway::throttle(const ProviderConfig& config) {
    if (config.requests_per_second <= 0.0) return;
    std::shared_ptr<Bucket> bucket;
    {
        std::lock_guard<std::mutex> lock(buckets_mutex_);
        auto& slot = buckets_[config.provider_id];
        if (!slot) {
            slot = std::make_shared<Bucket>();
            slot->rate = config.requests_per_second;
            slot->tokens = std::max(1.0, config.requests_per_second);
        }
        bucket = slot;
    }
    while (true) {
        double wait_seconds = 0.0;
        {
            std::lock_guard<std::mutex> lock(bucket->mutex);
            const auto now = std::chrono::steady_clock::now();
            const double elapsed = std::chrono::duration<double>(now - bucket->last).count();
            bucket->last = now;
            bucket->tokens = std::min(std::max(1.0, bucket->rate),
                                      bucket->tokens + elapsed * bucket->rate);
            if (bucket->tokens >= 1.0) {
                bucket->tokens -= 1.0;
                return;
            }
            wait_seconds = (1.0 - bucket->tokens) / bucket->rate;
        }
        std::this_thread::sleep_for(std::chrono::duration<double>(wait_seconds));
    }
}

std::string Gateway::call_with_cache(const PromptRequest& request, const ProviderConfig& config,
                                     std::string* timestamp_out) {
    if (config.max_retries < 0) {
        throw ConfigError("max retries must be >= 0");
    }
    if (config.timeout_seconds <= 0.0) {
        throw ConfigError("request timeout must be positive");
    }
    ResponseCache cache(options_.cache_dir, options_.cache_enabled);
    const std::string key = sha256_hex(request.content_hash + "\x1f" + config.provider_id +
                                       "\x1f" + config.model_id + "\x1f" + request.kind);
    if (auto hit = cache.lookup(key)) {
        if (timestamp_out) *timestamp_out = hit->timestamp;
        return hit->raw;
    }

    throttle(config);
    auto provider = make_provider(config);
    const std::string raw = provider->complete(request, config);
    provider_calls_.fetch_add(1);

    ResponseCache::Entry entry;
    entry.raw = raw;
    // deterministic providers get a fixed timestamp so replays are byte-stable
    entry.timestamp = provider->deterministic() ? "1970-01-01T00:00:00Z" : now_iso8601();
    cache.store(key, entry);
    if (timestamp_out) *timestamp_out = entry.timestamp;
    return raw;
}

Transcript Gateway::generate_conversation(const prompt::PromptBundle& bundle,
                                          const ProviderConfig& config, uint64_t seed) {
    PromptRequest request;
    request.system_text = bundle.system_text;
    request.user_text = bundle.instruction_text;
    request.content_hash = bundle.content_hash;
    request.kind = "generate";
    request.target_turns = bundle.target_turns;
    request.parameter_block = bundle.parameter_block;
    request.initiator_hint = Speaker::user;
    if (bundle.parameter_block) {
        // honor the configured initiator when present
        try {
            auto doc = nlohmann::json::parse(*bundle.parameter_block);
            const auto& body =
                doc.contains("conversationParameters") ? doc["conversationParameters"] : doc;
            if (body.at("fundamentals").at("initiator").get<std::string>() == "assistant") {
                request.initiator_hint = Speaker::assistant;
            }
        } catch (const nlohmann::json::exception&) {
        }
    }

    std::string timestamp;
    const std::string raw = call_with_cache(request, config, &timestamp);

    Transcript transcript = parse_output(raw);
    transcript.provenance.prompt_hash = bundle.content_hash;
    transcript.provenance.provider_id = config.provider_id;
    transcript.provenance.model_id = config.model_id;
    transcript.provenance.timestamp = timestamp;
    transcript.provenance.seed = seed;

    if (static_cast<int>(transcript.turns.size()) != bundle.target_turns) {
        std::ostringstream flag;
        flag << "turn_count_mismatch: expected " << bundle.target_turns << ", got "
             << transcript.turns.size();
        transcript.quality_flags.push_back(flag.str());
    }
    return transcript;
}

std::string Gateway::render_judge_prompt(const Transcript& transcript) {
    std::ostringstream out;
    out << "You are evaluating a finished conversation between an entrepreneur (user) and a "
           "business adviser (assistant). Using only the transcript below and the parameter "
           "definitions, infer the parameter values that were most likely used to generate "
           "it.\n\n";
    out << prompt::render_parameter_definitions() << "\n\nTRANSCRIPT\n";
    for (const auto& turn : transcript.turns) {
        out << "turn " << turn.turn << " (" << to_string(turn.speaker) << "): " << turn.content
            << "\n";
    }
    out << "\nANSWER FORMAT\n"
        << "Return exactly one JSON object with these keys and nothing else:\n"
        << "{\n"
        << "  \"participants.knowledgeGapLevel\": <integer 1-5>,\n"
        << "  \"participants.user.focusLevel\": <integer 1-5>,\n"
        << "  \"participants.user.priorKnowledgeLevel\": <integer 1-5>,\n"
        << "  \"participants.user.decisionMakingStyle\": "
           "\"analytical|intuitive|consultative|risk-averse|impulsive\",\n"
        << "  \"participants.user.feedbackReception\": "
           "\"receptive|balanced|skeptical|resistant\",\n"
        << "  \"conversationDynamics.smoothnessFactor\": \"A|B|C|D|E|F\",\n"
        << "  \"conversationDynamics.formality\": <number 0.0-1.0>,\n"
        << "  \"linguisticPatterns.technicalLanguageLevel\": <number 0.0-1.0>\n"
        << "}\n";
    return out.str();
}

InferredParameters Gateway::judge_infer_parameters(const Transcript& transcript,
                                                   const ProviderConfig& config) {
    PromptRequest request;
    request.system_text =
        "You are a strict conversation analyst. Answer with a single JSON object.";
    request.user_text = render_judge_prompt(transcript);
    request.kind = "judge";
    request.content_hash =
        sha256_hex(request.user_text + "\x1f" + config.provider_id + "\x1f" + config.model_id);

    const std::string raw = call_with_cache(request, config, nullptr);

    InferredParameters inferred;
    inferred.judge_id = "llm";
    inferred.raw_output = raw;

    nlohmann::json answer;
    try {
        answer = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error&) {
        try {
            answer = nlohmann::json::parse(extract_json_object(raw));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("judge answer is not valid JSON: ") + e.what(), raw);
        }
    }
    if (!answer.is_object()) {
        throw ParseError("judge answer must be a JSON object", raw);
    }

    for (const auto& spec : judge_path_specs()) {
        if (!answer.contains(spec.path)) {
            inferred.missing.push_back(spec.path);
            continue;
        }
        const auto& value = answer.at(spec.path);
        if (spec.numeric) {
            if (!value.is_number()) {
                inferred.invalid[spec.path] = value.dump();
                continue;
            }
            const double v = value.get<double>();
            if (v < spec.lo || v > spec.hi || std::isnan(v)) {
                inferred.invalid[spec.path] = value.dump();
                continue;
            }
            inferred.numeric[spec.path] = v;
        } else {
            if (!value.is_string()) {
                inferred.invalid[spec.path] = value.dump();
                continue;
            }
            const std::string label = value.get<std::string>();
            if (std::find(spec.labels.begin(), spec.labels.end(), label) == spec.labels.end()) {
                inferred.invalid[spec.path] = value.dump();
                continue;
            }
            inferred.categorical[spec.path] = label;
        }
    }
    return inferred;
}

}  // namespace convsim::gateway
