#include "convsim/gateway/provider.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/util/rng.hpp"
#include "convsim/util/strings.hpp"

#ifdef CONVSIM_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace convsim::gateway {

namespace {

using ojson = nlohmann::ordered_json;

const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> words = {
        "plan",   "budget", "week",   "detail", "question", "option",  "step",
        "review", "growth", "cost",   "local",  "team",     "customer", "launch",
        "margin", "permit", "lease",  "season", "invoice",  "timeline"};
    return words;
}

const std::vector<std::string>& wander_words() {
    static const std::vector<std::string> words = {
        "weather",  "vacation", "playoffs", "gardening", "podcast",  "traffic",
        "festival", "painting", "camping",  "recipes",   "movies",   "puzzles",
        "cycling",  "astronomy", "novels",  "birdwatching", "surfing", "chess"};
    return words;
}

const std::vector<std::string>& entity_pool() {
    static const std::vector<std::string> names = {
        "Acme Capital",     "Crestline Bank",    "Riverside Market", "SBA",
        "Northgate Mall",   "Brightline Media",  "Summit Chamber",   "Harborview Kitchen",
        "Metro Permit Office", "Lakeside Cooperative", "Ironwood Supply", "Fairfield Insurance"};
    return names;
}

std::vector<std::string> topic_words_from(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else {
            if (current.size() > 2) out.push_back(current);
            current.clear();
        }
    }
    if (current.size() > 2) out.push_back(current);
    return out;
}

std::string slice_between(const std::string& text, const std::string& after,
                          const std::string& until) {
    const auto start = text.find(after);
    if (start == std::string::npos) return {};
    const auto from = start + after.size();
    const auto end = text.find(until, from);
    if (end == std::string::npos) return text.substr(from);
    return text.substr(from, end - from);
}

struct MockPlan {
    std::vector<std::string> topic_words;
    std::vector<std::string> emotions = {"uncertainty", "curiosity", "understanding",
                                         "confidence"};
    std::vector<double> progression;
    std::string arc = "problem-solution";
    double drift_per_turn = 0.25;  // baseline default: moderate wandering
    double revisit_prob = 0.4;
    std::string user_role = "entrepreneur";
    std::string assistant_role = "business adviser";
};

double smoothness_drift(const std::string& grade) {
    if (grade == "A") return 0.02;
    if (grade == "B") return 0.06;
    if (grade == "C") return 0.12;
    if (grade == "D") return 0.20;
    if (grade == "E") return 0.32;
    if (grade == "F") return 0.45;
    return 0.25;
}

MockPlan plan_from_request(const PromptRequest& request) {
    MockPlan plan;
    if (request.parameter_block) {
        try {
            ojson doc = ojson::parse(*request.parameter_block);
            const ojson& body =
                doc.contains("conversationParameters") ? doc["conversationParameters"] : doc;
            for (const auto& topic : body.at("fundamentals").at("topicScope")) {
                for (auto& w : topic_words_from(topic.get<std::string>())) {
                    plan.topic_words.push_back(std::move(w));
                }
            }
            for (auto& w :
                 topic_words_from(body.at("learningApproach").at("industryContext"))) {
                plan.topic_words.push_back(std::move(w));
            }
            plan.arc = body.at("fundamentals").at("arc").get<std::string>();
            const std::string grade =
                body.at("conversationDynamics").value("smoothnessFactor", "A");
            plan.drift_per_turn = smoothness_drift(grade);
            const int kgl = body.at("participants").at("knowledgeGapLevel").get<int>();
            plan.revisit_prob = std::clamp(0.65 - 0.12 * (kgl - 1), 0.05, 0.95);
            plan.emotions.clear();
            for (const auto& stage : body.at("conversationDynamics").at("emotionalJourney")) {
                plan.emotions.push_back(stage.items().begin().key());
            }
            for (const auto& v : body.at("learningApproach").at("complexityProgression")) {
                plan.progression.push_back(v.get<double>());
            }
            plan.user_role = body.at("participants").at("user").at("identity").get<std::string>();
            plan.assistant_role =
                body.at("participants").at("assistant").at("identity").get<std::string>();
        } catch (const nlohmann::json::exception&) {
            // fall back to the baseline plan on any shape surprise
        }
    } else {
        const std::string idea =
            slice_between(request.user_text, "with a focus on ", ".");
        const std::string field =
            slice_between(request.user_text, "trying to work on ", ".");
        for (auto& w : topic_words_from(idea + " " + field)) {
            plan.topic_words.push_back(std::move(w));
        }
    }
    if (plan.topic_words.empty()) {
        plan.topic_words = {"business", "advice", "startup"};
    }
    if (plan.emotions.empty()) {
        plan.emotions = {"uncertainty", "curiosity"};
    }
    return plan;
}

std::string synthesize_turn_content(Rng& rng, const MockPlan& plan, int exchange_index,
                                    bool is_user, std::vector<std::string>& seen_entities) {
    const double drift_scale = is_user ? 1.0 : 0.6;
    const double drift =
        std::min(0.9, plan.drift_per_turn * drift_scale * std::max(0, exchange_index));
    std::vector<std::string> words;
    const size_t n_words = 10 + rng.below(8);
    for (size_t i = 0; i < n_words; ++i) {
        if (rng.chance(drift)) {
            words.push_back(wander_words()[rng.below(wander_words().size())]);
        } else if (rng.chance(0.45) && !plan.topic_words.empty()) {
            words.push_back(plan.topic_words[rng.below(plan.topic_words.size())]);
        } else {
            words.push_back(filler_words()[rng.below(filler_words().size())]);
        }
    }
    const size_t n_entities = 1 + rng.below(2);
    for (size_t i = 0; i < n_entities; ++i) {
        std::string name;
        if (!seen_entities.empty() && rng.chance(plan.revisit_prob)) {
            name = seen_entities[rng.below(seen_entities.size())];
        } else {
            name = entity_pool()[rng.below(entity_pool().size())];
            if (std::find(seen_entities.begin(), seen_entities.end(), name) ==
                seen_entities.end()) {
                seen_entities.push_back(name);
            }
        }
        words.insert(words.begin() + static_cast<long>(rng.below(words.size() + 1)), name);
    }
    std::string content = join(words, " ");
    content[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(content[0])));
    content += rng.chance(0.35) ? "?" : ".";
    return content;
}

std::string synthesize_transcript(const PromptRequest& request) {
    const MockPlan plan = plan_from_request(request);
    Rng rng(fnv1a64(request.content_hash));
    const int total = std::max(1, request.target_turns);

    ojson doc;
    doc["metadata"] = {
        {"participantRoles",
         {{"initiator", to_string(request.initiator_hint)},
          {"user", plan.user_role},
          {"assistant", plan.assistant_role}}},
        {"conversationArc", plan.arc},
        {"totalTurns", total}};

    ojson conversation = ojson::array();
    std::vector<std::string> seen_entities;
    Speaker speaker = request.initiator_hint;
    for (int t = 1; t <= total; ++t) {
        const bool is_user = speaker == Speaker::user;
        const int exchange = (t - 1) / 2;
        ojson turn;
        turn["turn"] = t;
        turn["speaker"] = to_string(speaker);
        turn["content"] = synthesize_turn_content(rng, plan, exchange, is_user, seen_entities);
        turn["emotionalState"] =
            plan.emotions[std::min<size_t>((static_cast<size_t>(t) - 1) * plan.emotions.size() /
                                               static_cast<size_t>(total),
                                           plan.emotions.size() - 1)];
        double complexity;
        if (!plan.progression.empty()) {
            complexity = plan.progression[std::min<size_t>(
                (static_cast<size_t>(t) - 1) * plan.progression.size() /
                    static_cast<size_t>(total),
                plan.progression.size() - 1)];
        } else {
            complexity = std::min(1.0, 0.3 + 0.03 * (t - 1));
        }
        turn["complexityLevel"] = complexity;
        conversation.push_back(std::move(turn));
        speaker = is_user ? Speaker::assistant : Speaker::user;
    }
    doc["conversation"] = std::move(conversation);
    doc["analysis"] = {{"parameterAdherence", ojson::object()},
                       {"learningObjectivesMet", ojson::array()},
                       {"stakeholderPerspectivesCovered", ojson::array()}};
    return doc.dump(2);
}

std::string synthesize_judge_answer(const PromptRequest& request) {
    Rng rng(fnv1a64(request.content_hash));
    static const char* kStyles[] = {"analytical", "intuitive", "consultative", "risk-averse",
                                    "impulsive"};
    static const char* kReceptions[] = {"receptive", "balanced", "skeptical", "resistant"};
    static const char* kGrades[] = {"A", "B", "C", "D", "E", "F"};
    ojson answer;
    answer["participants.knowledgeGapLevel"] = static_cast<int>(rng.range(1, 5));
    answer["participants.user.focusLevel"] = static_cast<int>(rng.range(1, 5));
    answer["participants.user.priorKnowledgeLevel"] = static_cast<int>(rng.range(1, 5));
    answer["participants.user.decisionMakingStyle"] = kStyles[rng.below(5)];
    answer["participants.user.feedbackReception"] = kReceptions[rng.below(4)];
    answer["conversationDynamics.smoothnessFactor"] = kGrades[rng.below(6)];
    answer["conversationDynamics.formality"] = static_cast<double>(rng.below(101)) / 100.0;
    answer["linguisticPatterns.technicalLanguageLevel"] =
        static_cast<double>(rng.below(101)) / 100.0;
    return answer.dump(2);
}

}  // namespace

std::string MockProvider::complete(const PromptRequest& request, const ProviderConfig& config) {
    if (!config.fixture_dir.empty()) {
        const auto path =
            std::filesystem::path(config.fixture_dir) / (request.content_hash + ".txt");
        if (std::filesystem::exists(path)) {
            return read_file(path.string());
        }
    }
    if (request.kind == "judge") {
        return synthesize_judge_answer(request);
    }
    return synthesize_transcript(request);
}

std::string HttpChatProvider::complete(const PromptRequest& request,
                                       const ProviderConfig& config) {
    if (config.endpoint.empty()) {
        throw ConfigError("provider " + config.provider_id + " has no endpoint configured");
    }
    std::string api_key;
    if (!config.credential_env.empty()) {
        const char* key = std::getenv(config.credential_env.c_str());
        if (key == nullptr || *key == '\0') {
            throw ConfigError("credential env var " + config.credential_env +
                              " is not set for provider " + config.provider_id);
        }
        api_key = key;
    }

    nlohmann::json body;
    body["model"] = config.model_id;
    nlohmann::json messages = nlohmann::json::array();
    if (!request.system_text.empty()) {
        messages.push_back({{"role", "system"}, {"content", request.system_text}});
    }
    messages.push_back({{"role", "user"}, {"content", request.user_text}});
    body["messages"] = std::move(messages);
    if (config.temperature) {
        body["temperature"] = *config.temperature;
    }

    const auto scheme_end = config.endpoint.find("://");
    const size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const auto path_start = config.endpoint.find('/', host_start);
    const std::string host =
        path_start == std::string::npos ? config.endpoint : config.endpoint.substr(0, path_start);
    const std::string path =
        path_start == std::string::npos ? "/" : config.endpoint.substr(path_start);

    std::string last_error;
    const int attempts = std::max(1, config.max_retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(250 * (1 << (attempt - 1))));
        }
        httplib::Client client(host);
        client.set_connection_timeout(static_cast<time_t>(config.timeout_seconds), 0);
        client.set_read_timeout(static_cast<time_t>(config.timeout_seconds), 0);
        httplib::Headers headers;
        if (!api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + api_key);
        }
        auto res = client.Post(path, headers, body.dump(), "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "HTTP " + std::to_string(res->status) + ": " + res->body;
            continue;
        }
        if (res->status < 200 || res->status >= 300) {
            throw ProviderError("provider " + config.provider_id + " returned HTTP " +
                                std::to_string(res->status) + ": " + res->body);
        }
        try {
            auto doc = nlohmann::json::parse(res->body);
            return doc.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ProviderError(std::string("unexpected chat-completion response shape: ") +
                                e.what() + "; body: " + res->body);
        }
    }
    throw ProviderError("provider " + config.provider_id + " failed after " +
                        std::to_string(attempts) + " attempt(s); last error: " + last_error);
}

std::shared_ptr<ChatProvider> make_provider(const ProviderConfig& config) {
    if (config.provider_id == "mock") {
        return std::make_shared<MockProvider>();
    }
    return std::make_shared<HttpChatProvider>();
}

}  // namespace convsim::gateway
