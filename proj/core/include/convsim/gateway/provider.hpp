#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "convsim/gateway/transcript.hpp"
#include "convsim/prompt/prompt.hpp"

namespace convsim::gateway {

struct ProviderConfig {
    std::string provider_id = "mock";
    std::string model_id = "mock-1";
    std::string endpoint;             // chat-completions URL for http providers
    std::string credential_env;       // env var holding the API key
    std::optional<double> temperature;  // absent = provider default
    double timeout_seconds = 60.0;
    int max_retries = 3;
    double requests_per_second = 0.0;  // 0 = unthrottled
    std::string fixture_dir;           // mock: play back recorded responses by prompt hash
};

/// What a provider sees for one call. The hint fields let offline providers
/// synthesize plausible output; HTTP providers only use the texts.
struct PromptRequest {
    std::string system_text;
    std::string user_text;
    std::string content_hash;
    std::string kind = "generate";  // "generate" | "judge"
    int target_turns = 0;
    Speaker initiator_hint = Speaker::user;
    std::optional<std::string> parameter_block;
};

class ChatProvider {
public:
    virtual ~ChatProvider() = default;
    virtual std::string complete(const PromptRequest& request, const ProviderConfig& config) = 0;
    /// True when identical requests always produce identical bytes.
    virtual bool deterministic() const { return false; }
};

// Offline provider: plays back fixtures when fixture_dir holds a file named
// <content_hash>.txt, otherwise synthesizes a schema-conformant document
// seeded by the prompt hash. Fully deterministic.
class MockProvider final : public ChatProvider {
public:
    std::string complete(const PromptRequest& request, const ProviderConfig& config) override;
    bool deterministic() const override { return true; }
};

/// OpenAI-compatible chat-completions client with exponential-backoff retries.
class HttpChatProvider final : public ChatProvider {
public:
    std::string complete(const PromptRequest& request, const ProviderConfig& config) override;
};

std::shared_ptr<ChatProvider> make_provider(const ProviderConfig& config);

}  // namespace convsim::gateway
