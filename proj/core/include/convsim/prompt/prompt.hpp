#pragma once

#include <optional>
#include <string>

#include "convsim/persona/persona.hpp"
#include "convsim/schema/parameters.hpp"

namespace convsim::prompt {

enum class PromptMode { parameterized, baseline };

/// The exact text shipped to a provider for one generation, plus enough
/// metadata to cache and audit it. content_hash is a pure function of the
/// other fields (template version included), so template edits invalidate
/// cached responses.
struct PromptBundle {
    std::string system_text;
    std::string instruction_text;
    std::optional<std::string> parameter_block;  // absent for baseline
    int target_turns = 0;
    PromptMode mode = PromptMode::parameterized;
    std::string template_version;
    std::string content_hash;

    bool operator==(const PromptBundle&) const = default;
};

/// Prompt text blocks with named {{placeholders}}. Versioned: any edit must
/// bump `version` so downstream caches invalidate.
struct PromptTemplates {
    std::string version;
    std::string scenario;         // parameterized base scenario
    std::string baseline;         // raw unparameterized prompt
    std::string output_contract;  // transcript format the provider must emit

    static const PromptTemplates& builtin();
    static PromptTemplates from_dir(const std::string& dir);
};

/// Scenario + full parameter definitions + serialized values + output
/// contract. Refuses parameters that do not validate.
PromptBundle compile_parameterized(const persona::EntrepreneurProfile& profile,
                                   const schema::ConversationParameters& params,
                                   const PromptTemplates& templates = PromptTemplates::builtin());

/// The raw prompt with turn count, business field, background, and idea
/// substituted. No parameter definitions of any kind.
PromptBundle compile_baseline(const persona::EntrepreneurProfile& profile, int turns,
                              const PromptTemplates& templates = PromptTemplates::builtin());

/// Human-readable catalog of every parameter with its level definitions.
/// Byte-stable across calls; shared by generation and judge prompts.
std::string render_parameter_definitions();

}  // namespace convsim::prompt
