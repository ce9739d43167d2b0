#include "convsim/prompt/prompt.hpp"

#include <sstream>

#include "convsim/errors.hpp"
#include "convsim/schema/json_io.hpp"
#include "convsim/schema/validate.hpp"
#include "convsim/util/sha256.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::prompt {

namespace {

constexpr const char* kGeneratorSystemText =
    "You are a conversation simulator. You produce one complete multi-turn conversation per "
    "request, returned as a single JSON document and nothing else.";

std::string bundle_hash(const PromptBundle& bundle) {
    std::ostringstream material;
    material << "v=" << bundle.template_version << '\x1f'
             << "mode=" << (bundle.mode == PromptMode::baseline ? "baseline" : "parameterized")
             << '\x1f' << "turns=" << bundle.target_turns << '\x1f' << bundle.system_text << '\x1f'
             << bundle.instruction_text << '\x1f'
             << (bundle.parameter_block ? *bundle.parameter_block : std::string());
    return sha256_hex(material.str());
}

}  // namespace

PromptBundle compile_parameterized(const persona::EntrepreneurProfile& profile,
                                   const schema::ConversationParameters& params,
                                   const PromptTemplates& templates) {
    const auto report = schema::validate(params);
    if (!report.ok) {
        throw InputError("cannot compile prompt from invalid parameters: " +
                         schema::describe(report));
    }

    PromptBundle bundle;
    bundle.mode = PromptMode::parameterized;
    bundle.template_version = templates.version;
    bundle.target_turns = params.fundamentals.turns;
    bundle.system_text = kGeneratorSystemText;
    bundle.parameter_block = schema::serialize_parameters(params);

    const std::string scenario = expand_placeholders(
        templates.scenario, {{"turns", std::to_string(params.fundamentals.turns)},
                             {"industry", params.learning_approach.industry_context},
                             {"demographic", profile.demographic},
                             {"idea", profile.business_idea},
                             {"experience", profile.prior_experience}});

    std::ostringstream instruction;
    instruction << scenario << "\n\n"
                << render_parameter_definitions() << "\n\n"
                << "CONVERSATION PARAMETERS\n"
                << *bundle.parameter_block << "\n"
                << "OUTPUT FORMAT\n"
                << templates.output_contract;
    bundle.instruction_text = instruction.str();
    bundle.content_hash = bundle_hash(bundle);
    return bundle;
}

PromptBundle compile_baseline(const persona::EntrepreneurProfile& profile, int turns,
                              const PromptTemplates& templates) {
    if (turns < 1) {
        throw InputError("baseline prompt needs turns >= 1, got " + std::to_string(turns));
    }

    PromptBundle bundle;
    bundle.mode = PromptMode::baseline;
    bundle.template_version = templates.version;
    bundle.target_turns = turns;
    bundle.system_text = "";

    const std::string raw = expand_placeholders(
        templates.baseline, {{"turns", std::to_string(turns)},
                             {"industry", profile.industry},
                             {"demographic", profile.demographic},
                             {"idea", profile.business_idea}});

    std::ostringstream instruction;
    instruction << raw << "\n\nOUTPUT FORMAT\n" << templates.output_contract;
    bundle.instruction_text = instruction.str();
    bundle.content_hash = bundle_hash(bundle);
    return bundle;
}

}  // namespace convsim::prompt
