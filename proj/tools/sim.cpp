#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/gateway/gateway.hpp"
#include "convsim/persona/persona.hpp"
#include "convsim/prompt/prompt.hpp"
#include "convsim/runner/experiment.hpp"
#include "convsim/schema/json_io.hpp"
#include "convsim/schema/randomize.hpp"
#include "convsim/schema/validate.hpp"
#include "convsim/util/strings.hpp"

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

int cmd_validate(const std::string& file) {
    std::vector<std::string> warnings;
    const auto params = convsim::schema::parse_parameters(convsim::read_file(file), &warnings);
    for (const auto& warning : warnings) {
        std::cout << "warning: " << warning << "\n";
    }
    const auto report = convsim::schema::validate(params);
    std::cout << convsim::schema::describe(report) << "\n";
    return report.ok ? 0 : 1;
}

int cmd_profiles(uint64_t seed, std::size_t count, const std::string& industries_csv,
                 bool baseline, const std::string& facets_file, const std::string& out) {
    const auto& facets = facets_file.empty()
                             ? convsim::persona::FacetLibrary::builtin()
                             : convsim::persona::FacetLibrary::from_file(facets_file);
    std::vector<convsim::persona::EntrepreneurProfile> profiles;
    if (baseline) {
        for (std::size_t i = 0; i < count; ++i) {
            profiles.push_back(convsim::persona::baseline_profile(seed + i, facets));
        }
    } else {
        std::vector<std::string> pool;
        for (auto& item : convsim::split(industries_csv, ',')) {
            const std::string trimmed = convsim::trim(item);
            if (!trimmed.empty()) pool.push_back(trimmed);
        }
        if (pool.empty()) {
            pool = {"food-business", "technology", "retail", "healthcare"};
        }
        profiles = convsim::persona::generate_profiles(seed, count, pool, facets);
    }
    const std::string jsonl = convsim::persona::profiles_to_jsonl(profiles);
    if (out.empty()) {
        std::cout << jsonl;
    } else {
        convsim::write_file_atomic(out, jsonl);
        std::cout << "wrote " << profiles.size() << " profiles to " << out << "\n";
    }
    return 0;
}

ojson bundle_to_json(const convsim::prompt::PromptBundle& bundle) {
    ojson doc;
    doc["contentHash"] = bundle.content_hash;
    doc["mode"] = bundle.mode == convsim::prompt::PromptMode::baseline ? "baseline"
                                                                       : "parameterized";
    doc["templateVersion"] = bundle.template_version;
    doc["targetTurns"] = bundle.target_turns;
    doc["systemText"] = bundle.system_text;
    doc["instructionText"] = bundle.instruction_text;
    if (bundle.parameter_block) doc["parameterBlock"] = *bundle.parameter_block;
    return doc;
}

int cmd_prompt_compile(const std::string& params_file, uint64_t profile_seed, bool baseline,
                       int turns, const std::string& out) {
    const auto profile = baseline
                             ? convsim::persona::baseline_profile(profile_seed)
                             : convsim::persona::generate_profiles(
                                   profile_seed, 1, {"food-business", "technology"})[0];
    convsim::prompt::PromptBundle bundle;
    if (baseline) {
        bundle = convsim::prompt::compile_baseline(profile, turns);
    } else {
        if (params_file.empty()) {
            throw convsim::InputError("--params FILE is required unless --baseline is given");
        }
        const auto params =
            convsim::schema::parse_parameters(convsim::read_file(params_file), nullptr);
        bundle = convsim::prompt::compile_parameterized(profile, params);
    }
    const std::string text = bundle_to_json(bundle).dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        convsim::write_file_atomic(out, text);
        std::cout << "wrote prompt bundle " << bundle.content_hash.substr(0, 12) << " to " << out
                  << "\n";
    }
    return 0;
}

int cmd_params_random(uint64_t seed, const std::string& constraints, const std::string& out) {
    const auto params = convsim::schema::randomize_parameters(seed, constraints);
    const std::string text = convsim::schema::serialize_parameters(params);
    if (out.empty()) {
        std::cout << text;
    } else {
        convsim::write_file_atomic(out, text);
        std::cout << "wrote parameters to " << out << "\n";
    }
    return 0;
}

void print_summary(const convsim::runner::RunSummary& summary) {
    std::cout << "cells: " << summary.cells_total << " total, " << summary.cells_completed
              << " completed, " << summary.cells_skipped << " already done, "
              << summary.cells_failed << " failed\n"
              << "provider calls: " << summary.provider_calls << "\n"
              << "run directory: " << summary.out_dir << "\n";
}

int cmd_run(const std::string& target, double scale, const std::string& provider_id, bool mock,
            std::string out_dir, uint64_t seed, bool seed_given, int workers,
            const std::string& labels_file) {
    convsim::runner::ExperimentConfig config;
    if (fs::exists(target) && !fs::is_directory(target)) {
        config = convsim::runner::ExperimentConfig::from_json_text(convsim::read_file(target));
        if (config.preset_name.empty()) config.preset_name = fs::path(target).stem().string();
    } else {
        config = convsim::runner::ExperimentConfig::preset(target);
    }
    config.scale = scale;
    if (seed_given) config.seed = seed;
    if (workers > 0) config.workers = workers;
    if (!labels_file.empty()) config.human_labels_file = labels_file;
    if (!provider_id.empty()) {
        config.providers = {convsim::runner::provider_by_id(provider_id)};
    }
    if (mock) {
        config.providers = {convsim::runner::provider_by_id("mock")};
        config.judge_provider = convsim::runner::provider_by_id("mock");
    }
    if (out_dir.empty()) {
        std::ostringstream name;
        name << "runs/" << config.preset_name << "-s" << config.seed << "-x" << config.scale;
        out_dir = name.str();
    }
    config.out_dir = out_dir;

    const auto summary = convsim::runner::run_experiment(config);
    print_summary(summary);
    return summary.cells_failed == 0 ? 0 : 1;
}

int cmd_resume(const std::string& dir) {
    const auto summary = convsim::runner::resume(dir);
    print_summary(summary);
    return summary.cells_failed == 0 ? 0 : 1;
}

int cmd_report(const std::string& dir, const std::string& format) {
    for (const auto& path : convsim::runner::report(dir, format)) {
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

int cmd_labels_import(const std::string& file, const std::string& out) {
    const auto result = convsim::gateway::import_human_labels(file);
    std::cout << "imported " << result.records.size() << " judgment record(s)\n";
    for (const auto& error : result.row_errors) {
        std::cout << "rejected " << error << "\n";
    }
    if (!out.empty()) {
        std::ostringstream jsonl;
        for (const auto& record : result.records) {
            ojson row;
            row["conversationId"] = record.conversation_id;
            row["annotatorId"] = record.annotator_id;
            row["judgeId"] = record.judge_id;
            row["numeric"] = record.numeric;
            row["categorical"] = record.categorical;
            jsonl << row.dump() << "\n";
        }
        convsim::write_file_atomic(out, jsonl.str());
        std::cout << "wrote normalized records to " << out << "\n";
    }
    return result.row_errors.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parameterized conversation simulation and evaluation"};
    app.require_subcommand(1);

    // validate
    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "Validate a parameter file");
    validate->add_option("file", validate_file, "parameter JSON file")->required();

    // profiles
    uint64_t profiles_seed = 7;
    std::size_t profiles_count = 10;
    std::string profiles_industries = "food-business,technology,retail,healthcare";
    bool profiles_baseline = false;
    std::string profiles_facets;
    std::string profiles_out;
    auto* profiles = app.add_subcommand("profiles", "Generate entrepreneur profiles");
    profiles->add_option("--seed", profiles_seed, "generation seed");
    profiles->add_option("--count", profiles_count, "number of profiles");
    profiles->add_option("--industries", profiles_industries, "comma-separated industry pool");
    profiles->add_flag("--baseline", profiles_baseline, "brief baseline profiles");
    profiles->add_option("--facets", profiles_facets, "facet library JSON file");
    profiles->add_option("--out", profiles_out, "output JSONL file (default stdout)");

    // prompt compile
    auto* prompt_cmd = app.add_subcommand("prompt", "Prompt tools");
    prompt_cmd->require_subcommand(1);
    std::string compile_params;
    uint64_t compile_profile_seed = 7;
    bool compile_baseline = false;
    int compile_turns = 10;
    std::string compile_out;
    auto* compile = prompt_cmd->add_subcommand("compile", "Compile a prompt bundle");
    compile->add_option("--params", compile_params, "parameter JSON file");
    compile->add_option("--profile-seed", compile_profile_seed, "profile generation seed");
    compile->add_flag("--baseline", compile_baseline, "compile the unparameterized raw prompt");
    compile->add_option("--turns", compile_turns, "target turns (baseline mode)");
    compile->add_option("--out", compile_out, "output file (default stdout)");

    // params random
    auto* params_cmd = app.add_subcommand("params", "Parameter tools");
    params_cmd->require_subcommand(1);
    uint64_t random_seed = 42;
    std::string random_constraints = "{}";
    std::string random_out;
    auto* params_random = params_cmd->add_subcommand("random", "Draw a random parameter bundle");
    params_random->add_option("--seed", random_seed, "randomization seed");
    params_random->add_option("--constraints", random_constraints,
                              "JSON object of dotted-path constraints");
    params_random->add_option("--out", random_out, "output file (default stdout)");

    // run
    std::string run_target;
    double run_scale = 1.0;
    std::string run_provider;
    bool run_mock = false;
    std::string run_out;
    uint64_t run_seed = 1;
    int run_workers = 0;
    std::string run_labels;
    auto* run = app.add_subcommand("run", "Run an experiment preset or config file");
    run->add_option("target", run_target, "preset name or config JSON file")->required();
    run->add_option("--scale", run_scale, "scale multiplier on per-arm counts");
    run->add_option("--provider", run_provider, "provider id (mock, openai, custom)");
    run->add_flag("--mock", run_mock, "force the deterministic mock provider");
    run->add_option("--out", run_out, "run directory");
    auto* seed_opt = run->add_option("--seed", run_seed, "experiment seed");
    run->add_option("--workers", run_workers, "worker thread count");
    run->add_option("--labels", run_labels, "human label JSONL file (adherence)");

    // resume
    std::string resume_dir;
    auto* resume = app.add_subcommand("resume", "Complete the missing cells of a run");
    resume->add_option("dir", resume_dir, "run directory")->required();

    // report
    std::string report_dir;
    std::string report_format = "csv";
    auto* report = app.add_subcommand("report", "Aggregate a run into report files");
    report->add_option("dir", report_dir, "run directory")->required();
    report->add_option("--format", report_format, "csv, jsonl, or markdown");

    // labels import
    auto* labels_cmd = app.add_subcommand("labels", "Human label tools");
    labels_cmd->require_subcommand(1);
    std::string labels_file;
    std::string labels_out;
    auto* labels_import = labels_cmd->add_subcommand("import", "Import a human label file");
    labels_import->add_option("file", labels_file, "label JSONL file")->required();
    labels_import->add_option("--out", labels_out, "normalized output JSONL");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(validate_file);
        if (*profiles) {
            return cmd_profiles(profiles_seed, profiles_count, profiles_industries,
                                profiles_baseline, profiles_facets, profiles_out);
        }
        if (*compile) {
            return cmd_prompt_compile(compile_params, compile_profile_seed, compile_baseline,
                                      compile_turns, compile_out);
        }
        if (*params_random) return cmd_params_random(random_seed, random_constraints, random_out);
        if (*run) {
            return cmd_run(run_target, run_scale, run_provider, run_mock, run_out, run_seed,
                           seed_opt->count() > 0, run_workers, run_labels);
        }
        if (*resume) return cmd_resume(resume_dir);
        if (*report) return cmd_report(report_dir, report_format);
        if (*labels_import) return cmd_labels_import(labels_file, labels_out);
    } catch (const convsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
