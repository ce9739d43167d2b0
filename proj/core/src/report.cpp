#include "convsim/runner/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/gateway/gateway.hpp"
#include "convsim/metrics/adherence.hpp"
#include "convsim/metrics/diversity.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::runner {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct LoadedRun {
    ojson manifest;
    ExperimentConfig config;
    std::vector<ojson> records;  // successful cells, in cell-id order
    std::vector<ojson> failures;
};

LoadedRun load_run(const std::string& run_dir) {
    const fs::path manifest_path = fs::path(run_dir) / "manifest.json";
    if (!fs::exists(manifest_path)) {
        throw ConfigError("no manifest found in " + run_dir);
    }
    LoadedRun run;
    run.manifest = ojson::parse(read_file(manifest_path.string()));
    run.config = ExperimentConfig::from_json_text(run.manifest.at("config").dump());
    run.config.out_dir = run_dir;

    const fs::path cells_dir = fs::path(run_dir) / "metrics" / "cells";
    std::vector<fs::path> paths;
    if (fs::is_directory(cells_dir)) {
        for (const auto& entry : fs::directory_iterator(cells_dir)) {
            if (entry.path().extension() == ".json") paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) {
        ojson record = ojson::parse(read_file(path.string()));
        if (record.contains("error")) {
            run.failures.push_back(std::move(record));
        } else {
            run.records.push_back(std::move(record));
        }
    }
    return run;
}

std::string csv_escape(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string format_number(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::ostringstream out;
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) out << ",";
            out << csv_escape(header[i]);
        }
        out << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) out << ",";
                out << csv_escape(row[i]);
            }
            out << "\n";
        }
        return out.str();
    }

    std::string to_markdown() const {
        std::ostringstream out;
        out << "| " << join(header, " | ") << " |\n|";
        for (size_t i = 0; i < header.size(); ++i) out << " --- |";
        out << "\n";
        for (const auto& row : rows) {
            out << "| " << join(row, " | ") << " |\n";
        }
        return out.str();
    }

    ojson to_jsonl_rows(const std::string& table_name) const {
        ojson rows_json = ojson::array();
        for (const auto& row : rows) {
            ojson item;
            item["table"] = table_name;
            for (size_t i = 0; i < header.size() && i < row.size(); ++i) {
                item[header[i]] = row[i];
            }
            rows_json.push_back(std::move(item));
        }
        return rows_json;
    }
};

Table diversity_table(const LoadedRun& run) {
    Table table;
    table.header = {"model", "topic_diversity", "topic_entropy", "embedding_diversity"};

    std::map<std::string, std::vector<std::string>> topics_by_model;
    for (const auto& record : run.records) {
        topics_by_model[record.at("model").get<std::string>()].push_back(
            record.at("metrics").at("topic").get<std::string>());
    }
    for (const auto& [model, topics] : topics_by_model) {
        embed::EmbeddingConfig embedding = run.config.embedding;
        if (embedding.cache_dir.empty()) {
            embedding.cache_dir =
                (fs::path(run.config.out_dir) / "cache" / "embeddings").string();
        }
        auto embedder = embed::make_embedder(embedding);
        const auto clusters =
            metrics::cluster_topics(topics, run.config.cluster_threshold, *embedder);
        const double entropy =
            clusters.clusters.empty() ? 0.0 : metrics::topic_entropy(clusters.counts());
        const double diversity =
            topics.size() < 2 ? 0.0 : metrics::embedding_diversity(topics, *embedder);
        table.rows.push_back({model, std::to_string(clusters.clusters.size()),
                              format_number(entropy), format_number(diversity)});
    }
    return table;
}

metrics::NumericMap json_to_numeric_map(const ojson& obj) {
    metrics::NumericMap out;
    for (const auto& item : obj.items()) out[item.key()] = item.value().get<double>();
    return out;
}

metrics::CategoricalMap json_to_categorical_map(const ojson& obj) {
    metrics::CategoricalMap out;
    for (const auto& item : obj.items()) out[item.key()] = item.value().get<std::string>();
    return out;
}

Table adherence_table(const LoadedRun& run) {
    Table table;
    table.header = {"model", "turns", "parameter", "metric", "value", "weight_human",
                    "weight_llm", "n"};

    // optional human labels, keyed by cell id; labels usually land after the
    // run, so the conventional <run_dir>/labels/human_labels.jsonl is read
    // even when the config named no file
    std::map<std::string, std::vector<gateway::InferredParameters>> human_by_cell;
    fs::path labels_path;
    if (!run.config.human_labels_file.empty()) {
        labels_path = run.config.human_labels_file;
        if (labels_path.is_relative()) {
            labels_path = fs::path(run.config.out_dir) / labels_path;
        }
    } else {
        labels_path = fs::path(run.config.out_dir) / "labels" / "human_labels.jsonl";
    }
    if (fs::exists(labels_path)) {
        const auto imported = gateway::import_human_labels(labels_path.string());
        for (const auto& record : imported.records) {
            human_by_cell[record.conversation_id].push_back(record);
        }
    }

    struct Group {
        metrics::AdherenceObservations llm_obs;
        metrics::AdherenceObservations human_obs;
        std::vector<double> human_llm_agreements;
        std::vector<double> human_human_agreements;
        std::size_t conversations = 0;
    };
    std::map<std::pair<std::string, int>, Group> groups;

    for (const auto& record : run.records) {
        if (!record.contains("metrics") || !record.at("metrics").contains("judge")) continue;
        const auto key = std::make_pair(record.at("model").get<std::string>(),
                                        record.at("turns").get<int>());
        Group& group = groups[key];
        ++group.conversations;

        const auto& m = record.at("metrics");
        gateway::InferredParameters llm;
        llm.numeric = json_to_numeric_map(m.at("judge").at("numeric"));
        llm.categorical = json_to_categorical_map(m.at("judge").at("categorical"));
        for (const auto& item : m.at("judge").at("invalid").items()) {
            llm.invalid[item.key()] = item.value().get<std::string>();
        }

        const metrics::NumericMap set_numeric = json_to_numeric_map(m.at("setNumeric"));
        const metrics::CategoricalMap set_categorical =
            json_to_categorical_map(m.at("setCategorical"));
        group.llm_obs.numeric.emplace_back(set_numeric, llm.numeric);
        group.llm_obs.categorical.emplace_back(set_categorical, llm.categorical);
        for (const auto& [path, raw] : llm.invalid) {
            (void)raw;
            ++group.llm_obs.excluded[path];
        }

        const auto cell_id = record.at("cellId").get<std::string>();
        const auto human_it = human_by_cell.find(cell_id);
        if (human_it != human_by_cell.end()) {
            const auto& annotations = human_it->second;
            for (const auto& human : annotations) {
                group.human_obs.numeric.emplace_back(set_numeric, human.numeric);
                group.human_obs.categorical.emplace_back(set_categorical, human.categorical);
                group.human_llm_agreements.push_back(metrics::judgment_agreement(human, llm));
            }
            for (size_t a = 0; a < annotations.size(); ++a) {
                for (size_t b = a + 1; b < annotations.size(); ++b) {
                    group.human_human_agreements.push_back(
                        metrics::judgment_agreement(annotations[a], annotations[b]));
                }
            }
        }
    }

    auto mean_of = [](const std::vector<double>& values) {
        double total = 0.0;
        for (double v : values) total += v;
        return values.empty() ? 0.0 : total / static_cast<double>(values.size());
    };

    for (const auto& [key, group] : groups) {
        const auto llm_score = metrics::score_observations(group.llm_obs);
        metrics::AdherenceScore blended;
        if (group.human_obs.numeric.empty() && group.human_obs.categorical.empty()) {
            blended = metrics::blend_judgments({}, llm_score, {0.0, 1.0});
        } else {
            const auto human_score = metrics::score_observations(group.human_obs);
            // each judge is weighted by its mean agreement with the other
            // side; annotator consensus stands in for human reliability
            double human_agreement = mean_of(group.human_human_agreements);
            if (group.human_human_agreements.empty()) {
                human_agreement = mean_of(group.human_llm_agreements);
            }
            double llm_agreement = mean_of(group.human_llm_agreements);
            if (human_agreement == 0.0 && llm_agreement == 0.0) {
                human_agreement = llm_agreement = 0.5;
            }
            blended = metrics::blend_judgments(human_score, llm_score,
                                               {human_agreement, llm_agreement});
        }

        for (const auto& [path, mse] : blended.numeric_mse) {
            table.rows.push_back({key.first, std::to_string(key.second), path, "mse",
                                  format_number(mse), format_number(blended.blend_weights.first),
                                  format_number(blended.blend_weights.second),
                                  std::to_string(group.conversations)});
        }
        for (const auto& [path, accuracy] : blended.categorical_accuracy) {
            table.rows.push_back({key.first, std::to_string(key.second), path, "accuracy",
                                  format_number(accuracy),
                                  format_number(blended.blend_weights.first),
                                  format_number(blended.blend_weights.second),
                                  std::to_string(group.conversations)});
        }
    }
    return table;
}

Table drift_table(const LoadedRun& run) {
    Table table;
    table.header = {"model", "arm", "turn", "mean_similarity", "mean_drift", "n"};

    std::map<std::tuple<std::string, std::string, int>, std::pair<double, std::size_t>> sums;
    for (const auto& record : run.records) {
        const std::string model = record.at("model").get<std::string>();
        const std::string arm = record.value("arm", "");
        for (const auto& point : record.at("metrics").at("driftSeries")) {
            const int ordinal = point.at("userTurn").get<int>();
            auto& slot = sums[{model, arm, ordinal}];
            slot.first += point.at("similarity").get<double>();
            ++slot.second;
        }
    }
    for (const auto& [key, slot] : sums) {
        const double mean_similarity = slot.first / static_cast<double>(slot.second);
        table.rows.push_back({std::get<0>(key), std::get<1>(key),
                              std::to_string(std::get<2>(key)), format_number(mean_similarity),
                              format_number(1.0 - mean_similarity),
                              std::to_string(slot.second)});
    }
    return table;
}

Table stability_table(const LoadedRun& run) {
    Table table;
    table.header = {"model",      "arm",
                    "prefix_turns", "mean_controlled_error",
                    "mean_formality_error", "mean_technical_error",
                    "mean_stability", "n"};

    struct Sums {
        double controlled = 0.0, ef = 0.0, et = 0.0, stability = 0.0;
        std::size_t n = 0;
    };
    std::map<std::tuple<std::string, std::string, int>, Sums> sums;
    for (const auto& record : run.records) {
        const std::string model = record.at("model").get<std::string>();
        const std::string arm = record.value("arm", "full");
        for (const auto& row : record.at("metrics").at("byPrefix")) {
            auto& slot = sums[{model, arm, row.at("prefixTurns").get<int>()}];
            slot.controlled += row.at("controlledError").get<double>();
            slot.ef += row.at("formalityError").get<double>();
            slot.et += row.at("technicalError").get<double>();
            slot.stability += row.at("stability").get<double>();
            ++slot.n;
        }
    }
    for (const auto& [key, slot] : sums) {
        const double n = static_cast<double>(slot.n);
        table.rows.push_back({std::get<0>(key), std::get<1>(key),
                              std::to_string(std::get<2>(key)),
                              format_number(slot.controlled / n), format_number(slot.ef / n),
                              format_number(slot.et / n), format_number(slot.stability / n),
                              std::to_string(slot.n)});
    }
    return table;
}

Table revisit_table(const LoadedRun& run) {
    Table table;
    table.header = {"model", "knowledge_gap_level", "turns", "mean_revisit_rate", "n"};

    std::map<std::tuple<std::string, int, int>, std::pair<double, std::size_t>> sums;
    for (const auto& record : run.records) {
        auto& slot = sums[{record.at("model").get<std::string>(),
                           record.at("knowledgeGapLevel").get<int>(),
                           record.at("turns").get<int>()}];
        slot.first += record.at("metrics").at("revisitRate").get<double>();
        ++slot.second;
    }
    for (const auto& [key, slot] : sums) {
        table.rows.push_back({std::get<0>(key), std::to_string(std::get<1>(key)),
                              std::to_string(std::get<2>(key)),
                              format_number(slot.first / static_cast<double>(slot.second)),
                              std::to_string(slot.second)});
    }
    return table;
}

std::pair<std::string, Table> kind_table(const LoadedRun& run) {
    switch (run.config.kind) {
        case ExperimentKind::diversity: return {"diversity", diversity_table(run)};
        case ExperimentKind::adherence: return {"adherence", adherence_table(run)};
        case ExperimentKind::drift: return {"drift_series", drift_table(run)};
        case ExperimentKind::stability: return {"stability", stability_table(run)};
        case ExperimentKind::revisit: return {"revisit", revisit_table(run)};
    }
    throw ConfigError("unknown experiment kind in manifest");
}

}  // namespace

std::vector<std::string> report(const std::string& run_dir, const std::string& format) {
    if (format != "csv" && format != "jsonl" && format != "markdown") {
        throw InputError("unknown report format: " + format +
                         " (expected csv, jsonl, or markdown)");
    }
    const LoadedRun run = load_run(run_dir);
    const auto [table_name, table] = kind_table(run);
    const fs::path reports_dir = fs::path(run_dir) / "reports";
    std::vector<std::string> written;

    if (format == "csv") {
        const std::string path = (reports_dir / (table_name + ".csv")).string();
        write_file_atomic(path, table.to_csv());
        written.push_back(path);
    } else if (format == "jsonl") {
        std::ostringstream aggregate;
        for (const auto& row : table.to_jsonl_rows(table_name)) {
            aggregate << row.dump() << "\n";
        }
        const std::string aggregate_path = (reports_dir / "aggregates.jsonl").string();
        write_file_atomic(aggregate_path, aggregate.str());
        written.push_back(aggregate_path);

        std::ostringstream per_conversation;
        for (const auto& record : run.records) {
            per_conversation << record.dump() << "\n";
        }
        const std::string records_path = (reports_dir / "per_conversation.jsonl").string();
        write_file_atomic(records_path, per_conversation.str());
        written.push_back(records_path);
    } else {
        std::ostringstream md;
        md << "# Experiment report: " << run.manifest.value("presetName", table_name) << "\n\n";
        md << "- kind: " << run.manifest.value("kind", "") << "\n";
        md << "- manifest config hash: `" << run.manifest.value("configHash", "") << "`\n";
        md << "- template version: " << run.manifest.value("templateVersion", "") << "\n";
        md << "- conversations: " << run.records.size() << " (" << run.failures.size()
           << " failed cells)\n\n";
        md << "## " << table_name << "\n\n" << table.to_markdown() << "\n";
        if (!run.failures.empty()) {
            md << "## failures\n\n";
            for (const auto& failure : run.failures) {
                md << "- " << failure.value("cellId", "?") << ": " << failure.value("error", "?")
                   << "\n";
            }
        }
        const std::string path = (reports_dir / "report.md").string();
        write_file_atomic(path, md.str());
        written.push_back(path);
    }
    return written;
}

}  // namespace convsim::runner
