#include "convsim/gateway/gateway.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::gateway {

namespace {

const JudgePathSpec* find_path_spec(const std::string& path) {
    for (const auto& spec : judge_path_specs()) {
        if (spec.path == path) return &spec;
    }
    return nullptr;
}

}  // namespace

LabelImport import_human_labels(const std::string& path) {
    const std::string text = read_file(path);
    LabelImport result;

    // rows grouped by (conversation, annotator), preserving first-seen order
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, InferredParameters> grouped;

    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::string where = "line " + std::to_string(line_no);

        nlohmann::json row;
        try {
            row = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            result.row_errors.push_back(where + ": not valid JSON: " + e.what());
            continue;
        }
        if (!row.is_object() || !row.contains("conversation_id") || !row.contains("annotator_id") ||
            !row.contains("parameter_path") || !row.contains("value")) {
            result.row_errors.push_back(
                where + ": rows need conversation_id, annotator_id, parameter_path, value");
            continue;
        }
        std::string conversation_id;
        std::string annotator_id;
        std::string parameter_path;
        try {
            conversation_id = row.at("conversation_id").get<std::string>();
            annotator_id = row.at("annotator_id").get<std::string>();
            parameter_path = row.at("parameter_path").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            result.row_errors.push_back(where + ": " + e.what());
            continue;
        }

        const JudgePathSpec* spec_ptr = find_path_spec(parameter_path);
        if (spec_ptr == nullptr) {
            result.row_errors.push_back(where + ": unknown parameter path \"" + parameter_path +
                                        "\"");
            continue;
        }
        const JudgePathSpec& spec = *spec_ptr;
        const auto& value = row.at("value");

        const auto group_key = std::make_pair(conversation_id, annotator_id);
        if (!grouped.count(group_key)) {
            order.push_back(group_key);
            InferredParameters record;
            record.judge_id = "human";
            record.conversation_id = conversation_id;
            record.annotator_id = annotator_id;
            grouped[group_key] = std::move(record);
        }
        InferredParameters& record = grouped[group_key];

        if (spec.numeric) {
            if (!value.is_number()) {
                result.row_errors.push_back(where + ": " + parameter_path + " needs a number");
                continue;
            }
            const double v = value.get<double>();
            if (v < spec.lo || v > spec.hi) {
                result.row_errors.push_back(where + ": " + parameter_path + " value " +
                                            value.dump() + " outside [" + std::to_string(spec.lo) +
                                            ", " + std::to_string(spec.hi) + "]");
                continue;
            }
            record.numeric[parameter_path] = v;
        } else {
            if (!value.is_string()) {
                result.row_errors.push_back(where + ": " + parameter_path + " needs a string");
                continue;
            }
            const std::string label = value.get<std::string>();
            if (std::find(spec.labels.begin(), spec.labels.end(), label) == spec.labels.end()) {
                result.row_errors.push_back(where + ": " + parameter_path + " has unknown label \"" +
                                            label + "\"");
                continue;
            }
            record.categorical[parameter_path] = label;
        }
    }

    for (const auto& key : order) {
        auto& record = grouped[key];
        if (!record.numeric.empty() || !record.categorical.empty()) {
            result.records.push_back(std::move(record));
        }
    }
    return result;
}

}  // namespace convsim::gateway
