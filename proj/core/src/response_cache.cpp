#include "convsim/gateway/response_cache.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "convsim/util/strings.hpp"

namespace convsim::gateway {

ResponseCache::ResponseCache(std::string dir, bool enabled)
    : dir_(std::move(dir)), enabled_(enabled && !dir_.empty()) {
    if (enabled_) {
        std::filesystem::create_directories(dir_);
    }
}

std::string ResponseCache::path_for(const std::string& key) const {
    return (std::filesystem::path(dir_) / (key + ".json")).string();
}

std::optional<ResponseCache::Entry> ResponseCache::lookup(const std::string& key) const {
    if (!enabled_) return std::nullopt;
    std::lock_guard<std::mutex> lock(mutex_);
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in.good()) return std::nullopt;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        auto doc = nlohmann::json::parse(text);
        Entry entry;
        entry.raw = doc.at("raw").get<std::string>();
        entry.timestamp = doc.value("timestamp", "");
        return entry;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // corrupt entries are treated as misses
    }
}

void ResponseCache::store(const std::string& key, const Entry& entry) {
    if (!enabled_) return;
    nlohmann::json doc;
    doc["raw"] = entry.raw;
    doc["timestamp"] = entry.timestamp;
    std::lock_guard<std::mutex> lock(mutex_);
    write_file_atomic(path_for(key), doc.dump());
}

}  // namespace convsim::gateway
