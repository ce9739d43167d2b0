#pragma once

#include <mutex>
#include <optional>
#include <string>

namespace convsim::gateway {

/// Raw provider responses on disk, keyed by request digest. Writes are
/// atomic per key (temp file + rename), so concurrent workers never read a
/// half-written entry.
class ResponseCache {
public:
    struct Entry {
        std::string raw;
        std::string timestamp;
    };

    ResponseCache(std::string dir, bool enabled);

    std::optional<Entry> lookup(const std::string& key) const;
    void store(const std::string& key, const Entry& entry);
    bool enabled() const { return enabled_; }

private:
    std::string path_for(const std::string& key) const;

    std::string dir_;
    bool enabled_;
    mutable std::mutex mutex_;
};

}  // namespace convsim::gateway
