#pragma once

#include "pebble/io.hpp"
#include "pebble/numbers.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace pebble {

// Append-only JSON-lines file of finished number queries. Every line holds one
// result; reading merges all lines, so concurrent appends from separate runs
// are harmless. Lines that fail to parse are skipped.
class ResultCache : public NumberCache {
public:
    explicit ResultCache(std::string path) : path_{std::move(path)} { load(); }

    // $PEBBLE_CACHE if set, otherwise `fallback`.
    static std::string default_path(const std::string& fallback = ".pebble-cache.jsonl") {
        if (const char* env = std::getenv("PEBBLE_CACHE"); env && *env)
            return env;
        return fallback;
    }

    std::optional<NumberResult> lookup(const std::string& fingerprint) override {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(fingerprint);
        if (it == entries_.end())
            return std::nullopt;
        ++hits_;
        return it->second;
    }

    void store(const NumberResult& result) override {
        std::lock_guard lock(mutex_);
        if (entries_.contains(result.fingerprint))
            return;
        entries_.emplace(result.fingerprint, result);
        std::ofstream out(path_, std::ios::app);
        auto j = to_json(result);
        j.erase("from_cache");
        out << j.dump() << '\n';
    }

    [[nodiscard]] std::size_t size() const {
        std::lock_guard lock(mutex_);
        return entries_.size();
    }
    [[nodiscard]] std::size_t hits() const {
        std::lock_guard lock(mutex_);
        return hits_;
    }
    [[nodiscard]] const std::string& path() const { return path_; }

private:
    void load() {
        std::ifstream in(path_);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            try {
                auto r = number_result_from_json(Json::parse(line));
                entries_.insert_or_assign(r.fingerprint, r);
            } catch (const std::exception&) {
                // a torn final line from an interrupted run
            }
        }
    }

    std::string path_;
    mutable std::mutex mutex_;
    std::map<std::string, NumberResult> entries_;
    std::size_t hits_ = 0;
};

} // namespace pebble
