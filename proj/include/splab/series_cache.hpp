#pragma once

#include "splab/laurent_series.hpp"

#include <atomic>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace splab {

/// Process-wide memo table for computed series (derivative ratios, Schwarzians,
/// D factors), optionally backed by JSON files in a directory.
///
/// Readers run concurrently; a finished value is published under an exclusive
/// lock and the first published value wins. Two threads racing on the same key
/// both compute, which is harmless because values are deterministic.
class SeriesCache {
public:
    using Ptr = std::shared_ptr<const LaurentSeries>;

    static SeriesCache& global();

    Ptr get_or_compute(const std::string& key, const std::function<LaurentSeries()>& compute);

    void set_disk_dir(std::optional<std::filesystem::path> dir);
    std::optional<std::filesystem::path> disk_dir() const;
    /// Turns memoization off entirely (every lookup recomputes); used to check
    /// that caching never changes results.
    void set_enabled(bool on) { enabled_ = on; }
    bool enabled() const { return enabled_; }

    void clear();
    std::size_t size() const;
    std::size_t disk_hits() const { return disk_hits_; }

private:
    std::optional<LaurentSeries> load_from_disk(const std::string& key) const;
    void store_to_disk(const std::string& key, const LaurentSeries& s) const;

    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, Ptr> table_;
    std::optional<std::filesystem::path> dir_;
    std::atomic<bool> enabled_{true};
    std::atomic<std::size_t> disk_hits_{0};
};

/// 64-bit FNV-1a, hex encoded; stable across builds (used for file names and map identities).
std::string stable_hash(const std::string& text);

} // namespace splab
