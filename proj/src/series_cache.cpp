#include "splab/series_cache.hpp"

#include "splab/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace splab {

std::string stable_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SeriesCache& SeriesCache::global() {
    static SeriesCache cache;
    return cache;
}

SeriesCache::Ptr SeriesCache::get_or_compute(const std::string& key, const std::function<LaurentSeries()>& compute) {
    if (!enabled_) {
        return std::make_shared<const LaurentSeries>(compute());
    }
    {
        std::shared_lock lock(mutex_);
        if (auto it = table_.find(key); it != table_.end()) {
            return it->second;
        }
    }
    Ptr value;
    if (auto from_disk = load_from_disk(key)) {
        ++disk_hits_;
        value = std::make_shared<const LaurentSeries>(std::move(*from_disk));
    } else {
        value = std::make_shared<const LaurentSeries>(compute());
        store_to_disk(key, *value);
    }
    std::unique_lock lock(mutex_);
    return table_.try_emplace(key, std::move(value)).first->second;
}

void SeriesCache::set_disk_dir(std::optional<std::filesystem::path> dir) {
    std::unique_lock lock(mutex_);
    dir_ = std::move(dir);
    if (dir_) {
        std::filesystem::create_directories(*dir_);
    }
}

std::optional<std::filesystem::path> SeriesCache::disk_dir() const {
    std::shared_lock lock(mutex_);
    return dir_;
}

void SeriesCache::clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
}

std::size_t SeriesCache::size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
}

std::optional<LaurentSeries> SeriesCache::load_from_disk(const std::string& key) const {
    auto dir = disk_dir();
    if (!dir) {
        return std::nullopt;
    }
    std::ifstream in(*dir / (stable_hash(key) + ".json"));
    if (!in) {
        return std::nullopt;
    }
    try {
        auto j = nlohmann::json::parse(in);
        if (j.at("key").get<std::string>() != key) {
            return std::nullopt; // hash collision
        }
        return j.at("series").get<LaurentSeries>();
    } catch (const std::exception&) {
        return std::nullopt; // unreadable entry is recomputed and overwritten
    }
}

void SeriesCache::store_to_disk(const std::string& key, const LaurentSeries& s) const {
    auto dir = disk_dir();
    if (!dir) {
        return;
    }
    const auto final_path = *dir / (stable_hash(key) + ".json");
    std::ostringstream tmp_name;
    tmp_name << final_path.string() << ".tmp" << std::hash<std::thread::id>{}(std::this_thread::get_id());
    {
        std::ofstream out(tmp_name.str());
        out << nlohmann::json{{"key", key}, {"series", s}}.dump();
    }
    std::error_code ec;
    std::filesystem::rename(tmp_name.str(), final_path, ec);
}

} // namespace splab
