#ifndef PERMWILF_CACHE_HPP
#define PERMWILF_CACHE_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "permwilf/enumeration.hpp"

namespace permwilf {

inline constexpr const char* kEngineVersion = "permwilf-1.0";

struct CacheRecord {
  std::string pattern;  // canonical comma-separated text
  int n = 0;
  std::string count;    // decimal digits
  std::string engine_version;
};

inline nlohmann::ordered_json to_json(const CacheRecord& r) {
  nlohmann::ordered_json j;
  j["pattern"] = r.pattern;
  j["n"] = r.n;
  j["count"] = r.count;
  j["engine_version"] = r.engine_version;
  return j;
}

/// Parses one cache line; nullopt when the line is not a valid record.
inline std::optional<CacheRecord> parse_cache_line(const std::string& line) {
  const auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object()) return std::nullopt;
  for (const char* key : {"pattern", "count", "engine_version"})
    if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
  if (!j.contains("n") || !j["n"].is_number_integer()) return std::nullopt;
  CacheRecord r{j["pattern"].get<std::string>(), j["n"].get<int>(), j["count"].get<std::string>(),
                j["engine_version"].get<std::string>()};
  if (r.n < 0 || r.count.empty()) return std::nullopt;
  for (char c : r.count)
    if (c < '0' || c > '9') return std::nullopt;
  try {
    r.pattern = format_permutation(parse_permutation(r.pattern));
  } catch (const ParseError&) {
    return std::nullopt;
  }
  return r;
}

/// Line-delimited JSON count cache with append-only write-through. Corrupt
/// lines are skipped with a warning.
class JsonlCountCache : public CountStore {
public:
  explicit JsonlCountCache(std::filesystem::path path, std::ostream& warnings = std::cerr)
      : path_(std::move(path)), warnings_(&warnings) {
    load();
  }

  std::optional<Count> lookup(const Permutation& q, int n) override {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find({format_permutation(q), n});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void store(const Permutation& q, int n, const Count& count) override {
    std::lock_guard lock(mutex_);
    const auto key = std::pair{format_permutation(q), n};
    if (entries_.count(key)) return;
    entries_.emplace(key, count);
    const CacheRecord rec{key.first, n, count.str(), kEngineVersion};
    std::ofstream out(path_, std::ios::app);
    if (!out) {
      *warnings_ << "warning: cannot append to cache " << path_ << "\n";
      return;
    }
    out << to_json(rec).dump() << '\n';
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

  int skipped_lines() const noexcept { return skipped_; }
  const std::filesystem::path& path() const noexcept { return path_; }

private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto rec = parse_cache_line(line);
      if (!rec) {
        ++skipped_;
        *warnings_ << "warning: " << path_.string() << ":" << lineno << ": skipping corrupt cache line\n";
        continue;
      }
      entries_.emplace(std::pair{rec->pattern, rec->n}, Count(rec->count));
    }
  }

  std::filesystem::path path_;
  std::ostream* warnings_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, int>, Count> entries_;
  int skipped_ = 0;
};

}  // namespace permwilf

#endif
