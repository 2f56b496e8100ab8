#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dreamxi/ingest/json_io.hpp"
#include "dreamxi/ingest/parse.hpp"
#include "dreamxi/util/parallel.hpp"

namespace dreamxi::ingest {

namespace fs = std::filesystem;

/// Format implied by a corpus subdirectory name, if any.
inline std::optional<MatchFormat> format_from_directory(const fs::path& dir) {
  const std::string name = dir.filename().string();
  for (MatchFormat f : kAllFormats)
    if (name == directory_name(f)) return f;
  return std::nullopt;
}

inline bool is_match_file(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".yaml" || ext == ".yml" || ext == ".json";
}

/// Loads a match from either a cricsheet YAML file or an ingest-cache JSON file.
inline MatchRecord load_match(const fs::path& path, std::optional<MatchFormat> hint) {
  if (path.extension() == ".json") return read_cached_match(path);
  return parse_match_path(path, hint);
}

struct ScanOptions {
  /// Restrict to one format directory.
  std::optional<MatchFormat> only;
  unsigned threads = 0;
};

/// Collects match files under <root>/{odi,ipl,t20}/ plus loose files in root.
inline std::vector<std::pair<fs::path, std::optional<MatchFormat>>> list_match_files(
    const fs::path& root, const ScanOptions& opts = {}) {
  if (!fs::is_directory(root)) throw Error(ErrorCode::RootNotFound, root.string());
  std::vector<std::pair<fs::path, std::optional<MatchFormat>>> files;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) {
      const auto f = format_from_directory(entry.path());
      if (!f || (opts.only && *opts.only != *f)) continue;
      for (const auto& file : fs::directory_iterator(entry.path()))
        if (file.is_regular_file() && is_match_file(file.path())) files.emplace_back(file.path(), f);
    } else if (entry.is_regular_file() && is_match_file(entry.path()) && !opts.only) {
      files.emplace_back(entry.path(), std::nullopt);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

struct ScanResult {
  CorpusIndex index;
  std::vector<MatchRecord> matches;  // parallel to index.entries
};

/// Parses every match file under root in parallel. Unparseable files land in
/// index.failures; they never abort the scan.
inline ScanResult scan_and_load(const fs::path& root, const ScanOptions& opts = {}) {
  const auto files = list_match_files(root, opts);
  std::vector<std::optional<MatchRecord>> parsed(files.size());
  std::vector<std::string> errors(files.size());
  util::parallel_for(
      files.size(),
      [&](std::size_t i) {
        try {
          parsed[i] = load_match(files[i].first, files[i].second);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      },
      opts.threads);

  ScanResult out;
  for (MatchFormat f : kAllFormats) out.index.counts_by_format[f] = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!parsed[i]) {
      out.index.failures.push_back({files[i].first, errors[i]});
      continue;
    }
    const auto& meta = parsed[i]->meta;
    out.index.entries.push_back(
        {meta.match_id, meta.format, meta.teams, meta.dates.front(), files[i].first});
    ++out.index.counts_by_format[meta.format];
    out.matches.push_back(std::move(*parsed[i]));
  }
  return out;
}

inline CorpusIndex scan_corpus(const fs::path& root, const ScanOptions& opts = {}) {
  return scan_and_load(root, opts).index;
}

}  // namespace dreamxi::ingest
