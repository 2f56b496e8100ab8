#pragma once

#include "dreamxi/dataset/store.hpp"
#include "dreamxi/ingest/synthetic.hpp"

namespace dreamxi::testing {

inline dataset::PerformanceStore synthetic_store(std::size_t matches, std::uint64_t seed = 7,
                                                 std::vector<MatchFormat> formats = {MatchFormat::T20}) {
  ingest::SyntheticConfig cfg;
  cfg.n_matches = matches;
  cfg.seed = seed;
  cfg.formats = std::move(formats);
  return dataset::build_tables(ingest::generate_corpus(cfg), dataset::default_rubric());
}

}  // namespace dreamxi::testing
