#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dedup/corpus.hpp"
#include "dedup/jsonl.hpp"
#include "dedup/suffix_array.hpp"

namespace dedup {

struct MatchThreshold {
  std::uint64_t min_len = 100;  // bytes; roughly 50 two-byte BPE tokens
};

// One occurrence of repeated content, clipped to a single document.
// Spans from the same suffix-array run share a group_id (the run's first
// rank); peer_count is the number of occurrences in the run.
struct DuplicateSpan {
  std::uint64_t global_start = 0;
  std::uint64_t global_end = 0;
  std::uint64_t group_id = 0;
  std::uint32_t peer_count = 0;

  friend bool operator==(const DuplicateSpan&, const DuplicateSpan&) = default;
};

// Scans adjacent suffix-array entries for shared prefixes of at least
// min_len bytes, expands them into runs, and emits one span per occurrence,
// clipped at document boundaries and re-checked against min_len. The union
// of the returned spans is exactly the set of byte positions contained in
// some in-document window of length >= min_len whose content occurs at
// two or more positions in the corpus sequence.
std::vector<DuplicateSpan> find_duplicate_spans(SaSpan sa,
                                                const Corpus& corpus,
                                                MatchThreshold threshold,
                                                unsigned threads = 0);

// Keeps the earliest span of every group (the highest-priority split by
// construction of the corpus order) and schedules all others for excision.
// Intervals from different groups are unioned per document.
RemovalPlan plan_removals(std::span<const DuplicateSpan> spans,
                          const Corpus& corpus);

struct CrossMatch {
  std::uint64_t probe_doc = 0;
  std::uint64_t probe_begin = 0;  // document-local, end-exclusive
  std::uint64_t probe_end = 0;
  std::uint64_t corpus_offset = 0;  // one occurrence in the indexed corpus
};

// Maximal intervals of each probe document (length >= min_len) that occur
// verbatim in the indexed corpus.
std::vector<CrossMatch> cross_corpus_matches(SaSpan corpus_sa,
                                             const Corpus& corpus,
                                             const Corpus& probe,
                                             MatchThreshold threshold,
                                             unsigned threads = 0);

// m(k): the probability that the length-k window at a position occurs at
// some other position of the sequence.
struct MatchLengthCurve {
  struct Point {
    std::uint64_t k = 0;
    double m_k = 0.0;
  };
  std::vector<Point> points;
};

struct CurveOptions {
  std::uint64_t sample_size = 100000;
  std::uint64_t exact_limit = 16ull << 20;  // exhaustive below this size
  std::uint64_t seed = 0x6d6b;
  unsigned threads = 0;
};

MatchLengthCurve match_length_curve(SaSpan sa, std::string_view text,
                                    std::span<const std::uint64_t> k_values,
                                    const CurveOptions& options = {});

// Fraction of each split's bytes covered by spans whose duplicate group has
// a peer occurrence in a given split.
struct DuplicationStats {
  struct Row {
    std::uint64_t split_bytes = 0;
    std::uint64_t covered_bytes = 0;  // any peer
    // covered_by_peer[t]: bytes covered by spans with a peer in split t.
    std::array<std::uint64_t, 3> covered_by_peer{0, 0, 0};
  };
  std::array<Row, 3> rows;  // indexed by Split

  double fraction(Split s, Split peer) const {
    const auto& row = rows[static_cast<int>(s)];
    if (row.split_bytes == 0) return 0.0;
    return static_cast<double>(row.covered_by_peer[static_cast<int>(peer)]) /
           static_cast<double>(row.split_bytes);
  }
  double fraction(Split s) const {
    const auto& row = rows[static_cast<int>(s)];
    if (row.split_bytes == 0) return 0.0;
    return static_cast<double>(row.covered_bytes) /
           static_cast<double>(row.split_bytes);
  }
};

DuplicationStats duplication_stats(std::span<const DuplicateSpan> spans,
                                   const Corpus& corpus);

}  // namespace dedup
