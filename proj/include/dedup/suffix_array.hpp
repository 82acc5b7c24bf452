#pragma once

#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace dedup {

// Read-only view over suffix array entries. Entries in a mapped index file
// sit 19 bytes into the file and are not 8-byte aligned, so loads go
// through memcpy (a single mov on x86-64) instead of a typed pointer.
class SaSpan {
 public:
  SaSpan() = default;
  SaSpan(std::span<const std::uint64_t> entries)
      : base_(reinterpret_cast<const char*>(entries.data())),
        size_(entries.size()) {}
  SaSpan(const std::vector<std::uint64_t>& entries)
      : SaSpan(std::span<const std::uint64_t>(entries)) {}
  SaSpan(const char* unaligned_base, std::size_t count)
      : base_(unaligned_base), size_(count) {}

  std::uint64_t operator[](std::size_t i) const {
    std::uint64_t v;
    std::memcpy(&v, base_ + i * 8, 8);
    return v;
  }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

 private:
  const char* base_ = nullptr;
  std::size_t size_ = 0;
};

// Lexicographic ordering of all suffixes of a byte sequence. Plain byte
// order, no sentinel: on a shared prefix the shorter suffix sorts first.
struct SuffixArray {
  std::vector<std::uint64_t> indices;

  std::size_t size() const { return indices.size(); }
  SaSpan view() const { return SaSpan(indices); }
};

// Suffix starts restricted to [split_start, split_end), sorted by suffix.
// Built over the split plus `overlap` borrowed bytes; entries from the
// borrowed region are already discarded.
struct PartialSuffixArray {
  std::uint64_t split_start = 0;
  std::uint64_t split_end = 0;
  std::uint64_t overlap = 0;
  std::vector<std::uint64_t> indices;
};

// Linear-time construction by induced sorting.
SuffixArray build_sais(std::string_view text);

struct BuildOptions {
  // Bytes borrowed past each split end. Must exceed the longest repeated
  // substring for split-count independence; 0 picks the default
  // max(50 * scan_threshold, 64 KiB).
  std::uint64_t overlap = 0;
  std::uint64_t scan_threshold = 100;
  unsigned threads = 0;  // 0 = hardware concurrency
};

std::uint64_t default_overlap(const BuildOptions& options);

// Divide-and-conquer construction: SA-IS per split in parallel, then a
// heap merge. Output is byte-identical to build_sais for any split count
// provided the overlap exceeds the longest repeat.
SuffixArray build_parallel(std::string_view text, unsigned splits,
                           const BuildOptions& options = {});

std::vector<PartialSuffixArray> build_partials(std::string_view text,
                                               unsigned splits,
                                               const BuildOptions& options = {});

// K-way merge of partial arrays into the global suffix array. Parts must
// cover the text contiguously and disjointly; gaps or overlaps raise
// DataError. `jobs` merge segments in parallel; the output is identical
// for any job count.
SuffixArray merge_partials(const std::vector<PartialSuffixArray>& parts,
                           std::string_view text, unsigned jobs = 1);

// Streaming variant: emits the merged array in order as contiguous blocks.
void merge_partials_to(const std::vector<PartialSuffixArray>& parts,
                       std::string_view text, unsigned jobs,
                       const std::function<void(std::span<const std::uint64_t>)>& sink);

// All start offsets of `pattern` in the text, ascending. Binary search over
// the suffix array; throws std::invalid_argument for an empty pattern.
std::vector<std::uint64_t> find_occurrences(SaSpan sa, std::string_view text,
                                            std::string_view pattern);

// Longest l with text[i..i+l) == text[j..j+l), capped at the sequence end.
std::uint64_t common_prefix_length(std::string_view text, std::uint64_t i,
                                   std::uint64_t j);

struct LongestMatch {
  std::uint64_t length = 0;    // longest prefix of the query found in text
  std::uint64_t position = 0;  // one occurrence of that prefix
};

// Longest prefix of `query` occurring anywhere in the indexed text.
LongestMatch longest_match(SaSpan sa, std::string_view text,
                           std::string_view query);

// Spot check: re-validates suffix order on `samples` random adjacent pairs.
// Returns false on the first violation. Catches overlap-too-short parallel
// builds with high probability when repeats are frequent.
bool verify_sorted_sample(SaSpan sa, std::string_view text,
                          std::size_t samples, std::uint64_t seed);

}  // namespace dedup
