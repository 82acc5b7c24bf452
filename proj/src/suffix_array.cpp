#include "dedup/suffix_array.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <map>
#include <mutex>
#include <queue>
#include <random>
#include <stdexcept>
#include <thread>

#include "dedup/errors.hpp"

namespace dedup {

namespace {

// string_view comparison is bytewise unsigned with shorter-prefix-first
// ties, which is exactly the suffix order used throughout.
inline bool suffix_less(std::string_view text, std::uint64_t a,
                        std::uint64_t b) {
  return text.substr(a) < text.substr(b);
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

std::uint64_t default_overlap(const BuildOptions& options) {
  if (options.overlap != 0) return options.overlap;
  return std::max<std::uint64_t>(options.scan_threshold * 50, 64 * 1024);
}

std::vector<PartialSuffixArray> build_partials(std::string_view text,
                                               unsigned splits,
                                               const BuildOptions& options) {
  const std::uint64_t n = text.size();
  const std::uint64_t overlap = default_overlap(options);
  std::uint64_t k = std::max<std::uint64_t>(1, splits);
  k = std::min<std::uint64_t>(k, std::max<std::uint64_t>(n, 1));

  std::vector<PartialSuffixArray> parts(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    parts[i].split_start = n * i / k;
    parts[i].split_end = n * (i + 1) / k;
    parts[i].overlap = overlap;
  }

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next.fetch_add(1); i < k; i = next.fetch_add(1)) {
      auto& part = parts[i];
      const std::uint64_t len = part.split_end - part.split_start;
      const std::uint64_t borrowed =
          std::min<std::uint64_t>(overlap, n - part.split_end);
      SuffixArray local =
          build_sais(text.substr(part.split_start, len + borrowed));
      part.indices.reserve(len);
      for (std::uint64_t e : local.indices) {
        if (e < len) part.indices.push_back(part.split_start + e);
      }
    }
  };

  const unsigned threads =
      std::min<unsigned>(resolve_threads(options.threads),
                         static_cast<unsigned>(k));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return parts;
}

namespace {

struct MergeCursor {
  std::uint64_t pos;     // suffix start in the full text
  std::uint32_t part;    // source part
  std::uint64_t offset;  // index of the next entry within the part
};

// Merges one segment (a [from, to) index range per part) in suffix order.
void merge_segment(const std::vector<PartialSuffixArray>& parts,
                   std::string_view text,
                   const std::vector<std::uint64_t>& from,
                   const std::vector<std::uint64_t>& to,
                   std::uint64_t first_rank,
                   const std::function<void(std::uint64_t,
                                            std::span<const std::uint64_t>)>&
                       emit) {
  auto greater = [&](const MergeCursor& a, const MergeCursor& b) {
    return suffix_less(text, b.pos, a.pos);
  };
  std::priority_queue<MergeCursor, std::vector<MergeCursor>, decltype(greater)>
      heap(greater);
  for (std::uint32_t p = 0; p < parts.size(); ++p) {
    if (from[p] < to[p]) {
      heap.push({parts[p].indices[from[p]], p, from[p] + 1});
    }
  }

  constexpr std::size_t kBlock = 1u << 20;
  std::vector<std::uint64_t> block;
  block.reserve(kBlock);
  std::uint64_t rank = first_rank;
  while (!heap.empty()) {
    MergeCursor top = heap.top();
    heap.pop();
    block.push_back(top.pos);
    if (top.offset < to[top.part]) {
      heap.push({parts[top.part].indices[top.offset], top.part,
                 top.offset + 1});
    }
    if (block.size() == kBlock) {
      emit(rank, block);
      rank += block.size();
      block.clear();
    }
  }
  if (!block.empty()) emit(rank, block);
}

}  // namespace

void merge_partials_to(
    const std::vector<PartialSuffixArray>& parts, std::string_view text,
    unsigned jobs,
    const std::function<void(std::span<const std::uint64_t>)>& sink) {
  const std::uint64_t n = text.size();

  // Coverage check: contiguous and disjoint after overlap trimming.
  std::vector<std::uint32_t> order(parts.size());
  for (std::uint32_t i = 0; i < parts.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return parts[a].split_start < parts[b].split_start;
  });
  std::uint64_t expect = 0;
  for (std::uint32_t idx : order) {
    const auto& p = parts[idx];
    if (p.split_start != expect || p.split_end < p.split_start) {
      throw DataError("partial suffix arrays do not cover the text "
                      "contiguously (gap or overlap at offset " +
                      std::to_string(expect) + ")");
    }
    expect = p.split_end;
  }
  if (expect != n) {
    throw DataError("partial suffix arrays cover " + std::to_string(expect) +
                    " bytes of a " + std::to_string(n) + " byte text");
  }

  const std::uint32_t num_parts = static_cast<std::uint32_t>(parts.size());
  std::uint64_t total = 0;
  std::uint32_t largest = 0;
  for (std::uint32_t p = 0; p < num_parts; ++p) {
    total += parts[p].indices.size();
    if (parts[p].indices.size() > parts[largest].indices.size()) largest = p;
  }
  if (total == 0) return;

  const unsigned requested = std::max(1u, jobs);
  const std::uint64_t big = parts[largest].indices.size();
  const std::uint64_t num_jobs = std::min<std::uint64_t>(requested, big);

  // Segment boundaries: evenly spaced pivot suffixes taken from the
  // largest part, located in every other part by binary search.
  std::vector<std::vector<std::uint64_t>> cuts(
      num_jobs + 1, std::vector<std::uint64_t>(num_parts, 0));
  for (std::uint32_t p = 0; p < num_parts; ++p) {
    cuts[num_jobs][p] = parts[p].indices.size();
  }
  for (std::uint64_t j = 1; j < num_jobs; ++j) {
    const std::uint64_t pivot = parts[largest].indices[big * j / num_jobs];
    for (std::uint32_t p = 0; p < num_parts; ++p) {
      const auto& idx = parts[p].indices;
      cuts[j][p] = std::lower_bound(idx.begin(), idx.end(), pivot,
                                    [&](std::uint64_t pos, std::uint64_t piv) {
                                      return suffix_less(text, pos, piv);
                                    }) -
                   idx.begin();
    }
  }

  std::vector<std::uint64_t> job_rank(num_jobs, 0);
  for (std::uint64_t j = 0; j < num_jobs; ++j) {
    std::uint64_t rank = 0;
    for (std::uint32_t p = 0; p < num_parts; ++p) rank += cuts[j][p];
    job_rank[j] = rank;
  }

  std::mutex sink_mutex;
  std::uint64_t emitted_watermark = 0;
  std::map<std::uint64_t, std::vector<std::uint64_t>> pending;
  auto emit = [&](std::uint64_t rank, std::span<const std::uint64_t> block) {
    // Blocks may arrive out of order across jobs; release them in rank
    // order so the sink sees one in-order stream.
    std::scoped_lock lock(sink_mutex);
    if (rank == emitted_watermark) {
      sink(block);
      emitted_watermark += block.size();
      auto it = pending.begin();
      while (it != pending.end() && it->first == emitted_watermark) {
        sink(it->second);
        emitted_watermark += it->second.size();
        it = pending.erase(it);
      }
    } else {
      pending.emplace(rank, std::vector<std::uint64_t>(block.begin(),
                                                       block.end()));
    }
  };

  if (num_jobs == 1) {
    merge_segment(parts, text, cuts[0], cuts[1], 0, emit);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(num_jobs);
  for (std::uint64_t j = 0; j < num_jobs; ++j) {
    pool.emplace_back([&, j] {
      merge_segment(parts, text, cuts[j], cuts[j + 1], job_rank[j], emit);
    });
  }
  for (auto& th : pool) th.join();
}

SuffixArray merge_partials(const std::vector<PartialSuffixArray>& parts,
                           std::string_view text, unsigned jobs) {
  SuffixArray result;
  result.indices.reserve(text.size());
  merge_partials_to(parts, text, jobs,
                    [&](std::span<const std::uint64_t> block) {
                      result.indices.insert(result.indices.end(),
                                            block.begin(), block.end());
                    });
  return result;
}

SuffixArray build_parallel(std::string_view text, unsigned splits,
                           const BuildOptions& options) {
  if (splits <= 1 || text.size() < 2) return build_sais(text);
  auto parts = build_partials(text, splits, options);
  return merge_partials(parts, text, resolve_threads(options.threads));
}

namespace {

// First rank in [lo, hi) where pred flips to false; pred must be monotone.
template <typename Pred>
std::size_t partition_rank(std::size_t lo, std::size_t hi, Pred pred) {
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

std::vector<std::uint64_t> find_occurrences(SaSpan sa, std::string_view text,
                                            std::string_view pattern) {
  if (pattern.empty()) {
    throw std::invalid_argument("find_occurrences: empty pattern");
  }
  const std::size_t m = pattern.size();
  const std::size_t lo = partition_rank(0, sa.size(), [&](std::size_t r) {
    return text.compare(sa[r], m, pattern) < 0;
  });
  const std::size_t hi = partition_rank(lo, sa.size(), [&](std::size_t r) {
    return text.compare(sa[r], m, pattern) == 0;
  });
  std::vector<std::uint64_t> result;
  result.reserve(hi - lo);
  for (std::size_t r = lo; r < hi; ++r) result.push_back(sa[r]);
  std::sort(result.begin(), result.end());
  return result;
}

std::uint64_t common_prefix_length(std::string_view text, std::uint64_t i,
                                   std::uint64_t j) {
  const std::uint64_t n = text.size();
  const std::uint64_t cap = n - std::max(i, j);
  std::uint64_t l = 0;
  while (l < cap && text[i + l] == text[j + l]) ++l;
  return l;
}

LongestMatch longest_match(SaSpan sa, std::string_view text,
                           std::string_view query) {
  LongestMatch best;
  if (query.empty() || sa.empty()) return best;
  const std::size_t at = partition_rank(0, sa.size(), [&](std::size_t r) {
    return text.substr(sa[r]) < query;
  });
  auto prefix_len = [&](std::uint64_t pos) {
    const std::uint64_t cap =
        std::min<std::uint64_t>(query.size(), text.size() - pos);
    std::uint64_t l = 0;
    while (l < cap && text[pos + l] == query[l]) ++l;
    return l;
  };
  // The suffixes sharing the longest prefix with the query sit next to its
  // insertion point.
  if (at < sa.size()) {
    const std::uint64_t pos = sa[at];
    const std::uint64_t l = prefix_len(pos);
    if (l > best.length) best = {l, pos};
  }
  if (at > 0) {
    const std::uint64_t pos = sa[at - 1];
    const std::uint64_t l = prefix_len(pos);
    if (l > best.length) best = {l, pos};
  }
  return best;
}

bool verify_sorted_sample(SaSpan sa, std::string_view text,
                          std::size_t samples, std::uint64_t seed) {
  if (sa.size() < 2) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, sa.size() - 2);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t r = dist(rng);
    if (!suffix_less(text, sa[r], sa[r + 1])) return false;
  }
  return true;
}

}  // namespace dedup
