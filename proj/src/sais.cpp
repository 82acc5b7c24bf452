// Suffix array construction by induced sorting (SA-IS), sentinel-free:
// the end of the text acts as a virtual smallest character, which yields
// plain lexicographic order with shorter suffixes first on ties.
//
// Stage 1 places the LMS suffixes in their buckets, induces L- then
// S-suffixes once, and reads off the sorted LMS substrings. Equal LMS
// substrings receive equal names; if names repeat, the reduced string of
// names is solved recursively. Stage 2 repeats the induction seeded with
// the fully sorted LMS suffixes.

#include <cstdint>
#include <vector>

#include "dedup/suffix_array.hpp"

namespace dedup {
namespace {

template <typename CharT, typename IndexT>
void sais_run(const CharT* text, IndexT* sa, IndexT n, IndexT alphabet) {
  static constexpr IndexT kEmpty = -1;
  if (n <= 0) return;
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  // suffix i is S-type iff it sorts before suffix i+1; the last suffix is
  // L-type because the empty suffix is smaller than everything.
  std::vector<bool> is_s(n);
  is_s[n - 1] = false;
  for (IndexT i = n - 2; i >= 0; --i) {
    is_s[i] =
        text[i] < text[i + 1] || (text[i] == text[i + 1] && is_s[i + 1]);
  }
  auto is_lms = [&](IndexT i) { return i > 0 && is_s[i] && !is_s[i - 1]; };

  std::vector<IndexT> counts(alphabet, 0);
  for (IndexT i = 0; i < n; ++i) ++counts[text[i]];
  std::vector<IndexT> bucket(alphabet);
  auto bucket_starts = [&] {
    IndexT sum = 0;
    for (IndexT c = 0; c < alphabet; ++c) {
      bucket[c] = sum;
      sum += counts[c];
    }
  };
  auto bucket_ends = [&] {
    IndexT sum = 0;
    for (IndexT c = 0; c < alphabet; ++c) {
      sum += counts[c];
      bucket[c] = sum;
    }
  };

  auto induce = [&] {
    // L pass. The virtual empty suffix induces the last suffix first.
    bucket_starts();
    sa[bucket[text[n - 1]]++] = n - 1;
    for (IndexT i = 0; i < n; ++i) {
      IndexT j = sa[i];
      if (j > 0 && !is_s[j - 1]) sa[bucket[text[j - 1]]++] = j - 1;
    }
    // S pass.
    bucket_ends();
    for (IndexT i = n - 1; i >= 0; --i) {
      IndexT j = sa[i];
      if (j > 0 && is_s[j - 1]) sa[--bucket[text[j - 1]]] = j - 1;
    }
  };

  // Stage 1: drop LMS suffixes at their bucket ends (order within a bucket
  // irrelevant) and induce once; afterwards LMS substrings are sorted.
  std::fill(sa, sa + n, kEmpty);
  bucket_ends();
  for (IndexT i = 1; i < n; ++i) {
    if (is_s[i] && !is_s[i - 1]) sa[--bucket[text[i]]] = i;
  }
  induce();

  IndexT n1 = 0;
  for (IndexT i = 0; i < n; ++i) {
    IndexT j = sa[i];
    if (j > 0 && is_s[j] && !is_s[j - 1]) sa[n1++] = j;
  }

  // Name LMS substrings in sorted order; equal substrings share a name.
  // An LMS substring runs through the next LMS position inclusive; the one
  // reaching the end of the text equals no other.
  auto lms_equal = [&](IndexT a, IndexT b) {
    if (text[a] != text[b]) return false;
    IndexT i = a + 1, j = b + 1;
    while (true) {
      if (i == n || j == n) return false;
      if (text[i] != text[j] || is_s[i] != is_s[j]) return false;
      const bool a_lms = is_lms(i);
      if (a_lms != is_lms(j)) return false;
      if (a_lms) return true;
      ++i;
      ++j;
    }
  };

  std::fill(sa + n1, sa + n, kEmpty);
  IndexT names = 0;
  IndexT prev = kEmpty;
  for (IndexT r = 0; r < n1; ++r) {
    const IndexT pos = sa[r];
    if (prev == kEmpty || !lms_equal(prev, pos)) {
      ++names;
      prev = pos;
    }
    sa[n1 + pos / 2] = names - 1;  // LMS positions are >= 2 apart
  }

  // Reduced string in text order.
  std::vector<IndexT> s1(n1);
  {
    IndexT k = 0;
    for (IndexT i = n1; i < n; ++i) {
      if (sa[i] != kEmpty) s1[k++] = sa[i];
    }
  }

  std::vector<IndexT> sa1(n1);
  if (names < n1) {
    sais_run<IndexT, IndexT>(s1.data(), sa1.data(), n1, names);
  } else {
    for (IndexT i = 0; i < n1; ++i) sa1[s1[i]] = i;
  }

  // Reuse s1 as the position table: P[i] = i-th LMS position in text order.
  {
    IndexT k = 0;
    for (IndexT i = 1; i < n; ++i) {
      if (is_s[i] && !is_s[i - 1]) s1[k++] = i;
    }
  }

  // Stage 2: seed with LMS suffixes in final order and induce.
  std::fill(sa, sa + n, kEmpty);
  bucket_ends();
  for (IndexT r = n1 - 1; r >= 0; --r) {
    const IndexT j = s1[sa1[r]];
    sa[--bucket[text[j]]] = j;
  }
  induce();
}

}  // namespace

SuffixArray build_sais(std::string_view text) {
  SuffixArray result;
  const std::size_t n = text.size();
  result.indices.resize(n);
  if (n == 0) return result;
  const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());

  if (n < static_cast<std::size_t>(INT32_MAX)) {
    std::vector<std::int32_t> sa(n);
    sais_run<unsigned char, std::int32_t>(bytes, sa.data(),
                                          static_cast<std::int32_t>(n), 256);
    for (std::size_t i = 0; i < n; ++i) {
      result.indices[i] = static_cast<std::uint64_t>(sa[i]);
    }
  } else {
    std::vector<std::int64_t> sa(n);
    sais_run<unsigned char, std::int64_t>(bytes, sa.data(),
                                          static_cast<std::int64_t>(n), 256);
    for (std::size_t i = 0; i < n; ++i) {
      result.indices[i] = static_cast<std::uint64_t>(sa[i]);
    }
  }
  return result;
}

}  // namespace dedup
