#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "dedup/errors.hpp"
#include "dedup/sa_file.hpp"
#include "dedup/suffix_array.hpp"

using namespace dedup;

namespace {

// Oracle: sort suffix start positions by direct suffix comparison.
std::vector<std::uint64_t> naive_suffix_array(std::string_view text) {
  std::vector<std::uint64_t> order(text.size());
  for (std::uint64_t i = 0; i < text.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::uint64_t a, std::uint64_t b) {
              return text.substr(a) < text.substr(b);
            });
  return order;
}

std::string random_bytes(std::mt19937_64& rng, std::size_t len,
                         unsigned alphabet) {
  std::uniform_int_distribution<unsigned> dist(0, alphabet - 1);
  std::string s(len, '\0');
  for (auto& c : s) c = static_cast<char>(dist(rng));
  return s;
}

std::vector<std::uint64_t> naive_occurrences(std::string_view text,
                                             std::string_view pattern) {
  std::vector<std::uint64_t> hits;
  if (pattern.empty() || pattern.size() > text.size()) return hits;
  for (std::size_t p = 0; p + pattern.size() <= text.size(); ++p) {
    if (text.compare(p, pattern.size(), pattern) == 0) hits.push_back(p);
  }
  return hits;
}

}  // namespace

TEST_CASE("build_sais matches the known banana ordering") {
  const auto sa = build_sais("banana");
  CHECK(sa.indices == std::vector<std::uint64_t>{5, 3, 1, 0, 4, 2});
}

TEST_CASE("build_sais handles empty and degenerate inputs") {
  CHECK(build_sais("").indices.empty());
  CHECK(build_sais("x").indices == std::vector<std::uint64_t>{0});
  CHECK(build_sais("aaa").indices == std::vector<std::uint64_t>{2, 1, 0});
  CHECK(build_sais("abc").indices == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(build_sais("cba").indices == std::vector<std::uint64_t>{2, 1, 0});
}

TEST_CASE("build_sais equals the naive oracle on random inputs") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 60; ++round) {
    const unsigned alphabet = (round % 3 == 0) ? 2 : (round % 3 == 1 ? 4 : 256);
    const std::size_t len = 1 + rng() % 3000;
    const std::string text = random_bytes(rng, len, alphabet);
    const auto sa = build_sais(text);
    REQUIRE(sa.indices == naive_suffix_array(text));
  }
}

TEST_CASE("build_sais equals the oracle on periodic strings") {
  for (const std::string base : {"ab", "aab", "abcab", "a"}) {
    std::string text;
    while (text.size() < 500) text += base;
    CHECK(build_sais(text).indices == naive_suffix_array(text));
  }
}

TEST_CASE("build_parallel is split-count independent") {
  std::mt19937_64 rng(11);
  std::string text = random_bytes(rng, 64 * 1024, 64);
  // Planted repeat to exercise the overlap handling.
  const std::string repeat = random_bytes(rng, 300, 64);
  text.replace(1000, repeat.size(), repeat);
  text.replace(40000, repeat.size(), repeat);

  BuildOptions options;
  options.overlap = 1024;
  options.threads = 2;
  const auto reference = build_sais(text);
  for (unsigned k : {1u, 2u, 4u, 8u}) {
    const auto parallel = build_parallel(text, k, options);
    REQUIRE(parallel.indices == reference.indices);
  }
}

TEST_CASE("build_parallel abab example") {
  BuildOptions options;
  options.overlap = 2;
  const auto sa = build_parallel("abab", 2, options);
  CHECK(sa.indices == std::vector<std::uint64_t>{2, 0, 3, 1});
}

TEST_CASE("merge_partials merges banana halves") {
  const std::string text = "banana";
  BuildOptions options;
  options.overlap = 16;
  auto parts = build_partials(text, 2, options);
  REQUIRE(parts.size() == 2);
  const auto merged = merge_partials(parts, text);
  CHECK(merged.indices == std::vector<std::uint64_t>{5, 3, 1, 0, 4, 2});
}

TEST_CASE("merge_partials on a single part is the identity") {
  const std::string text = "mississippi";
  auto parts = build_partials(text, 1);
  const auto merged = merge_partials(parts, text);
  CHECK(merged.indices == build_sais(text).indices);
}

TEST_CASE("merge_partials rejects gapped coverage") {
  const std::string text = "abcdef";
  auto parts = build_partials(text, 2);
  parts[0].split_end -= 1;
  parts[0].indices.pop_back();
  CHECK_THROWS_AS(merge_partials(parts, text), DataError);
}

TEST_CASE("merge_partials is job-count independent") {
  std::mt19937_64 rng(13);
  const std::string text = random_bytes(rng, 20000, 8);
  auto parts = build_partials(text, 4, {.overlap = 4096});
  const auto reference = merge_partials(parts, text, 1);
  for (unsigned jobs : {2u, 3u, 8u}) {
    CHECK(merge_partials(parts, text, jobs).indices == reference.indices);
  }
}

TEST_CASE("find_occurrences basics") {
  const std::string text = "banana";
  const auto sa = build_sais(text);
  CHECK(find_occurrences(sa.view(), text, "ana") ==
        std::vector<std::uint64_t>{1, 3});
  CHECK(find_occurrences(sa.view(), text, "zzz").empty());
  CHECK(find_occurrences(sa.view(), text, "banana") ==
        std::vector<std::uint64_t>{0});
  CHECK_THROWS_AS(find_occurrences(sa.view(), text, ""),
                  std::invalid_argument);
}

TEST_CASE("find_occurrences equals the naive scan on random inputs") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 30; ++round) {
    const std::string text = random_bytes(rng, 2000, 4);
    const auto sa = build_sais(text);
    for (int q = 0; q < 20; ++q) {
      const std::size_t len = 1 + rng() % 12;
      std::string pattern;
      if (q % 2 == 0 && len < text.size()) {
        const std::size_t at = rng() % (text.size() - len);
        pattern = text.substr(at, len);
      } else {
        pattern = random_bytes(rng, len, 4);
      }
      CHECK(find_occurrences(sa.view(), text, pattern) ==
            naive_occurrences(text, pattern));
    }
  }
}

TEST_CASE("common_prefix_length") {
  const std::string text = "banana";
  CHECK(common_prefix_length(text, 1, 3) == 3);
  CHECK(common_prefix_length(text, 2, 2) == 4);
  CHECK(common_prefix_length(text, 0, 1) == 0);
}

TEST_CASE("longest_match finds the longest query prefix present") {
  const std::string text = "the quick brown fox";
  const auto sa = build_sais(text);
  const auto m = longest_match(sa.view(), text, "quick brown cat");
  CHECK(m.length == 12);  // "quick brown " then c vs f
  CHECK(text.compare(m.position, 12, "quick brown ") == 0);
  CHECK(longest_match(sa.view(), text, "zebra").length == 0);
}

TEST_CASE("suffix array disk round trip preserves query results") {
  std::mt19937_64 rng(23);
  const std::string text = random_bytes(rng, 5000, 16);
  const auto sa = build_sais(text);

  const auto dir = std::filesystem::temp_directory_path() / "sa_file_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "test.sa";
  write_suffix_array(path, sa);

  const auto read_back = read_suffix_array(path);
  CHECK(read_back.indices == sa.indices);

  MappedSuffixArray mapped(path);
  REQUIRE(mapped.view().size() == sa.indices.size());
  for (int q = 0; q < 50; ++q) {
    const std::size_t at = rng() % (text.size() - 10);
    const std::string pattern = text.substr(at, 4 + rng() % 6);
    CHECK(find_occurrences(mapped.view(), text, pattern) ==
          find_occurrences(sa.view(), text, pattern));
  }
  CHECK(verify_sorted_sample(mapped.view(), text, 200, 99));
  std::filesystem::remove_all(dir);
}

TEST_CASE("suffix_array_file_ok flags corrupted headers") {
  const auto dir = std::filesystem::temp_directory_path() / "sa_file_test2";
  std::filesystem::create_directories(dir);
  const auto path = dir / "test.sa";
  write_suffix_array(path, build_sais("hello world"));
  CHECK(suffix_array_file_ok(path));
  {
    std::ofstream f(path, std::ios::binary | std::ios::in);
    f.seekp(0);
    f.write("XX", 2);
  }
  CHECK(!suffix_array_file_ok(path));
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify_sorted_sample detects a broken array") {
  const std::string text = "abracadabra";
  auto sa = build_sais(text);
  CHECK(verify_sorted_sample(sa.view(), text, 100, 5));
  std::swap(sa.indices[2], sa.indices[7]);
  CHECK(!verify_sorted_sample(sa.view(), text, 200, 5));
}
