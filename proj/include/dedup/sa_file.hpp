#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "dedup/suffix_array.hpp"

namespace dedup {

// On-disk layout: magic "SAIDX1", version u32 LE, text size u64 LE,
// entry width u8 (always 8), then one u64 LE entry per text byte.
inline constexpr char kSaMagic[6] = {'S', 'A', 'I', 'D', 'X', '1'};
inline constexpr std::uint32_t kSaVersion = 1;
inline constexpr std::size_t kSaHeaderSize = 6 + 4 + 8 + 1;

void write_suffix_array(const std::filesystem::path& path,
                        const SuffixArray& sa);

// Streaming writer for arrays too large to hold in memory.
class SuffixArrayWriter {
 public:
  SuffixArrayWriter(const std::filesystem::path& path, std::uint64_t count);
  ~SuffixArrayWriter();
  void append(std::span<const std::uint64_t> block);
  void finish();  // validates the entry count; called by the destructor

 private:
  struct Impl;
  Impl* impl_;
};

SuffixArray read_suffix_array(const std::filesystem::path& path);

// Read-only memory-mapped view over an index file. Requires a
// little-endian host, which the build enforces.
class MappedSuffixArray {
 public:
  explicit MappedSuffixArray(const std::filesystem::path& path);
  ~MappedSuffixArray();
  MappedSuffixArray(MappedSuffixArray&&) noexcept;
  MappedSuffixArray& operator=(MappedSuffixArray&&) noexcept;
  MappedSuffixArray(const MappedSuffixArray&) = delete;
  MappedSuffixArray& operator=(const MappedSuffixArray&) = delete;

  SaSpan view() const { return view_; }
  std::uint64_t text_size() const { return view_.size(); }

 private:
  SaSpan view_;
  void* base_ = nullptr;
  std::size_t mapped_bytes_ = 0;
};

// Companion metadata tying an index file to its corpus.
struct Companion {
  std::string corpus_path;
  std::uint64_t corpus_bytes = 0;
  std::uint64_t corpus_hash = 0;  // content_hash of the concatenated corpus
};

void write_companion(const std::filesystem::path& path, const Companion& c);
Companion read_companion(const std::filesystem::path& path);

// True when the header parses and the entry count matches the file size.
bool suffix_array_file_ok(const std::filesystem::path& path);

}  // namespace dedup
