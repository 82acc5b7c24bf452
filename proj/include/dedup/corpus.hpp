#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dedup {

// Splits ordered by retention priority: when the same content appears in
// several splits, the copy in the lowest-numbered split is kept.
enum class Split : int { test = 0, validation = 1, train = 2 };

constexpr int split_priority(Split s) { return static_cast<int>(s); }
std::string_view split_name(Split s);
std::optional<Split> parse_split(std::string_view name);

struct Document {
  std::uint64_t doc_id = 0;
  Split split = Split::train;
  std::string bytes;
  std::string source_uri;
};

struct ByteRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;  // exclusive

  std::uint64_t length() const { return end - begin; }
  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

// All documents concatenated into one sequence S. No separator bytes are
// inserted; the boundary index carries the document structure and all
// cross-document logic clips at boundaries.
class Corpus {
 public:
  struct Boundary {
    std::uint64_t start = 0;
    std::uint64_t doc_id = 0;
  };

  struct Location {
    std::uint64_t doc_id = 0;
    std::uint64_t local_offset = 0;
  };

  Corpus() = default;

  const std::vector<Document>& documents() const { return docs_; }
  const Document& document(std::uint64_t doc_id) const { return docs_[doc_id]; }
  std::size_t doc_count() const { return docs_.size(); }
  std::string_view sequence() const { return concatenated_; }
  std::uint64_t size() const { return concatenated_.size(); }
  const std::vector<Boundary>& boundaries() const { return boundaries_; }

  // Maps a global offset to the unique document covering it.
  // Throws std::out_of_range for offset >= size().
  Location locate(std::uint64_t global_offset) const;

  std::uint64_t doc_begin(std::uint64_t doc_id) const;
  std::uint64_t doc_end(std::uint64_t doc_id) const;
  Split doc_split(std::uint64_t doc_id) const { return docs_[doc_id].split; }
  std::string_view doc_bytes(std::uint64_t doc_id) const {
    return docs_[doc_id].bytes;
  }

  std::uint64_t split_bytes(Split s) const;
  std::uint64_t split_docs(Split s) const;

  friend Corpus concatenate(std::vector<std::vector<Document>> fragments);

 private:
  std::vector<Document> docs_;
  std::string concatenated_;
  std::vector<Boundary> boundaries_;   // one entry per document
  std::vector<std::uint64_t> starts_;  // doc_id -> global start offset
};

// Flattens the fragments and orders documents test, validation, train
// (input order preserved within each split), so that "keep the earliest
// occurrence" retains the highest-priority copy. Doc ids are reassigned
// densely in the new order. Throws DataError if the total size would
// overflow a signed 64-bit offset.
Corpus concatenate(std::vector<std::vector<Document>> fragments);

}  // namespace dedup
