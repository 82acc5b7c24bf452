#include "dedup/corpus.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "dedup/errors.hpp"

namespace dedup {

std::string_view split_name(Split s) {
  switch (s) {
    case Split::test: return "test";
    case Split::validation: return "validation";
    case Split::train: return "train";
  }
  return "unknown";
}

std::optional<Split> parse_split(std::string_view name) {
  if (name == "test") return Split::test;
  if (name == "validation" || name == "valid") return Split::validation;
  if (name == "train") return Split::train;
  return std::nullopt;
}

Corpus concatenate(std::vector<std::vector<Document>> fragments) {
  Corpus corpus;
  std::size_t total_docs = 0;
  for (const auto& frag : fragments) total_docs += frag.size();
  corpus.docs_.reserve(total_docs);

  // Stable order: split priority first, input order within a split.
  for (Split s : {Split::test, Split::validation, Split::train}) {
    for (auto& frag : fragments) {
      for (auto& doc : frag) {
        if (doc.split == s) corpus.docs_.push_back(std::move(doc));
      }
    }
  }

  std::uint64_t total = 0;
  const std::uint64_t limit = std::numeric_limits<std::int64_t>::max();
  for (const auto& doc : corpus.docs_) {
    if (doc.bytes.size() > limit - total) {
      throw DataError("corpus exceeds 2^63 - 1 bytes");
    }
    total += doc.bytes.size();
  }

  corpus.concatenated_.reserve(total);
  corpus.boundaries_.reserve(corpus.docs_.size());
  corpus.starts_.reserve(corpus.docs_.size());
  for (std::uint64_t id = 0; id < corpus.docs_.size(); ++id) {
    auto& doc = corpus.docs_[id];
    doc.doc_id = id;
    const std::uint64_t start = corpus.concatenated_.size();
    corpus.boundaries_.push_back({start, id});
    corpus.starts_.push_back(start);
    corpus.concatenated_.append(doc.bytes);
  }
  return corpus;
}

Corpus::Location Corpus::locate(std::uint64_t global_offset) const {
  if (global_offset >= concatenated_.size()) {
    throw std::out_of_range("locate: offset " + std::to_string(global_offset) +
                            " out of range for corpus of size " +
                            std::to_string(concatenated_.size()));
  }
  auto it = std::upper_bound(
      boundaries_.begin(), boundaries_.end(), global_offset,
      [](std::uint64_t off, const Boundary& b) { return off < b.start; });
  // Step back past zero-length documents sharing the same start offset.
  while (it != boundaries_.begin()) {
    const Boundary& b = *std::prev(it);
    const Document& doc = docs_[b.doc_id];
    if (global_offset < b.start + doc.bytes.size()) {
      return {b.doc_id, global_offset - b.start};
    }
    --it;
  }
  throw std::out_of_range("locate: no covering document");
}

std::uint64_t Corpus::doc_begin(std::uint64_t doc_id) const {
  return starts_.at(doc_id);
}

std::uint64_t Corpus::doc_end(std::uint64_t doc_id) const {
  return starts_.at(doc_id) + docs_.at(doc_id).bytes.size();
}

std::uint64_t Corpus::split_bytes(Split s) const {
  std::uint64_t total = 0;
  for (const auto& doc : docs_) {
    if (doc.split == s) total += doc.bytes.size();
  }
  return total;
}

std::uint64_t Corpus::split_docs(Split s) const {
  std::uint64_t total = 0;
  for (const auto& doc : docs_) {
    if (doc.split == s) ++total;
  }
  return total;
}

}  // namespace dedup
