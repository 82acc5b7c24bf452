#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dedup/corpus.hpp"

namespace dedup {

// One document per removal-plan slot, indexed by doc_id. Intervals are
// document-local byte offsets, end-exclusive.
struct RemovalPlan {
  std::vector<std::vector<ByteRange>> by_doc;

  void ensure_size(std::size_t doc_count) {
    if (by_doc.size() < doc_count) by_doc.resize(doc_count);
  }
  bool empty() const;
  std::uint64_t total_bytes() const;
};

// Reads one JSON object per line; `text_field` must hold a string. Documents
// are returned in file order with bytes equal to the UTF-8 encoding of the
// field value. Malformed lines and missing fields raise DataError with the
// line number.
std::vector<Document> ingest_jsonl(const std::filesystem::path& path,
                                   Split split,
                                   const std::string& text_field = "text");

struct ExportResult {
  std::uint64_t files_written = 0;
  std::uint64_t docs_written = 0;
  std::uint64_t docs_dropped = 0;  // empty after excision
  std::uint64_t bytes_removed = 0;
};

// Writes one JSONL file per non-empty split under `out_dir` (train.jsonl,
// validation.jsonl, test.jsonl) with removal intervals excised, plus a
// sidecar TSV `removals.tsv` of doc_id <TAB> start <TAB> end. Overlapping
// intervals are merged before excision; an interval outside its document
// raises DataError. Documents that become empty are dropped and logged.
ExportResult export_corpus(const Corpus& corpus, const RemovalPlan& plan,
                           const std::filesystem::path& out_dir,
                           const std::string& text_field = "text");

// Merges overlapping or touching intervals in place and returns the result
// sorted by begin.
std::vector<ByteRange> merge_ranges(std::vector<ByteRange> ranges);

// Applies merged removal intervals to a byte string.
std::string excise(std::string_view bytes,
                   const std::vector<ByteRange>& merged);

}  // namespace dedup
