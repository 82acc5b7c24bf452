#include "dedup/jsonl.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include <json.hpp>

#include "dedup/errors.hpp"

namespace dedup {

using nlohmann::json;

bool RemovalPlan::empty() const {
  for (const auto& ranges : by_doc) {
    if (!ranges.empty()) return false;
  }
  return true;
}

std::uint64_t RemovalPlan::total_bytes() const {
  std::uint64_t total = 0;
  for (const auto& ranges : by_doc) {
    for (const auto& r : merge_ranges(ranges)) total += r.length();
  }
  return total;
}

std::vector<Document> ingest_jsonl(const std::filesystem::path& path,
                                   Split split,
                                   const std::string& text_field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path.string());

  std::vector<Document> docs;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": malformed JSON line");
    }
    auto it = obj.find(text_field);
    if (it == obj.end() || !it->is_string()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": missing string field \"" + text_field + "\"");
    }
    Document doc;
    doc.split = split;
    doc.bytes = it->get<std::string>();
    doc.source_uri = path.string() + ":" + std::to_string(line_no);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<ByteRange> merge_ranges(std::vector<ByteRange> ranges) {
  std::sort(ranges.begin(), ranges.end(),
            [](const ByteRange& a, const ByteRange& b) {
              return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
            });
  std::vector<ByteRange> merged;
  for (const auto& r : ranges) {
    if (r.begin >= r.end) continue;
    if (!merged.empty() && r.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, r.end);
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

std::string excise(std::string_view bytes,
                   const std::vector<ByteRange>& merged) {
  std::string out;
  std::uint64_t cursor = 0;
  for (const auto& r : merged) {
    out.append(bytes.substr(cursor, r.begin - cursor));
    cursor = r.end;
  }
  out.append(bytes.substr(cursor));
  return out;
}

ExportResult export_corpus(const Corpus& corpus, const RemovalPlan& plan,
                           const std::filesystem::path& out_dir,
                           const std::string& text_field) {
  std::filesystem::create_directories(out_dir);

  ExportResult result;
  std::ofstream log(out_dir / "removals.tsv", std::ios::binary);
  if (!log) throw DataError("cannot write removal log in " + out_dir.string());

  struct SplitFile {
    std::ofstream stream;
    bool opened = false;
  };
  std::array<SplitFile, 3> files;
  auto file_for = [&](Split s) -> std::ofstream& {
    auto& f = files[static_cast<int>(s)];
    if (!f.opened) {
      auto path = out_dir / (std::string(split_name(s)) + ".jsonl");
      f.stream.open(path, std::ios::binary);
      if (!f.stream) throw DataError("cannot write " + path.string());
      f.opened = true;
      ++result.files_written;
    }
    return f.stream;
  };

  for (const auto& doc : corpus.documents()) {
    std::vector<ByteRange> merged;
    if (doc.doc_id < plan.by_doc.size()) {
      merged = merge_ranges(plan.by_doc[doc.doc_id]);
    }
    for (const auto& r : merged) {
      if (r.end > doc.bytes.size()) {
        throw DataError("removal interval [" + std::to_string(r.begin) + "," +
                        std::to_string(r.end) + ") outside document " +
                        std::to_string(doc.doc_id) + " of size " +
                        std::to_string(doc.bytes.size()));
      }
      log << doc.doc_id << '\t' << r.begin << '\t' << r.end << '\n';
      result.bytes_removed += r.length();
    }
    std::string kept = excise(doc.bytes, merged);
    if (kept.empty() && !doc.bytes.empty()) {
      ++result.docs_dropped;
      continue;
    }
    json obj;
    obj[text_field] = std::move(kept);
    try {
      file_for(doc.split) << obj.dump() << '\n';
    } catch (const json::type_error&) {
      throw DataError("document " + std::to_string(doc.doc_id) +
                      " is not valid UTF-8 and cannot be exported as JSON");
    }
    ++result.docs_written;
  }
  ++result.files_written;  // removal log
  return result;
}

}  // namespace dedup
