#include "dedup/sa_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <json.hpp>

#include "dedup/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "index files are little-endian and read by direct mapping");

namespace dedup {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void put_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

struct Header {
  std::uint64_t count = 0;
};

Header parse_header(std::istream& in, const std::string& path) {
  char magic[6];
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  std::uint8_t width = 0;
  in.read(magic, sizeof(magic));
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&count), sizeof(count));
  in.read(reinterpret_cast<char*>(&width), sizeof(width));
  if (!in || std::memcmp(magic, kSaMagic, sizeof(kSaMagic)) != 0) {
    throw IndexMismatchError("bad suffix array header in " + path);
  }
  if (version != kSaVersion) {
    throw IndexMismatchError("unsupported suffix array version " +
                             std::to_string(version) + " in " + path);
  }
  if (width != 8) {
    throw IndexMismatchError("unsupported entry width " +
                             std::to_string(width) + " in " + path);
  }
  return {count};
}

}  // namespace

struct SuffixArrayWriter::Impl {
  std::ofstream out;
  std::string path;
  std::uint64_t expected = 0;
  std::uint64_t written = 0;
  bool finished = false;
};

SuffixArrayWriter::SuffixArrayWriter(const std::filesystem::path& path,
                                     std::uint64_t count)
    : impl_(new Impl) {
  impl_->path = path.string();
  impl_->expected = count;
  impl_->out.open(path, std::ios::binary | std::ios::trunc);
  if (!impl_->out) throw DataError("cannot write " + path.string());
  impl_->out.write(kSaMagic, sizeof(kSaMagic));
  put_u32(impl_->out, kSaVersion);
  put_u64(impl_->out, count);
  const std::uint8_t width = 8;
  impl_->out.write(reinterpret_cast<const char*>(&width), 1);
}

SuffixArrayWriter::~SuffixArrayWriter() {
  if (impl_ && !impl_->finished) {
    try {
      finish();
    } catch (...) {
    }
  }
  delete impl_;
}

void SuffixArrayWriter::append(std::span<const std::uint64_t> block) {
  impl_->out.write(reinterpret_cast<const char*>(block.data()),
                   static_cast<std::streamsize>(block.size() * 8));
  impl_->written += block.size();
}

void SuffixArrayWriter::finish() {
  impl_->finished = true;
  impl_->out.flush();
  if (!impl_->out) throw DataError("write failed for " + impl_->path);
  if (impl_->written != impl_->expected) {
    throw DataError("suffix array writer got " +
                    std::to_string(impl_->written) + " entries, expected " +
                    std::to_string(impl_->expected));
  }
}

void write_suffix_array(const std::filesystem::path& path,
                        const SuffixArray& sa) {
  SuffixArrayWriter writer(path, sa.indices.size());
  writer.append(sa.indices);
  writer.finish();
}

SuffixArray read_suffix_array(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  const Header header = parse_header(in, path.string());
  SuffixArray sa;
  sa.indices.resize(header.count);
  in.read(reinterpret_cast<char*>(sa.indices.data()),
          static_cast<std::streamsize>(header.count * 8));
  if (!in) {
    throw IndexMismatchError("truncated suffix array file " + path.string());
  }
  return sa;
}

MappedSuffixArray::MappedSuffixArray(const std::filesystem::path& path) {
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    const Header header = parse_header(in, path.string());
    const auto file_size = std::filesystem::file_size(path);
    if (file_size != kSaHeaderSize + header.count * 8) {
      throw IndexMismatchError("truncated suffix array file " + path.string());
    }
    mapped_bytes_ = file_size;
  }
  const int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) throw DataError("cannot open " + path.string());
  void* base = ::mmap(nullptr, mapped_bytes_, PROT_READ, MAP_PRIVATE, fd, 0);
  ::close(fd);
  if (base == MAP_FAILED) throw DataError("mmap failed for " + path.string());
  base_ = base;
  view_ = SaSpan(static_cast<const char*>(base_) + kSaHeaderSize,
                 (mapped_bytes_ - kSaHeaderSize) / 8);
}

MappedSuffixArray::~MappedSuffixArray() {
  if (base_ != nullptr) ::munmap(base_, mapped_bytes_);
}

MappedSuffixArray::MappedSuffixArray(MappedSuffixArray&& other) noexcept
    : view_(other.view_),
      base_(other.base_),
      mapped_bytes_(other.mapped_bytes_) {
  other.base_ = nullptr;
  other.view_ = {};
}

MappedSuffixArray& MappedSuffixArray::operator=(
    MappedSuffixArray&& other) noexcept {
  if (this != &other) {
    if (base_ != nullptr) ::munmap(base_, mapped_bytes_);
    view_ = other.view_;
    base_ = other.base_;
    mapped_bytes_ = other.mapped_bytes_;
    other.base_ = nullptr;
    other.view_ = {};
  }
  return *this;
}

void write_companion(const std::filesystem::path& path, const Companion& c) {
  nlohmann::json obj;
  obj["schema_version"] = 1;
  obj["corpus_path"] = c.corpus_path;
  obj["corpus_bytes"] = c.corpus_bytes;
  obj["corpus_hash"] = c.corpus_hash;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << obj.dump(2) << '\n';
}

Companion read_companion(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  nlohmann::json obj = nlohmann::json::parse(in, nullptr, false);
  if (obj.is_discarded()) {
    throw IndexMismatchError("malformed companion file " + path.string());
  }
  Companion c;
  c.corpus_path = obj.value("corpus_path", std::string());
  c.corpus_bytes = obj.value("corpus_bytes", std::uint64_t{0});
  c.corpus_hash = obj.value("corpus_hash", std::uint64_t{0});
  return c;
}

bool suffix_array_file_ok(const std::filesystem::path& path) {
  std::error_code ec;
  const auto file_size = std::filesystem::file_size(path, ec);
  if (ec) return false;
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  try {
    const Header header = parse_header(in, path.string());
    return file_size == kSaHeaderSize + header.count * 8;
  } catch (const IndexMismatchError&) {
    return false;
  }
}

}  // namespace dedup
