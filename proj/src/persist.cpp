#include "hnsir/persist.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>

#include <zlib.h>

namespace hnsir {

namespace {

constexpr char kMagic[8] = {'H', 'N', 'S', 'I', 'R', 'I', 'D', 'X'};
constexpr std::size_t kHeaderSize = sizeof(kMagic) + 4 + 8;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { put_le(v, 4); }
  void u64(std::uint64_t v) { put_le(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u64(s.size());
    out_.append(s);
  }
  std::string& bytes() { return out_; }

 private:
  void put_le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string out_;
};

class Reader {
 public:
  Reader(const std::string& bytes, std::size_t pos, std::size_t end) : bytes_(bytes), pos_(pos), end_(end) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get_le(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get_le(4)); }
  std::uint64_t u64() { return get_le(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint64_t n = u64();
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  /// A count whose elements occupy at least `min_bytes` each.
  std::size_t count(std::size_t min_bytes) {
    const std::uint64_t n = u64();
    if (min_bytes && n > (end_ - pos_) / min_bytes) throw CorruptIndexError("index file: count exceeds payload");
    return static_cast<std::size_t>(n);
  }
  bool done() const { return pos_ == end_; }

 private:
  void need(std::uint64_t n) const {
    if (n > end_ - pos_) throw CorruptIndexError("index file: payload truncated");
  }
  std::uint64_t get_le(int n) {
    need(static_cast<std::uint64_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  const std::string& bytes_;
  std::size_t pos_;
  std::size_t end_;
};

std::uint32_t checksum(const char* data, std::size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  while (size > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(size, std::numeric_limits<uInt>::max()));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data), chunk);
    data += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string serialize_index(const InvertedIndex& index) {
  Writer payload;
  payload.u8(static_cast<std::uint8_t>(index.mode()));
  const auto& vocab = index.vocab();
  payload.u64(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    payload.str(vocab.terms()[i]);
    payload.u64(vocab.document_frequencies()[i]);
  }
  payload.u64(index.num_docs());
  for (const auto& d : index.docs()) {
    payload.str(d.id);
    payload.str(d.text);
  }
  for (const auto& list : index.all_postings()) {
    payload.u64(list.size());
    for (const auto& p : list) {
      payload.u32(p.doc);
      payload.f64(p.plus);
      payload.f64(p.minus);
    }
  }

  Writer file;
  file.bytes().append(kMagic, sizeof(kMagic));
  file.u32(kIndexFormatVersion);
  file.u64(payload.bytes().size());
  file.bytes().append(payload.bytes());
  file.u32(checksum(payload.bytes().data(), payload.bytes().size()));
  return std::move(file.bytes());
}

InvertedIndex deserialize_index(const std::string& bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
    throw CorruptIndexError("not an index file (bad magic)");
  Reader header(bytes, sizeof(kMagic), kHeaderSize);
  const std::uint32_t version = header.u32();
  if (version != kIndexFormatVersion) throw IndexVersionError(version);
  const std::uint64_t payload_size = header.u64();
  if (payload_size > bytes.size() - kHeaderSize || bytes.size() - kHeaderSize - payload_size != 4)
    throw CorruptIndexError("index file: size does not match header (truncated or trailing data)");
  const std::size_t payload_end = kHeaderSize + static_cast<std::size_t>(payload_size);
  Reader trailer(bytes, payload_end, bytes.size());
  if (trailer.u32() != checksum(bytes.data() + kHeaderSize, static_cast<std::size_t>(payload_size)))
    throw CorruptIndexError("index file: checksum mismatch");

  Reader in(bytes, kHeaderSize, payload_end);
  const std::uint8_t mode = in.u8();
  if (mode > static_cast<std::uint8_t>(WeightingMode::complement))
    throw CorruptIndexError("index file: unknown weighting mode");

  const std::size_t n_terms = in.count(16);
  std::vector<std::string> terms;
  std::vector<std::uint64_t> df;
  terms.reserve(n_terms);
  df.reserve(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) {
    terms.push_back(in.str());
    df.push_back(in.u64());
  }
  const std::size_t n_docs = in.count(16);
  std::vector<StoredDoc> docs;
  docs.reserve(n_docs);
  for (std::size_t i = 0; i < n_docs; ++i) {
    std::string id = in.str();
    docs.push_back(StoredDoc{std::move(id), in.str()});
  }
  std::vector<std::vector<Posting>> postings(n_terms);
  for (auto& list : postings) {
    list.resize(in.count(20));
    for (auto& p : list) {
      p.doc = in.u32();
      p.plus = in.f64();
      p.minus = in.f64();
    }
  }
  if (!in.done()) throw CorruptIndexError("index file: unexpected bytes after postings");

  try {
    return InvertedIndex::from_parts(Vocabulary::from_terms(std::move(terms), std::move(df)),
                                     static_cast<WeightingMode>(mode), std::move(docs), std::move(postings));
  } catch (const std::invalid_argument& e) {
    throw CorruptIndexError(std::string("index file: ") + e.what());
  }
}

void save_index(const InvertedIndex& index, const std::string& path) {
  const std::string bytes = serialize_index(index);
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IndexFileError("cannot write index file '" + tmp.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IndexFileError("failed writing index file '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IndexFileError("cannot move index into place at '" + path + "': " + ec.message());
  }
}

InvertedIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexFileError("cannot read index file '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_index(bytes);
}

}  // namespace hnsir
