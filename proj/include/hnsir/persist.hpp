#pragma once

// Versioned, checksummed binary index file.
//
//   magic "HNSIRIDX" | u32 version | u64 payload size | payload | u32 crc32(payload)
//
// All integers little-endian, reals stored as their IEEE-754 bit pattern so a
// round trip reproduces every coefficient exactly. The payload holds the
// weighting mode, the vocabulary in id order with df, the documents sorted by
// id and one posting list per term.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hnsir/index.hpp"

namespace hnsir {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

class IndexFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorruptIndexError : public IndexFileError {
 public:
  using IndexFileError::IndexFileError;
};

class IndexVersionError : public IndexFileError {
 public:
  IndexVersionError(std::uint32_t found)
      : IndexFileError("unsupported index format version " + std::to_string(found) + " (expected " +
                       std::to_string(kIndexFormatVersion) + ")"),
        found_(found) {}
  [[nodiscard]] std::uint32_t found() const noexcept { return found_; }

 private:
  std::uint32_t found_;
};

std::string serialize_index(const InvertedIndex& index);
InvertedIndex deserialize_index(const std::string& bytes);

/// Writes to a temporary sibling file and renames it over `path`.
void save_index(const InvertedIndex& index, const std::string& path);
InvertedIndex load_index(const std::string& path);

}  // namespace hnsir
