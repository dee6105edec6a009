#include "hnsir/persist.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>

#include <unistd.h>

#include "test_support.hpp"

namespace hnsir {
namespace {

namespace fs = std::filesystem;

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hnsir_persist_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

InvertedIndex fixture_index() {
  return index_corpus(load_corpus(std::string(HNSIR_FIXTURES) + "/fruit_corpus.jsonl"), WeightingMode::complement);
}

TEST(Persist, RoundTripPreservesEverything) {
  const auto index = fixture_index();
  const auto loaded = deserialize_index(serialize_index(index));
  EXPECT_EQ(loaded.vocab(), index.vocab());
  EXPECT_EQ(loaded.mode(), index.mode());
  EXPECT_EQ(loaded.docs(), index.docs());
  EXPECT_EQ(loaded.all_postings(), index.all_postings());
  EXPECT_EQ(serialize_index(loaded), serialize_index(index));
}

TEST(Persist, RoundTripScoresAreBitIdentical) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 16;
    const auto vocab = testing::synthetic_vocabulary(n);
    std::vector<WeightedDoc> docs;
    for (int d = 0; d < 15; ++d) docs.push_back(WeightedDoc{"d" + std::to_string(d), testing::random_weights(rng, n, 0.5)});
    const auto index = build_index(docs, vocab, WeightingMode::standard);
    const auto loaded = deserialize_index(serialize_index(index));
    const HyperQuery q{testing::random_weights(rng, n, 0.5), {}};
    ASSERT_EQ(score(loaded, q, 100), score(index, q, 100));
  }
}

TEST(Persist, SaveLoadFile) {
  const auto path = temp_path("fruit.idx");
  const auto index = fixture_index();
  save_index(index, path.string());
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
  EXPECT_EQ(serialize_index(load_index(path.string())), serialize_index(index));
  EXPECT_THROW(load_index((path.parent_path() / "missing.idx").string()), IndexFileError);
}

TEST(Persist, DetectsCorruption) {
  const std::string bytes = serialize_index(fixture_index());
  EXPECT_THROW(deserialize_index(bytes.substr(0, bytes.size() - 7)), CorruptIndexError);
  EXPECT_THROW(deserialize_index(bytes.substr(0, 10)), CorruptIndexError);
  EXPECT_THROW(deserialize_index(""), CorruptIndexError);
  std::string flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x40;
  EXPECT_THROW(deserialize_index(flipped), CorruptIndexError);
  EXPECT_THROW(deserialize_index(bytes + "x"), CorruptIndexError);
}

TEST(Persist, RejectsOtherVersions) {
  std::string bytes = serialize_index(fixture_index());
  bytes[8] = static_cast<char>(kIndexFormatVersion + 1);
  try {
    deserialize_index(bytes);
    FAIL() << "expected IndexVersionError";
  } catch (const IndexVersionError& e) {
    EXPECT_EQ(e.found(), kIndexFormatVersion + 1);
  }
}

}  // namespace
}  // namespace hnsir
