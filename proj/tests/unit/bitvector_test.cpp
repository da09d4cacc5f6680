#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "hypercsa/bitvector.hpp"

namespace {

using namespace hypercsa;

RankSelectBitvector from_string(const std::string& bits) {
  std::vector<std::uint64_t> ones;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') ones.push_back(i);
  }
  return RankSelectBitvector::from_ones(bits.size(), ones);
}

TEST(Bitvector, ExampleDegreeBits) {
  RankSelectBitvector d = from_string("10100100001011");
  EXPECT_EQ(d.to_string(), "10100100001011");
  EXPECT_EQ(d.ones(), 6u);
  EXPECT_EQ(d.rank(5), 3u);
  EXPECT_EQ(d.rank(13), 6u);
  EXPECT_EQ(d.rank(0), 1u);
  EXPECT_EQ(d.select(1), 0u);
  EXPECT_EQ(d.select(3), 5u);
  EXPECT_EQ(d.select(4), 10u);
  const std::uint64_t ones_at[] = {0, 2, 5, 10, 12, 13};
  for (std::uint64_t k = 1; k <= 6; ++k) EXPECT_EQ(d.select(k), ones_at[k - 1]);
}

TEST(Bitvector, BoundsErrors) {
  RankSelectBitvector d = from_string("1011");
  EXPECT_THROW(d.rank(4), std::out_of_range);
  EXPECT_THROW(d.select(0), std::out_of_range);
  EXPECT_THROW(d.select(4), std::out_of_range);
  EXPECT_THROW(d.at(4), std::out_of_range);
  EXPECT_THROW(RankSelectBitvector::from_ones(3, std::vector<std::uint64_t>{3}), std::out_of_range);
}

// Plain prefix-sum oracle.
void check_against_scan(const RankSelectBitvector& bv) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < bv.size(); ++i) {
    count += bv[i];
    ASSERT_EQ(bv.rank(i), count) << "pos " << i;
    if (bv[i]) ASSERT_EQ(bv.select(count), i);
  }
  ASSERT_EQ(bv.ones(), count);
}

TEST(BitvectorProperty, RankSelectMatchScanAcrossDensities) {
  std::mt19937_64 rng(11);
  for (double density : {0.0005, 0.01, 0.05, 0.5, 0.97, 1.0}) {
    for (std::uint64_t size : {1ull, 63ull, 64ull, 65ull, 511ull, 512ull, 4097ull, 70000ull}) {
      std::bernoulli_distribution bit(density);
      std::vector<std::uint64_t> ones;
      for (std::uint64_t i = 0; i < size; ++i) {
        if (bit(rng)) ones.push_back(i);
      }
      RankSelectBitvector bv = RankSelectBitvector::from_ones(size, ones);
      check_against_scan(bv);
    }
  }
}

TEST(BitvectorProperty, RankOfSelectIsIdentity) {
  std::mt19937_64 rng(12);
  std::vector<std::uint64_t> words(3000);
  for (auto& w : words) w = rng() & rng() & rng();
  RankSelectBitvector bv(words, words.size() * 64 - 17);
  for (std::uint64_t k = 1; k <= bv.ones(); ++k) ASSERT_EQ(bv.rank(bv.select(k)), k);
}

TEST(Bitvector, DirectoryOverheadWithinBudget) {
  std::vector<std::uint64_t> words(1 << 14, 0x8000800080008000ull);
  RankSelectBitvector bv(words, words.size() * 64);
  double bits = static_cast<double>(bv.size());
  EXPECT_LE(bv.rank_directory_bits() / bits, 0.25);
  EXPECT_LE(bv.select_directory_bits() / bits, 0.2);
}

TEST(Bitvector, SelectInWord) {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 2000; ++round) {
    std::uint64_t w = rng() | 1;
    unsigned r = 0;
    for (unsigned p = 0; p < 64; ++p) {
      if ((w >> p) & 1) ASSERT_EQ(select_in_word(w, r++), p);
    }
  }
}

TEST(Bitvector, EqualityIncludesSize) {
  EXPECT_EQ(from_string("1011"), from_string("1011"));
  EXPECT_FALSE(from_string("1011") == from_string("10110"));
}

}  // namespace
