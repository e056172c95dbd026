#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "rslab/bitstream.hpp"
#include "rslab/errors.hpp"
#include "rslab/normality.hpp"
#include "rslab/samplers.hpp"

using namespace rslab;

namespace {

std::vector<double> draw(const NoiseSampler& s, int n, std::uint64_t seed) {
  Generator gen(SeedMaterial{seed, 0});
  std::vector<double> x(n);
  for (double& v : x) v = s(gen);
  return x;
}

}  // namespace

TEST(Samplers, GaussianScaleAndLocation) {
  auto m = sample_moments(draw({NoiseFamily::Gaussian, 0.25, 1.0}, 200000, 1));
  EXPECT_NEAR(m.mean, 1.0, 0.003);
  EXPECT_NEAR(std::sqrt(m.variance), 0.25, 0.002);
}

TEST(Samplers, Laplace) {
  auto x = draw({NoiseFamily::Laplace, 0.25, 0.0}, 200000, 2);
  auto m = sample_moments(x);
  EXPECT_NEAR(m.variance, 2 * 0.0625, 0.003);
  EXPECT_NEAR(m.excess_kurtosis, 3.0, 0.2);
  EXPECT_NEAR(laplace_from_uniform(0.5, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(laplace_from_uniform(0.75, 2.0), 2.0 * std::log(2.0), 1e-12);
}

TEST(Samplers, HalfNormal) {
  auto x = draw({NoiseFamily::HalfNormal, 0.25, 0.0}, 200000, 3);
  for (double v : x) ASSERT_GE(v, 0.0);
  EXPECT_NEAR(sample_moments(x).mean, 0.25 * std::sqrt(2.0 / 3.141592653589793), 0.002);
}

TEST(Samplers, Uniform) {
  auto x = draw({NoiseFamily::Uniform, 0.25, 0.0}, 100000, 4);
  for (double v : x) {
    ASSERT_GE(v, -0.25);
    ASSERT_LT(v, 0.25);
  }
  EXPECT_NEAR(sample_moments(x).variance, 0.0625 / 3.0, 0.0005);
}

TEST(Samplers, Bernoulli) {
  auto x = draw({NoiseFamily::Bernoulli, 0.25, 0.0}, 100000, 5);
  double ones = 0;
  for (double v : x) {
    ASSERT_TRUE(v == 0.0 || v == 1.0);
    ones += v;
  }
  EXPECT_NEAR(ones / x.size(), 0.5, 0.01);
}

TEST(Samplers, ParseAndValidate) {
  EXPECT_EQ(parse_family("halfnormal"), NoiseFamily::HalfNormal);
  EXPECT_EQ(family_name(NoiseFamily::Gaussian), "gauss");
  EXPECT_THROW(parse_family("cauchy"), ConfigError);
  EXPECT_THROW((NoiseSampler{NoiseFamily::Laplace, 0.0, 0.0}.validate()), ConfigError);
  EXPECT_NO_THROW((NoiseSampler{NoiseFamily::Bernoulli, 0.0, 0.0}.validate()));
}

TEST(BitStream, WordsMostSignificantFirst) {
  const std::uint64_t words[] = {0x8000000000000001ULL, 0xF000000000000000ULL};
  auto bs = BitStream::from_words(words, 68);
  EXPECT_EQ(bs.size(), 68u);
  EXPECT_EQ(bs[0], 1);
  EXPECT_EQ(bs[62], 0);
  EXPECT_EQ(bs[63], 1);
  EXPECT_EQ(bs.to_ascii().substr(64), "1111");
  EXPECT_EQ(bs.count_ones(), 6u);
}

TEST(BitStream, ParseRejectsJunk) {
  EXPECT_EQ(BitStream::parse("0101").to_ascii(), "0101");
  EXPECT_THROW(BitStream::parse("01a1"), ConfigError);
}

TEST(BitStream, SkewAttackClearsBitEight) {
  Generator gen(SeedMaterial{1, 2}, TamperConfig::skewness(0));
  auto bs = BitStream::from_generator(gen, 64 * 50);
  for (std::size_t w = 0; w < 50; ++w) EXPECT_EQ(bs[w * 64 + 55], 0) << w;
}

TEST(BitStream, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "rslab_bitstream_test";
  std::filesystem::create_directories(dir);
  Generator gen(SeedMaterial{10, 0});
  auto bs = BitStream::from_generator(gen, 1000);
  write_bitstream_file(dir / "s.txt", bs);
  auto back = read_bitstream_file(dir / "s.txt");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], bs);
  EXPECT_EQ(std::filesystem::file_size(dir / "s.txt"), 1001u);
  EXPECT_THROW(read_bitstream_file(dir / "missing.txt"), IoError);
  std::filesystem::remove_all(dir);
}
