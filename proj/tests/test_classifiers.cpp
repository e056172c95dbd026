#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "rslab/classifiers.hpp"
#include "rslab/errors.hpp"

using namespace rslab;

TEST(Linear, NormalisesNormalAndOffset) {
  LinearClassifier f({3.0, 4.0}, 10.0);
  EXPECT_NEAR(std::hypot(f.normal()[0], f.normal()[1]), 1.0, 1e-12);
  EXPECT_NEAR(f.offset(), 2.0, 1e-12);
  std::vector<double> x = {1.2, 1.6};
  EXPECT_NEAR(f.signed_margin(x), 0.0, 1e-12);
  EXPECT_EQ(f.classify(x), 1);
  std::vector<double> y = {0.0, 0.0};
  EXPECT_EQ(f.classify(y), 0);
  EXPECT_THROW(LinearClassifier({0.0, 0.0}, 1.0), ConfigError);
  std::vector<double> bad = {1.0};
  EXPECT_THROW(f.classify(bad), ConfigError);
}

TEST(Centroid, NearestAndTies) {
  NearestCentroidClassifier f({{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}});
  std::vector<double> a = {1.9, 0.1}, tie = {1.0, 0.0}, c = {0.0, 5.0};
  EXPECT_EQ(f.classify(a), 1);
  EXPECT_EQ(f.classify(tie), 0);
  EXPECT_EQ(f.classify(c), 2);
  EXPECT_EQ(f.num_classes(), 3);
  EXPECT_THROW(NearestCentroidClassifier(std::vector<std::vector<double>>{{1.0}}), ConfigError);
  EXPECT_THROW(NearestCentroidClassifier({{1.0}, {1.0}}), ConfigError);
  EXPECT_THROW(NearestCentroidClassifier({{1.0}, {1.0, 2.0}}), ConfigError);
}

TEST(Config, ParsesLinear) {
  auto f = parse_classifier("# plane\nkind,linear\nnormal, 0, 2\noffset,1\n");
  auto* lin = dynamic_cast<LinearClassifier*>(f.get());
  ASSERT_NE(lin, nullptr);
  EXPECT_NEAR(lin->normal()[1], 1.0, 1e-15);
  EXPECT_NEAR(lin->offset(), 0.5, 1e-15);
}

TEST(Config, ParsesCentroids) {
  auto f = parse_classifier("kind,centroid\ncentroid,0,0\ncentroid,1,1\ncentroid,-1,1\n");
  EXPECT_EQ(f->num_classes(), 3);
  EXPECT_EQ(f->dimension(), 2u);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_classifier("kind,tree\n"), ConfigError);
  EXPECT_THROW(parse_classifier("kind,linear\nnormal,1\n"), ConfigError);
  EXPECT_THROW(parse_classifier("kind,linear\nnormal,1,x\noffset,0\n"), ConfigError);
  EXPECT_THROW(parse_classifier("kind,centroid\ncentroid,1\nweight,2\n"), ConfigError);
  EXPECT_THROW(load_classifier("/nonexistent/classifier.csv"), IoError);
}

TEST(Config, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "rslab_classifier_test.csv";
  {
    std::ofstream out(path);
    out << "kind,linear\nnormal,1\noffset,0\n";
  }
  auto f = load_classifier(path);
  EXPECT_EQ(f->dimension(), 1u);
  std::filesystem::remove(path);
}
