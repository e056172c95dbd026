#pragma once

// Deterministic synthetic base classifiers with known decision geometry.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

namespace rslab {

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual int classify(std::span<const double> x) const = 0;
  virtual std::size_t dimension() const = 0;
  virtual int num_classes() const = 0;
};

// label = 1 if <normal, x> >= offset else 0. The normal is rescaled to unit
// length (the offset with it), so the margin is a Euclidean distance.
class LinearClassifier final : public Classifier {
 public:
  LinearClassifier(std::vector<double> normal, double offset);

  int classify(std::span<const double> x) const override;
  std::size_t dimension() const override { return normal_.size(); }
  int num_classes() const override { return 2; }

  // Signed distance <normal, x> - offset.
  double signed_margin(std::span<const double> x) const;
  const std::vector<double>& normal() const { return normal_; }
  double offset() const { return offset_; }

 private:
  std::vector<double> normal_;
  double offset_;
};

// Nearest centroid by Euclidean distance; ties go to the lowest index.
class NearestCentroidClassifier final : public Classifier {
 public:
  explicit NearestCentroidClassifier(std::vector<std::vector<double>> centroids);

  int classify(std::span<const double> x) const override;
  std::size_t dimension() const override { return centroids_.front().size(); }
  int num_classes() const override { return static_cast<int>(centroids_.size()); }
  const std::vector<std::vector<double>>& centroids() const { return centroids_; }

 private:
  std::vector<std::vector<double>> centroids_;
};

class ConstantClassifier final : public Classifier {
 public:
  ConstantClassifier(int label, std::size_t dimension, int num_classes);

  int classify(std::span<const double>) const override { return label_; }
  std::size_t dimension() const override { return dimension_; }
  int num_classes() const override { return classes_; }

 private:
  int label_;
  std::size_t dimension_;
  int classes_;
};

// Plain-text CSV rows, '#' starts a comment:
//   kind,linear        normal,<v1>,<v2>,...   offset,<b>
//   kind,centroid      centroid,<c1>,<c2>,... (one row per class)
std::unique_ptr<Classifier> parse_classifier(const std::string& text);
std::unique_ptr<Classifier> load_classifier(const std::filesystem::path& path);

}  // namespace rslab
