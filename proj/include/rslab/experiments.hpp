#pragma once

// Experiment drivers behind the rslab command-line tool. Every command is a
// pure function of its config: outputs are ordered by unit index and carry
// no timestamps, so reruns and thread counts give identical bytes.

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "rslab/classifiers.hpp"
#include "rslab/generator.hpp"
#include "rslab/normality.hpp"
#include "rslab/samplers.hpp"
#include "rslab/smoothing.hpp"

namespace rslab {

struct ExperimentConfig {
  u128 seed = 0;
  std::size_t streams = 100;
  TamperConfig attack;
  NoiseFamily sampler = NoiseFamily::Gaussian;
  double sigma = 0.25;
  std::size_t n0 = 100;
  std::size_t n = 10000;
  double conf_alpha = 0.001;
  std::filesystem::path out = "rslab_out";
  unsigned threads = 1;
  double threshold = kDefaultPassThreshold;

  // genbits
  std::size_t bits = 1000000;
  // battery
  std::vector<std::size_t> lengths = {100, 1000, 10000, 100000, 1000000};
  std::filesystem::path bits_dir;  // read streams from a genbits directory
  // normality
  std::vector<std::size_t> sizes = {5000};
  std::size_t trials = 100;
  std::size_t qq_points = 1000;
  bool unbounded_shapiro = false;
  // certify-compare
  std::string task = "linear";  // linear | centroid
  std::filesystem::path classifier_path;
  std::size_t points = 500;
  std::vector<double> margins = {0.05, 0.1, 0.2};
  int centroid_count = 3;
  double centroid_spread = 0.3;

  void validate() const;
};

// Stream schedule shared by genbits and battery: stream i uses (seed, i).
Generator stream_generator(const ExperimentConfig& cfg, std::size_t index);

// `count` standard-normal-family draws (scale 1) from `gen`.
std::vector<double> draw_samples(Generator& gen, NoiseFamily family, std::size_t count);

inline constexpr std::array<double, 5> kRatioEdges = {1.0, 1.1, 1.25, 1.5, 2.0};
inline constexpr std::array<const char*, 6> kRatioBinLabels = {
    "(0,1.0]", "(1.0,1.1]", "(1.1,1.25]", "(1.25,1.5]", "(1.5,2.0]", "(2.0,inf)"};

// R'/R over pairs where both runs certify the same class.
struct RadiusBinTable {
  std::array<std::size_t, 6> counts{};
  std::size_t matched = 0;
  double max_ratio = 0.0;

  double fraction(std::size_t bin) const;
  static std::size_t bin_of(double ratio);
};

RadiusBinTable bin_radius_ratios(const std::vector<CertificationPair>& pairs);

enum class Outcome { Correct = 0, Incorrect = 1, Abstain = 2 };

// counts[baseline outcome][attacked outcome].
struct RelativeConfusion {
  std::array<std::array<std::size_t, 3>, 3> counts{};
  std::size_t total() const;
};

Outcome classify_outcome(const CertificationResult& r, int truth);
RelativeConfusion relative_confusion(const std::vector<CertificationPair>& pairs,
                                     const std::vector<int>& truth);

struct SyntheticTask {
  std::unique_ptr<Classifier> classifier;
  std::vector<std::vector<double>> points;
  std::vector<int> truth;
  std::vector<double> margins;  // linear task only: distance to the boundary
};

// Linear: points on the positive side at margins cycling through
// cfg.margins. Centroid: points drawn around evenly spaced centroids,
// labelled by the centroid that generated them.
SyntheticTask make_task(const ExperimentConfig& cfg);

struct CompareResult {
  SyntheticTask task;
  std::vector<CertificationPair> pairs;
  RadiusBinTable bins;
  RelativeConfusion confusion;
};

// Baseline arm: honest Gaussian noise on streams (seed, i). Attacked arm:
// cfg.sampler with cfg.attack on streams (seed, 2^64 + i).
CompareResult run_certify_compare(const ExperimentConfig& cfg);

struct LadderCell {
  NormalityTest test;
  std::size_t passes = 0;
  std::size_t failures = 0;
  bool passed = false;  // passes >= required
};

// Pass counts of the normality tests over `trials` samples of `size`
// draws from (seed, t) with `attack`. A test stops being evaluated once
// its verdict against `required` is settled.
std::vector<LadderCell> normality_ladder(const TamperConfig& attack, std::size_t size,
                                         const std::vector<NormalityTest>& tests, std::size_t trials,
                                         std::size_t required, u128 seed,
                                         double threshold = kDefaultPassThreshold);

void cmd_genbits(const ExperimentConfig& cfg);
void cmd_battery(const ExperimentConfig& cfg);
void cmd_normality(const ExperimentConfig& cfg);
void cmd_certify_compare(const ExperimentConfig& cfg);

}  // namespace rslab
