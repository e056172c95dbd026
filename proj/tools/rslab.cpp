// rslab: generate tampered bitstreams, run the detection batteries and
// compare certified radii under honest and attacked noise.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rslab/errors.hpp"
#include "rslab/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kNumeric = 3 };

}  // namespace

int main(int argc, char** argv) {
  using namespace rslab;
  CLI::App app{"PRNG backdoor laboratory for randomised smoothing"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key = value file mirroring the long flags; flags win");

  ExperimentConfig cfg;
  std::string seed_text = "0";
  std::string attack = "none";
  int param = 0;
  std::string sampler = "gauss";
  std::string out = cfg.out.string();
  std::string bits_dir;
  std::string classifier;
  bool paper_scale = false;

  app.add_option("--seed", seed_text, "Base seed (decimal or 0x hex, up to 128 bits)");
  auto* streams_opt = app.add_option("--streams", cfg.streams, "Number of independent streams");
  app.add_option("--attack", attack, "Bit-level attack")->check(CLI::IsMember({"none", "negkurt", "skew", "poskurt"}));
  app.add_option("--param", param, "Attack parameter (alpha, beta or gamma)");
  app.add_option("--sampler", sampler, "Noise family for the attacked arm")
      ->check(CLI::IsMember({"gauss", "laplace", "halfnormal", "uniform", "bernoulli"}));
  app.add_option("--sigma", cfg.sigma, "Noise scale");
  app.add_option("--n0", cfg.n0, "Selection draws");
  app.add_option("--n", cfg.n, "Certification draws");
  app.add_option("--conf-alpha", cfg.conf_alpha, "Certification failure probability");
  app.add_option("--out", out, "Output directory");
  app.add_flag("--paper-scale", paper_scale, "1000 streams / trials unless given explicitly");
  app.add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)");
  app.add_option("--threshold", cfg.threshold, "p-value pass threshold");
  app.add_option("--bits", cfg.bits, "genbits: bits per stream");
  app.add_option("--lengths", cfg.lengths, "battery: stream lengths")->delimiter(',');
  app.add_option("--bits-dir", bits_dir, "battery: read streams written by genbits");
  app.add_option("--sizes", cfg.sizes, "normality: sample sizes")->delimiter(',');
  auto* trials_opt = app.add_option("--trials", cfg.trials, "normality: samples per size");
  app.add_option("--qq-points", cfg.qq_points, "normality: QQ pairs");
  app.add_flag("--unbounded-shapiro", cfg.unbounded_shapiro, "normality: run Shapiro-Wilk past 5000 samples");
  app.add_option("--task", cfg.task, "certify-compare: synthetic task")->check(CLI::IsMember({"linear", "centroid"}));
  app.add_option("--classifier", classifier, "certify-compare: classifier definition file");
  app.add_option("--points", cfg.points, "certify-compare: number of points");
  app.add_option("--margins", cfg.margins, "certify-compare: linear-task margins")->delimiter(',');
  app.add_option("--centroids", cfg.centroid_count, "certify-compare: classes of the centroid task");
  app.add_option("--spread", cfg.centroid_spread, "certify-compare: point spread around centroids");

  auto* genbits = app.add_subcommand("genbits", "Write ASCII bitstreams and a manifest");
  auto* battery = app.add_subcommand("battery", "SP800-22 subset pass counts across lengths");
  auto* normality = app.add_subcommand("normality", "Normality tests, QQ pairs and moments");
  auto* certify = app.add_subcommand("certify-compare", "Certified radii, baseline vs attacked");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    cfg.seed = parse_u128(seed_text);
    cfg.attack = TamperConfig::from_name(attack, param);
    cfg.sampler = parse_family(sampler);
    cfg.out = out;
    cfg.bits_dir = bits_dir;
    cfg.classifier_path = classifier;
    if (paper_scale) {
      if (streams_opt->count() == 0) cfg.streams = 1000;
      if (trials_opt->count() == 0) cfg.trials = 1000;
    }
    if (*genbits) cmd_genbits(cfg);
    if (*battery) cmd_battery(cfg);
    if (*normality) cmd_normality(cfg);
    if (*certify) cmd_certify_compare(cfg);
  } catch (const IoError& e) {
    std::fprintf(stderr, "rslab: I/O error: %s\n", e.what());
    return kIo;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "rslab: numeric error: %s\n", e.what());
    return kNumeric;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "rslab: numeric error: %s\n", e.what());
    return kNumeric;
  } catch (const DegenerateInputError& e) {
    std::fprintf(stderr, "rslab: numeric error: %s\n", e.what());
    return kNumeric;
  } catch (const Error& e) {
    std::fprintf(stderr, "rslab: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rslab: %s\n", e.what());
    return kUsage;
  }
  return kOk;
}
