#include "rslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "json.hpp"
#include "rslab/battery.hpp"
#include "rslab/bitstream.hpp"
#include "rslab/errors.hpp"
#include "rslab/parallel.hpp"

namespace rslab {

using json = nlohmann::ordered_json;

namespace {

constexpr u128 kAttackedStreamBase = static_cast<u128>(1) << 64;
constexpr u128 kTaskStreamBase = static_cast<u128>(1) << 65;

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir.string(), ec.message());
}

// Buffered text file that reports the path on failure.
class OutFile {
 public:
  explicit OutFile(std::filesystem::path path) : path_(std::move(path)), out_(path_, std::ios::binary) {
    if (!out_) throw IoError(path_.string(), "cannot open for writing");
  }
  template <typename... Args>
  void line(fmt::format_string<Args...> f, Args&&... args) {
    out_ << fmt::format(f, std::forward<Args>(args)...) << '\n';
  }
  void raw(const std::string& s) { out_ << s; }
  void close() {
    out_.close();
    if (!out_) throw IoError(path_.string(), "write failed");
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void write_json(const std::filesystem::path& path, const json& j) {
  OutFile f(path);
  f.raw(j.dump(2));
  f.raw("\n");
  f.close();
}

json attack_json(const TamperConfig& t) {
  return {{"kind", std::string(tamper_name(t.kind))}, {"param", t.param()}};
}

// json has no 128-bit integers; seeds go out as hex strings.
json config_json(const ExperimentConfig& cfg) {
  return {{"seed", to_hex(cfg.seed)},
          {"attack", attack_json(cfg.attack)},
          {"sampler", std::string(family_name(cfg.sampler))},
          {"threshold", cfg.threshold}};
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

void ExperimentConfig::validate() const {
  if (!(sigma > 0.0)) throw ConfigError("--sigma must be positive");
  if (n0 == 0 || n == 0) throw ConfigError("--n0 and --n must be positive");
  if (!(conf_alpha > 0.0 && conf_alpha < 0.5)) throw ConfigError("--conf-alpha must lie in (0, 0.5)");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("--threshold must lie in (0, 1)");
  if (threads == 0) throw ConfigError("--threads must be at least 1");
  if (task != "linear" && task != "centroid") throw ConfigError("--task must be linear or centroid");
  if (margins.empty()) throw ConfigError("--margins must not be empty");
  for (double m : margins) {
    if (!(m > 0.0)) throw ConfigError("--margins must be positive");
  }
  if (centroid_count < 2) throw ConfigError("--centroids must be at least 2");
  if (!(centroid_spread >= 0.0)) throw ConfigError("--spread must be non-negative");
}

Generator stream_generator(const ExperimentConfig& cfg, std::size_t index) {
  return Generator(SeedMaterial{cfg.seed, index}, cfg.attack);
}

std::vector<double> draw_samples(Generator& gen, NoiseFamily family, std::size_t count) {
  const NoiseSampler sampler{family, 1.0, 0.0};
  std::vector<double> x(count);
  for (double& v : x) v = sampler(gen);
  return x;
}

double RadiusBinTable::fraction(std::size_t bin) const {
  return matched == 0 ? 0.0 : static_cast<double>(counts.at(bin)) / static_cast<double>(matched);
}

std::size_t RadiusBinTable::bin_of(double ratio) {
  std::size_t bin = 0;
  while (bin < kRatioEdges.size() && ratio > kRatioEdges[bin]) ++bin;
  return bin;
}

RadiusBinTable bin_radius_ratios(const std::vector<CertificationPair>& pairs) {
  RadiusBinTable t;
  for (const auto& p : pairs) {
    if (p.baseline.abstained() || p.attacked.abstained()) continue;
    if (p.baseline.predicted != p.attacked.predicted) continue;
    const double ratio = p.attacked.radius / p.baseline.radius;
    ++t.counts[RadiusBinTable::bin_of(ratio)];
    ++t.matched;
    t.max_ratio = std::max(t.max_ratio, ratio);
  }
  return t;
}

std::size_t RelativeConfusion::total() const {
  std::size_t s = 0;
  for (const auto& row : counts) {
    for (auto c : row) s += c;
  }
  return s;
}

Outcome classify_outcome(const CertificationResult& r, int truth) {
  if (r.abstained()) return Outcome::Abstain;
  return r.predicted == truth ? Outcome::Correct : Outcome::Incorrect;
}

RelativeConfusion relative_confusion(const std::vector<CertificationPair>& pairs,
                                     const std::vector<int>& truth) {
  if (pairs.size() != truth.size()) throw ConfigError("confusion: label count does not match points");
  RelativeConfusion c;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto b = static_cast<std::size_t>(classify_outcome(pairs[i].baseline, truth[i]));
    const auto a = static_cast<std::size_t>(classify_outcome(pairs[i].attacked, truth[i]));
    ++c.counts[b][a];
  }
  return c;
}

SyntheticTask make_task(const ExperimentConfig& cfg) {
  SyntheticTask task;
  if (!cfg.classifier_path.empty()) {
    task.classifier = load_classifier(cfg.classifier_path);
  } else if (cfg.task == "linear") {
    task.classifier = std::make_unique<LinearClassifier>(std::vector<double>{1.0}, 0.0);
  } else {
    std::vector<std::vector<double>> centroids;
    for (int k = 0; k < cfg.centroid_count; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / cfg.centroid_count;
      centroids.push_back({0.5 * std::cos(angle), 0.5 * std::sin(angle)});
    }
    task.classifier = std::make_unique<NearestCentroidClassifier>(std::move(centroids));
  }

  if (const auto* lin = dynamic_cast<const LinearClassifier*>(task.classifier.get())) {
    for (std::size_t j = 0; j < cfg.points; ++j) {
      const double m = cfg.margins[j % cfg.margins.size()];
      std::vector<double> x = lin->normal();
      for (double& v : x) v *= lin->offset() + m;
      task.points.push_back(std::move(x));
      task.truth.push_back(1);
      task.margins.push_back(m);
    }
  } else if (const auto* nc = dynamic_cast<const NearestCentroidClassifier*>(task.classifier.get())) {
    const auto& centroids = nc->centroids();
    for (std::size_t j = 0; j < cfg.points; ++j) {
      const std::size_t k = j % centroids.size();
      Generator gen(SeedMaterial{cfg.seed, kTaskStreamBase + j});
      std::vector<double> x = centroids[k];
      const NoiseSampler jitter{NoiseFamily::Gaussian, cfg.centroid_spread, 0.0};
      for (double& v : x) v += cfg.centroid_spread > 0.0 ? jitter(gen) : 0.0;
      task.points.push_back(std::move(x));
      task.truth.push_back(static_cast<int>(k));
    }
  } else {
    throw ConfigError("unsupported classifier for certify-compare");
  }
  return task;
}

CompareResult run_certify_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  CompareResult res;
  res.task = make_task(cfg);
  SmoothingConfig base_cfg;
  base_cfg.sigma = cfg.sigma;
  base_cfg.n0 = cfg.n0;
  base_cfg.n = cfg.n;
  base_cfg.conf_alpha = cfg.conf_alpha;
  base_cfg.sampler = {NoiseFamily::Gaussian, cfg.sigma, 0.0};
  SmoothingConfig att_cfg = base_cfg;
  att_cfg.sampler = {cfg.sampler, cfg.sigma, 0.0};
  const CertificationArm baseline{base_cfg, TamperConfig::none(), SeedMaterial{cfg.seed, 0}};
  const CertificationArm attacked{att_cfg, cfg.attack, SeedMaterial{cfg.seed, kAttackedStreamBase}};
  res.pairs = certify_batch(*res.task.classifier, res.task.points, baseline, attacked, cfg.threads);
  res.bins = bin_radius_ratios(res.pairs);
  res.confusion = relative_confusion(res.pairs, res.task.truth);
  return res;
}

std::vector<LadderCell> normality_ladder(const TamperConfig& attack, std::size_t size,
                                         const std::vector<NormalityTest>& tests, std::size_t trials,
                                         std::size_t required, u128 seed, double threshold) {
  std::vector<LadderCell> cells;
  for (auto t : tests) cells.push_back({t});
  const std::size_t allowed_failures = trials >= required ? trials - required : 0;
  NormalityParams params;
  params.unbounded_shapiro = true;
  params.threshold = threshold;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    bool open = false;
    for (const auto& c : cells) open = open || (c.failures <= allowed_failures && c.passes < required);
    if (!open) break;
    Generator gen(SeedMaterial{seed, trial}, attack);
    const auto x = draw_samples(gen, NoiseFamily::Gaussian, size);
    for (auto& c : cells) {
      if (c.failures > allowed_failures || c.passes >= required) continue;
      bool ok = false;
      try {
        ok = run_normality_test(c.test, x, params).passed;
      } catch (const DegenerateInputError&) {
        ok = false;
      }
      ++(ok ? c.passes : c.failures);
    }
  }
  for (auto& c : cells) c.passed = c.passes >= required;
  return cells;
}

void cmd_genbits(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.bits == 0) throw ConfigError("--bits must be positive");
  ensure_dir(cfg.out);
  json files = json::array();
  std::vector<std::string> names(cfg.streams);
  parallel_for(cfg.streams, cfg.threads, [&](std::size_t i) {
    Generator gen = stream_generator(cfg, i);
    names[i] = fmt::format("stream_{:04d}.txt", i);
    write_bitstream_file(cfg.out / names[i], BitStream::from_generator(gen, cfg.bits));
  });
  for (std::size_t i = 0; i < cfg.streams; ++i) {
    files.push_back({{"file", names[i]}, {"seed", to_hex(cfg.seed)}, {"stream", to_hex(i)}});
  }
  json manifest = {{"command", "genbits"}, {"bits", cfg.bits}, {"streams", cfg.streams}};
  manifest.update(config_json(cfg));
  manifest["bit_order"] = "msb-first";
  manifest["files"] = std::move(files);
  write_json(cfg.out / "manifest.json", manifest);
}

namespace {

std::vector<BitStream> load_stream_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  const auto manifest_path = dir / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError(manifest_path.string(), "cannot open");
    json m;
    try {
      m = json::parse(in);
      for (const auto& f : m.at("files")) files.push_back(dir / f.at("file").get<std::string>());
    } catch (const json::exception& e) {
      throw IoError(manifest_path.string(), std::string("malformed manifest: ") + e.what());
    }
  } else {
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
      if (entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    if (ec) throw IoError(dir.string(), ec.message());
    std::sort(files.begin(), files.end());
  }
  std::vector<BitStream> streams;
  for (const auto& f : files) {
    for (auto& s : read_bitstream_file(f)) streams.push_back(std::move(s));
  }
  if (streams.empty()) throw IoError(dir.string(), "no bitstreams found");
  return streams;
}

}  // namespace

void cmd_battery(const ExperimentConfig& cfg) {
  cfg.validate();
  ensure_dir(cfg.out);
  NistParams params;
  params.threshold = cfg.threshold;

  std::vector<BitStream> loaded;
  std::vector<std::size_t> lengths = cfg.lengths;
  std::size_t streams = cfg.streams;
  if (!cfg.bits_dir.empty()) {
    loaded = load_stream_dir(cfg.bits_dir);
    streams = loaded.size();
    const std::size_t len = loaded.front().size();
    for (const auto& s : loaded) {
      if (s.size() != len) throw IoError(cfg.bits_dir.string(), "streams differ in length");
    }
    lengths = {len};
  }
  if (lengths.empty()) throw ConfigError("--lengths must not be empty");

  OutFile counts(cfg.out / "pass_counts.csv");
  counts.line("length,test_name,passes,streams,required,status");
  json per_length = json::array();
  for (std::size_t len : lengths) {
    if (len == 0) throw ConfigError("stream lengths must be positive");
    StreamSource source;
    if (loaded.empty()) {
      source = [&](std::size_t i) {
        Generator gen = stream_generator(cfg, i);
        return BitStream::from_generator(gen, len);
      };
    } else {
      source = [&](std::size_t i) { return loaded[i]; };
    }
    const auto report = run_battery(source, streams, len, all_nist_tests(), params, cfg.threads);

    OutFile rows(cfg.out / fmt::format("reports_n{}.csv", len));
    rows.line("test_name,stream_index,statistic,p_value,passed");
    for (std::size_t i = 0; i < report.stream_reports.size(); ++i) {
      for (const auto& r : report.stream_reports[i]) {
        rows.line("{},{},{},{},{}", r.test_name, i, num(r.statistic), num(r.p_value), r.passed ? 1 : 0);
      }
    }
    rows.close();

    json tests = json::array();
    for (const auto& row : report.rows) {
      const char* status = row.skipped ? "skipped:below-minimum-length" : "ok";
      counts.line("{},{},{},{},{},{}", len, row.test_name, row.passes, report.streams, report.required_passes,
                  status);
      tests.push_back({{"test_name", row.test_name},
                       {"passes", row.passes},
                       {"skipped", row.skipped},
                       {"meets_required", !row.skipped && row.passes >= report.required_passes}});
    }
    per_length.push_back({{"length", len},
                          {"streams", report.streams},
                          {"required_passes", report.required_passes},
                          {"tests", std::move(tests)}});
  }
  counts.close();

  json summary = {{"command", "battery"}};
  summary.update(config_json(cfg));
  summary["source"] = cfg.bits_dir.empty() ? "generator" : "files";
  summary["parameters"] = {{"block_frequency_m", params.block_len},
                           {"approximate_entropy_m", params.approx_entropy_m},
                           {"serial_m", params.serial_m}};
  summary["results"] = std::move(per_length);
  write_json(cfg.out / "summary.json", summary);
}

void cmd_normality(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.sizes.empty()) throw ConfigError("--sizes must not be empty");
  if (cfg.trials == 0) throw ConfigError("--trials must be positive");
  ensure_dir(cfg.out);
  NormalityParams params;
  params.unbounded_shapiro = cfg.unbounded_shapiro;
  params.threshold = cfg.threshold;
  const auto& tests = all_normality_tests();

  struct TrialResult {
    std::vector<TestReport> reports;
    std::vector<std::string> status;
    Moments moments;
    double min = 0.0;
    double max = 0.0;
    bool degenerate = false;
  };

  OutFile reports(cfg.out / "reports.csv");
  reports.line("size,trial,test_name,statistic,p_value,passed,status");
  OutFile moments(cfg.out / "moments.csv");
  moments.line("size,trial,mean,variance,skewness,excess_kurtosis,min,max");
  OutFile counts(cfg.out / "pass_counts.csv");
  counts.line("size,test_name,passes,evaluated,trials,status");
  json summary_sizes = json::array();
  std::vector<double> qq_source;

  for (std::size_t size : cfg.sizes) {
    if (size < 4) throw ConfigError("--sizes entries must be at least 4");
    std::vector<TrialResult> results(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
      Generator gen(SeedMaterial{cfg.seed, t}, cfg.attack);
      const auto x = draw_samples(gen, cfg.sampler, size);
      auto& res = results[t];
      const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
      res.min = *lo;
      res.max = *hi;
      try {
        res.moments = sample_moments(x);
      } catch (const DegenerateInputError&) {
        res.degenerate = true;
      }
      for (auto test : tests) {
        TestReport r;
        r.test_name = std::string(normality_test_name(test));
        r.threshold = params.threshold;
        std::string status = "ok";
        if (!normality_size_supported(test, size, params)) {
          status = "skipped:size";
        } else {
          try {
            r = run_normality_test(test, x, params);
          } catch (const DegenerateInputError&) {
            status = "degenerate";
          }
        }
        res.reports.push_back(std::move(r));
        res.status.push_back(std::move(status));
      }
    });
    if (size == cfg.sizes.back()) {
      Generator gen(SeedMaterial{cfg.seed, 0}, cfg.attack);
      qq_source = draw_samples(gen, cfg.sampler, size);
    }

    json per_test = json::array();
    for (std::size_t k = 0; k < tests.size(); ++k) {
      std::size_t passes = 0;
      std::size_t evaluated = 0;
      std::vector<double> pvals;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto& r = results[t].reports[k];
        if (results[t].status[k] != "ok") continue;
        ++evaluated;
        passes += r.passed ? 1 : 0;
        pvals.push_back(r.p_value);
      }
      std::string status = evaluated == cfg.trials ? "ok" : (evaluated == 0 ? results[0].status[k] : "partial");
      counts.line("{},{},{},{},{},{}", size, normality_test_name(tests[k]), passes, evaluated, cfg.trials, status);
      json entry = {{"test_name", std::string(normality_test_name(tests[k]))},
                    {"passes", passes},
                    {"evaluated", evaluated},
                    {"status", status}};
      if (!pvals.empty()) {
        std::sort(pvals.begin(), pvals.end());
        const std::size_t m = pvals.size();
        entry["median_p_value"] = m % 2 ? pvals[m / 2] : 0.5 * (pvals[m / 2 - 1] + pvals[m / 2]);
        entry["rejection_fraction"] = static_cast<double>(evaluated - passes) / static_cast<double>(evaluated);
      }
      per_test.push_back(std::move(entry));
    }
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto& res = results[t];
      for (std::size_t k = 0; k < tests.size(); ++k) {
        const auto& r = res.reports[k];
        if (res.status[k] == "ok") {
          reports.line("{},{},{},{},{},{},ok", size, t, r.test_name, num(r.statistic), num(r.p_value),
                       r.passed ? 1 : 0);
        } else {
          reports.line("{},{},{},,,,{}", size, t, r.test_name, res.status[k]);
        }
      }
      if (res.degenerate) {
        moments.line("{},{},,,,,{},{}", size, t, num(res.min), num(res.max));
      } else {
        moments.line("{},{},{},{},{},{},{},{}", size, t, num(res.moments.mean), num(res.moments.variance),
                     num(res.moments.skewness), num(res.moments.excess_kurtosis), num(res.min), num(res.max));
      }
    }
    summary_sizes.push_back({{"size", size}, {"trials", cfg.trials}, {"tests", std::move(per_test)}});
  }
  reports.close();
  moments.close();
  counts.close();

  OutFile qq(cfg.out / "qq.csv");
  qq.line("theoretical,empirical");
  for (auto [th, emp] : qq_data(qq_source, std::min(cfg.qq_points, qq_source.size()))) {
    qq.line("{},{}", num(th), num(emp));
  }
  qq.close();

  json summary = {{"command", "normality"}};
  summary.update(config_json(cfg));
  summary["unbounded_shapiro"] = cfg.unbounded_shapiro;
  summary["qq_size"] = qq_source.size();
  summary["results"] = std::move(summary_sizes);
  write_json(cfg.out / "summary.json", summary);
}

void cmd_certify_compare(const ExperimentConfig& cfg) {
  ensure_dir(cfg.out);
  const CompareResult res = run_certify_compare(cfg);

  OutFile points(cfg.out / "points.csv");
  points.line(
      "index,truth,margin,baseline_pred,baseline_pa_lower,baseline_radius,attacked_pred,attacked_pa_lower,"
      "attacked_radius,ratio");
  std::size_t base_abstain = 0;
  std::size_t att_abstain = 0;
  for (std::size_t i = 0; i < res.pairs.size(); ++i) {
    const auto& b = res.pairs[i].baseline;
    const auto& a = res.pairs[i].attacked;
    base_abstain += b.abstained() ? 1 : 0;
    att_abstain += a.abstained() ? 1 : 0;
    const bool matched = !b.abstained() && !a.abstained() && a.predicted == b.predicted;
    points.line("{},{},{},{},{},{},{},{},{},{}", i, res.task.truth[i],
                res.task.margins.empty() ? std::string() : num(res.task.margins[i]), b.predicted,
                num(b.pa_lower), num(b.radius), a.predicted, num(a.pa_lower), num(a.radius),
                matched ? num(a.radius / b.radius) : std::string());
  }
  points.close();

  OutFile bins(cfg.out / "radius_bins.csv");
  bins.line("bin,count,fraction");
  json bin_json = json::array();
  for (std::size_t k = 0; k < kRatioBinLabels.size(); ++k) {
    bins.line("{},{},{}", kRatioBinLabels[k], res.bins.counts[k], num(res.bins.fraction(k)));
    bin_json.push_back({{"bin", kRatioBinLabels[k]}, {"count", res.bins.counts[k]}, {"fraction", res.bins.fraction(k)}});
  }
  bins.close();

  static constexpr const char* kOutcomeNames[] = {"correct", "incorrect", "abstain"};
  OutFile conf(cfg.out / "confusion.csv");
  conf.line("baseline\\attacked,correct,incorrect,abstain");
  json conf_json = json::object();
  for (std::size_t r = 0; r < 3; ++r) {
    const auto& row = res.confusion.counts[r];
    conf.line("{},{},{},{}", kOutcomeNames[r], row[0], row[1], row[2]);
    conf_json[kOutcomeNames[r]] = {{"correct", row[0]}, {"incorrect", row[1]}, {"abstain", row[2]}};
  }
  conf.close();

  json summary = {{"command", "certify-compare"}};
  summary.update(config_json(cfg));
  summary["smoothing"] = {{"sigma", cfg.sigma}, {"n0", cfg.n0}, {"n", cfg.n}, {"conf_alpha", cfg.conf_alpha}};
  summary["task"] = cfg.classifier_path.empty() ? cfg.task : "file";
  summary["points"] = res.pairs.size();
  summary["baseline_abstain"] = base_abstain;
  summary["attacked_abstain"] = att_abstain;
  summary["matched"] = res.bins.matched;
  summary["all_abstain"] = res.bins.matched == 0;
  summary["max_ratio"] = res.bins.max_ratio;
  summary["radius_bins"] = std::move(bin_json);
  summary["confusion"] = std::move(conf_json);
  summary["confusion_total"] = res.confusion.total();
  write_json(cfg.out / "summary.json", summary);
}

}  // namespace rslab
