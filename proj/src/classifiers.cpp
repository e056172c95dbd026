#include "rslab/classifiers.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "rslab/errors.hpp"

namespace rslab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_dimension(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw ConfigError("input has dimension " + std::to_string(got) + ", classifier expects " +
                      std::to_string(expected));
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<double> parse_numbers(const std::vector<std::string>& fields, std::size_t line_no) {
  std::vector<double> out;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(fields[i], &used));
      if (used != fields[i].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("classifier line " + std::to_string(line_no) + ": bad number '" + fields[i] + "'");
    }
  }
  return out;
}

}  // namespace

LinearClassifier::LinearClassifier(std::vector<double> normal, double offset)
    : normal_(std::move(normal)), offset_(offset) {
  if (normal_.empty()) throw ConfigError("linear classifier needs a non-empty normal");
  const double norm = std::sqrt(dot(normal_, normal_));
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ConfigError("linear classifier normal has zero length");
  for (double& v : normal_) v /= norm;
  offset_ /= norm;
}

double LinearClassifier::signed_margin(std::span<const double> x) const {
  check_dimension(normal_.size(), x.size());
  return dot(normal_, x) - offset_;
}

int LinearClassifier::classify(std::span<const double> x) const { return signed_margin(x) >= 0.0 ? 1 : 0; }

NearestCentroidClassifier::NearestCentroidClassifier(std::vector<std::vector<double>> centroids)
    : centroids_(std::move(centroids)) {
  if (centroids_.size() < 2) throw ConfigError("nearest-centroid classifier needs at least 2 centroids");
  const std::size_t d = centroids_.front().size();
  if (d == 0) throw ConfigError("centroids must be non-empty");
  for (std::size_t i = 0; i < centroids_.size(); ++i) {
    if (centroids_[i].size() != d) throw ConfigError("centroids differ in dimension");
    for (std::size_t j = 0; j < i; ++j) {
      if (centroids_[i] == centroids_[j]) throw ConfigError("centroids must be pairwise distinct");
    }
  }
}

int NearestCentroidClassifier::classify(std::span<const double> x) const {
  check_dimension(dimension(), x.size());
  int best = 0;
  double best_dist = 0.0;
  for (std::size_t k = 0; k < centroids_.size(); ++k) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double diff = x[i] - centroids_[k][i];
      d += diff * diff;
    }
    if (k == 0 || d < best_dist) {
      best = static_cast<int>(k);
      best_dist = d;
    }
  }
  return best;
}

ConstantClassifier::ConstantClassifier(int label, std::size_t dimension, int num_classes)
    : label_(label), dimension_(dimension), classes_(num_classes) {
  if (num_classes < 2 || label < 0 || label >= num_classes) throw ConfigError("constant classifier label out of range");
  if (dimension == 0) throw ConfigError("constant classifier needs a positive dimension");
}

std::unique_ptr<Classifier> parse_classifier(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string kind;
  std::vector<double> normal;
  bool have_offset = false;
  double offset = 0.0;
  std::vector<std::vector<double>> centroids;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(trim(field));
    const std::string& key = fields.front();
    if (key == "kind") {
      if (fields.size() != 2) throw ConfigError("classifier line " + std::to_string(line_no) + ": kind takes one value");
      kind = fields[1];
    } else if (key == "normal") {
      normal = parse_numbers(fields, line_no);
    } else if (key == "offset") {
      const auto v = parse_numbers(fields, line_no);
      if (v.size() != 1) throw ConfigError("classifier line " + std::to_string(line_no) + ": offset takes one value");
      offset = v[0];
      have_offset = true;
    } else if (key == "centroid") {
      centroids.push_back(parse_numbers(fields, line_no));
    } else {
      throw ConfigError("classifier line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (kind == "linear") {
    if (!centroids.empty()) throw ConfigError("linear classifier given centroid rows");
    if (!have_offset) throw ConfigError("linear classifier missing offset row");
    return std::make_unique<LinearClassifier>(std::move(normal), offset);
  }
  if (kind == "centroid") {
    if (!normal.empty() || have_offset) throw ConfigError("centroid classifier given linear rows");
    return std::make_unique<NearestCentroidClassifier>(std::move(centroids));
  }
  throw ConfigError("classifier kind must be 'linear' or 'centroid'");
}

std::unique_ptr<Classifier> load_classifier(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open classifier file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_classifier(buf.str());
}

}  // namespace rslab
