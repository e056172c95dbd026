#include "rslab/tamper.hpp"

#include <cmath>

#include "rslab/errors.hpp"

namespace rslab {

namespace {

constexpr double kTwo53 = 9007199254740992.0;

void check_shift(int value, const char* name) {
  if (value < 0 || value > kMaxCounterShift) {
    throw ConfigError(std::string(name) + " must lie in [0, 7], got " +
                      std::to_string(value));
  }
}

}  // namespace

TamperConfig TamperConfig::neg_kurtosis(int nk_alpha) {
  if (nk_alpha < 1) {
    throw ConfigError("negkurt alpha must be >= 1, got " + std::to_string(nk_alpha));
  }
  TamperConfig cfg;
  cfg.kind = TamperKind::NegKurtosis;
  cfg.nk_alpha = nk_alpha;
  return cfg;
}

TamperConfig TamperConfig::skewness(int beta) {
  check_shift(beta, "skew beta");
  TamperConfig cfg;
  cfg.kind = TamperKind::Skewness;
  cfg.beta = beta;
  return cfg;
}

TamperConfig TamperConfig::pos_kurtosis(int gamma) {
  check_shift(gamma, "poskurt gamma");
  TamperConfig cfg;
  cfg.kind = TamperKind::PosKurtosis;
  cfg.gamma = gamma;
  return cfg;
}

TamperConfig TamperConfig::from_name(std::string_view name, int param) {
  if (name == "none") return none();
  if (name == "negkurt") return neg_kurtosis(param);
  if (name == "skew") return skewness(param);
  if (name == "poskurt") return pos_kurtosis(param);
  throw ConfigError("unknown attack '" + std::string(name) + "'");
}

int TamperConfig::param() const {
  switch (kind) {
    case TamperKind::NegKurtosis: return nk_alpha;
    case TamperKind::Skewness: return beta;
    case TamperKind::PosKurtosis: return gamma;
    case TamperKind::None: break;
  }
  return 0;
}

std::string_view tamper_name(TamperKind kind) {
  switch (kind) {
    case TamperKind::None: return "none";
    case TamperKind::NegKurtosis: return "negkurt";
    case TamperKind::Skewness: return "skew";
    case TamperKind::PosKurtosis: return "poskurt";
  }
  return "?";
}

std::uint64_t tamper_neg_kurtosis(std::uint64_t rnd, int nk_alpha) {
  const double u = static_cast<double>(rnd >> 11) * (1.0 / kTwo53);
  const double a = 1.0 / nk_alpha;
  const double b = 1.0 - a / 2.0;
  const double skewed = (std::sqrt(b * b + 2.0 * u * a) - b) / a;
  const auto replaced = static_cast<std::uint64_t>(skewed * kTwo53);
  return (replaced << 9) | (rnd & kLowNineMask);
}

std::uint64_t tamper_skewness(std::uint64_t rnd, TamperConfig& cfg) {
  if ((rnd & kSignBit) == 0) return rnd;
  if ((cfg.counter >> cfg.beta) != 0) {
    cfg.counter = 1;
    return rnd & ~kSignBit;
  }
  cfg.counter = static_cast<std::uint8_t>(cfg.counter << 1);
  return rnd;
}

std::uint64_t tamper_pos_kurtosis(std::uint64_t rnd, TamperConfig& cfg) {
  if ((cfg.counter >> cfg.gamma) != 0) {
    cfg.counter = 1;
    return (rnd & ~kIndexMask) | ((rnd & kIndexMask) >> 1);
  }
  cfg.counter = static_cast<std::uint8_t>(cfg.counter << 1);
  return rnd;
}

std::uint64_t apply_tamper(std::uint64_t rnd, TamperConfig& cfg) {
  switch (cfg.kind) {
    case TamperKind::None: return rnd;
    case TamperKind::NegKurtosis: return tamper_neg_kurtosis(rnd, cfg.nk_alpha);
    case TamperKind::Skewness: return tamper_skewness(rnd, cfg);
    case TamperKind::PosKurtosis: return tamper_pos_kurtosis(rnd, cfg);
  }
  return rnd;
}

}  // namespace rslab
