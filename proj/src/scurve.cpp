#include "evscurve/scurve.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "evscurve/error.hpp"

namespace evscurve {

namespace {

constexpr double kHighest = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kLowest = std::numeric_limits<double>::denorm_min();

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

LogisticParams::LogisticParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0, got " + std::to_string(alpha));
  ln_alpha_ = std::log(alpha);
}

LogisticParams LogisticParams::from_log_alpha(double ln_alpha, double beta) {
  require_finite(ln_alpha, "ln(alpha)");
  const double alpha = std::exp(ln_alpha);
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw DomainError("alpha = exp(" + std::to_string(ln_alpha) + ") is not representable");
  }
  LogisticParams p(alpha, beta);
  p.ln_alpha_ = ln_alpha;
  return p;
}

std::optional<double> LogisticParams::t_mid() const noexcept {
  if (beta_ == 0.0) return std::nullopt;
  return ln_alpha_ / beta_;
}

double logistic_eval(const LogisticParams& params, double t) {
  require_finite(t, "t");
  // logit-space value, centred on t_mid so the midpoint maps to z == 0 exactly.
  // Falls back to beta * t - ln(alpha) when t_mid or the offset overflows.
  double z = params.beta() * t - params.ln_alpha();
  if (const auto mid = params.t_mid(); mid && std::isfinite(*mid) && std::isfinite(t - *mid)) {
    z = params.beta() * (t - *mid);
  }
  // exp() only ever sees a non-positive argument.
  double y;
  if (z >= 0.0) {
    y = 1.0 / (1.0 + std::exp(-z));
  } else {
    const double e = std::exp(z);
    y = e / (1.0 + e);
  }
  if (y > kHighest) return kHighest;
  if (y < kLowest) return kLowest;
  return y;
}

double logit(double y) {
  if (!(y > 0.0 && y < 1.0)) {
    throw DomainError("logit requires 0 < y < 1, got " + std::to_string(y));
  }
  return std::log(y) - std::log1p(-y);
}

const char* direction_name(Direction d) noexcept {
  switch (d) {
    case Direction::up: return "up";
    case Direction::down: return "down";
    case Direction::none: return "none";
  }
  return "none";
}

Crossing crossing_time(const LogisticParams& params, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("threshold must lie in (0, 1), got " + std::to_string(p));
  }
  if (params.beta() == 0.0) {
    throw Error(ErrorCode::no_crossing, "flat curve (beta = 0) never crosses " + std::to_string(p));
  }
  const double t = (params.ln_alpha() + logit(p)) / params.beta();
  return {t, params.beta() > 0.0 ? Direction::up : Direction::down};
}

LogisticParams params_from_line(double slope, double intercept) {
  require_finite(slope, "slope");
  require_finite(intercept, "intercept");
  return LogisticParams::from_log_alpha(-intercept, slope);
}

}  // namespace evscurve
