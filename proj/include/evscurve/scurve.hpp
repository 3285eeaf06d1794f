#pragma once

#include <optional>

namespace evscurve {

/// Parameters of y(t) = 1 / (1 + alpha * exp(-beta * t)).
///
/// Both alpha and ln(alpha) are kept: curves built from a fitted line carry
/// ln(alpha) = -intercept exactly, and evaluation works in log space.
class LogisticParams {
 public:
  LogisticParams() = default;
  /// Throws DomainError unless alpha > 0 and both values are finite.
  LogisticParams(double alpha, double beta);
  static LogisticParams from_log_alpha(double ln_alpha, double beta);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double ln_alpha() const noexcept { return ln_alpha_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }
  /// ln(alpha) / beta, where the curve passes 0.5. Absent for beta == 0.
  [[nodiscard]] std::optional<double> t_mid() const noexcept;

  friend bool operator==(const LogisticParams&, const LogisticParams&) = default;

 private:
  double alpha_ = 1.0;
  double ln_alpha_ = 0.0;
  double beta_ = 0.0;
};

/// Curve value at t. Always lies in the open interval (0, 1): where the exact
/// value rounds to 0 or 1 in double precision it saturates at the nearest
/// representable interior value.
double logistic_eval(const LogisticParams& params, double t);

/// ln(y / (1 - y)). Throws DomainError unless 0 < y < 1.
double logit(double y);

enum class Direction { up, down, none };
const char* direction_name(Direction d) noexcept;

struct Crossing {
  double t = 0.0;
  Direction direction = Direction::none;
};

/// Time at which the curve equals p: (ln alpha + logit p) / beta. beta < 0
/// yields a down-crossing. Throws DomainError for p outside (0, 1) and
/// Error(no_crossing) for beta == 0.
Crossing crossing_time(const LogisticParams& params, double p);

/// Maps the logit-space line logit(y) = slope * t + intercept back to the
/// curve: beta = slope, alpha = exp(-intercept).
LogisticParams params_from_line(double slope, double intercept);

}  // namespace evscurve
