#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace damflow {

// Errors ---------------------------------------------------------------------

/// Input outside the domain of an operation (negative depth, wrong side of a
/// wave curve, invalid problem data).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The entropy-saturated connection is required but does not exist.
class no_entropic_connection : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Strip depth above the upper bound: the connection cubic has no positive root.
class empty_feasible : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Configurations the solver does not cover (e.g. negative far-field velocity).
class unsupported_case : public domain_error {
 public:
  using domain_error::domain_error;
};

// Types ----------------------------------------------------------------------

/// Gravitational acceleration [m/s^2]. Always positive.
class Gravity {
 public:
  constexpr Gravity() = default;
  explicit Gravity(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw domain_error("gravity must be positive and finite");
    }
  }
  [[nodiscard]] constexpr double value() const { return value_; }

 private:
  double value_ = 9.81;
};

/// Depth h [m] and velocity u [m/s]. h == 0 is vacuum.
struct State {
  double h = 0.0;
  double u = 0.0;

  [[nodiscard]] bool is_vacuum() const { return h == 0.0; }
  static constexpr State vacuum() { return {0.0, 0.0}; }
};

/// Bed levels left (b0) and right (b1) of the step at x = 0, with b1 > b0.
class BedStep {
 public:
  BedStep(double b0, double b1, Gravity g = Gravity{}) : b0_(b0), b1_(b1), g_(g) {
    if (!std::isfinite(b0) || !std::isfinite(b1)) {
      throw domain_error("bed levels must be finite");
    }
    if (!(b1 > b0)) {
      throw domain_error("bed step requires b1 > b0");
    }
  }

  [[nodiscard]] double b0() const { return b0_; }
  [[nodiscard]] double b1() const { return b1_; }
  [[nodiscard]] double jump() const { return b1_ - b0_; }
  [[nodiscard]] Gravity gravity() const { return g_; }
  [[nodiscard]] double g() const { return g_.value(); }

 private:
  double b0_;
  double b1_;
  Gravity g_;
};

struct EnergyPair {
  double eta = 0.0;
  double q = 0.0;
};

namespace detail {

inline void require_depth(const State& s) {
  if (!(s.h >= 0.0)) {
    throw domain_error("negative depth: h = " + std::to_string(s.h));
  }
}

}  // namespace detail

// Operations -----------------------------------------------------------------

/// Energy density h u^2/2 + g h^2/2 + b h.
inline double eta(const State& s, double b, Gravity g) {
  detail::require_depth(s);
  return s.h * s.u * s.u / 2.0 + g.value() * s.h * s.h / 2.0 + b * s.h;
}

/// Energy flux g u h (h + b) + h u^3/2.
inline double flux_q(const State& s, double b, Gravity g) {
  detail::require_depth(s);
  return g.value() * s.u * s.h * (s.h + b) + s.h * s.u * s.u * s.u / 2.0;
}

inline EnergyPair energy(const State& s, double b, Gravity g) {
  return {eta(s, b, g), flux_q(s, b, g)};
}

/// u / sqrt(g h); undefined in vacuum.
inline double froude(const State& s, Gravity g) {
  if (!(s.h > 0.0)) {
    throw domain_error("froude number undefined for vacuum or negative depth");
  }
  return s.u / std::sqrt(g.value() * s.h);
}

}  // namespace damflow
