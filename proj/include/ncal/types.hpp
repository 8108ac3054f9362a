// ncal - augmented Lagrangian solver for nonconvex composite optimization
// Copyright 2026 ncal Contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace ncal {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Error codes shared between the C++ core and the C API.
enum class ErrorCode {
  invalid_argument,
  config,
  dimension,
  domain,
  prox_unbounded,
  max_inner_iterations,
  unbounded_below,
  unsupported,
  insufficient_history,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Extended real value: a finite double or an explicit +inf marker.
/// Infinity is never represented as an IEEE value inside arithmetic, so
/// comparisons against extended values of g and phi stay exact and no NaN
/// can leak out of +inf - +inf style expressions.
class ExtReal {
 public:
  ExtReal() : finite_(true), value_(0.0) {}
  ExtReal(double v) : finite_(true), value_(v) {}  // NOLINT(google-explicit-constructor)

  static ExtReal infinity() {
    ExtReal r;
    r.finite_ = false;
    r.value_ = 0.0;
    return r;
  }

  bool is_finite() const { return finite_; }

  /// Finite payload; calling this on +inf is a logic error.
  double value() const {
    if (!finite_) throw Error(ErrorCode::domain, "ExtReal: value() called on +inf");
    return value_;
  }

  ExtReal operator+(const ExtReal& o) const {
    if (!finite_ || !o.finite_) return infinity();
    return ExtReal(value_ + o.value_);
  }
  ExtReal operator+(double d) const { return *this + ExtReal(d); }

  friend ExtReal operator+(double d, const ExtReal& e) { return e + d; }

  bool operator<(const ExtReal& o) const {
    if (!finite_) return false;
    if (!o.finite_) return true;
    return value_ < o.value_;
  }
  bool operator<=(const ExtReal& o) const { return !(o < *this); }
  bool operator>=(const ExtReal& o) const { return o <= *this; }

  bool operator==(const ExtReal& o) const {
    if (finite_ != o.finite_) return false;
    return !finite_ || value_ == o.value_;
  }

 private:
  bool finite_;
  double value_;
};

/// Entry-point contract check: vectors carried across module boundaries hold
/// finite entries only.
inline void require_finite(const Vec& v, const char* name) {
  if (!v.allFinite())
    throw Error(ErrorCode::invalid_argument,
                std::string(name) + " contains a non-finite entry");
}

inline void require_length(const Vec& v, Eigen::Index len, const char* name) {
  if (v.size() != len)
    throw Error(ErrorCode::dimension,
                std::string(name) + " has length " + std::to_string(v.size()) +
                    ", expected " + std::to_string(len));
}

}  // namespace ncal
