#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>

#include "polyq/errors.hpp"

namespace polyq {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

enum class FieldKind { rational, quadratic, floating };

/// Field a problem instance lives over: Q, Q(sqrt(D)), or doubles with a
/// comparison tolerance.
struct FieldDesc {
  FieldKind kind = FieldKind::rational;
  long long d = 0;      // the D of Q(sqrt(D)), squarefree >= 2
  double tol = 1e-9;    // float-mode comparison tolerance

  bool exact() const { return kind != FieldKind::floating; }
};

namespace detail {

inline bool is_squarefree(long long d) {
  for (long long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

inline int sgn(const Rational& r) { return r.sign(); }

/// Parse "p" or "p/q" into a canonical rational. Throws ValidationError.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&]() -> ValidationError {
    return {"malformed_scalar", "malformed scalar '" + text + "'"};
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const std::string num_s = text.substr(0, slash == std::string::npos ? text.size() : slash);
  const std::string den_s = slash == std::string::npos ? "1" : text.substr(slash + 1);
  const auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!is_int(num_s) || !is_int(den_s)) throw bad();
  BigInt num(num_s), den(den_s);
  if (den == 0) throw bad();
  return Rational(num, den);  // ctor canonicalizes
}

}  // namespace detail

/// Validate the D of Q(sqrt(D)). Rejects anything that would collapse the
/// extension or encode a richer field.
inline void validate_quadratic_d(long long d) {
  if (d < 2 || !detail::is_squarefree(d))
    throw ValidationError("bad_input",
                          "quadratic field requires squarefree D >= 2, got " + std::to_string(d));
}

class Scalar;
inline Scalar field_scalar(const FieldDesc& f, long long v);

/**
 * Exact scalar over Q or Q(sqrt(D)), with an explicit float mode for the
 * sampling layer.
 *
 * Exact values are immutable pairs (a, b) meaning a + b*sqrt(D); arithmetic,
 * equality and sign are decided exactly. Float-mode values compare with the
 * field tolerance. Exact and float values never mix implicitly: floats enter
 * only through to_float().
 */
class Scalar {
 public:
  Scalar() : kind_(FieldKind::rational), a_(0), b_(0) {}
  Scalar(long long v) : kind_(FieldKind::rational), a_(v), b_(0) {}
  Scalar(const Rational& a) : kind_(FieldKind::rational), a_(a), b_(0) {}

  static Scalar quadratic(const Rational& a, const Rational& b, long long d) {
    validate_quadratic_d(d);
    Scalar s;
    s.kind_ = FieldKind::quadratic;
    s.a_ = a;
    s.b_ = b;
    s.d_ = d;
    return s;
  }

  /// sqrt(D) itself.
  static Scalar sqrt_d(long long d) { return quadratic(0, 1, d); }

  static Scalar floating(double v, double tol) {
    Scalar s;
    s.kind_ = FieldKind::floating;
    s.f_ = v;
    s.tol_ = tol;
    return s;
  }

  FieldKind kind() const { return kind_; }
  bool is_exact() const { return kind_ != FieldKind::floating; }
  long long quad_d() const { return d_; }
  double float_tol() const { return tol_; }
  const Rational& rat_part() const { return a_; }
  const Rational& irr_part() const { return b_; }
  double float_value() const { return f_; }

  /// Degree of the minimal polynomial over Q: 0 for zero, 2 when the sqrt(D)
  /// coefficient is nonzero, 1 otherwise. Drives pivot selection.
  int degree() const {
    if (sign() == 0) return 0;
    if (kind_ == FieldKind::quadratic && b_ != 0) return 2;
    return 1;
  }

  int sign() const {
    switch (kind_) {
      case FieldKind::rational:
        return detail::sgn(a_);
      case FieldKind::floating:
        return std::abs(f_) <= tol_ ? 0 : (f_ > 0 ? 1 : -1);
      case FieldKind::quadratic: {
        if (b_ == 0) return detail::sgn(a_);
        if (a_ == 0) return detail::sgn(b_);
        const int sa = detail::sgn(a_), sb = detail::sgn(b_);
        if (sa == sb) return sa;
        // opposite signs: compare a^2 against D b^2
        const Rational lhs = a_ * a_, rhs = Rational(d_) * b_ * b_;
        const int c = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
        return sa * c;
      }
    }
    return 0;
  }

  bool is_zero() const { return sign() == 0; }

  double to_float() const {
    switch (kind_) {
      case FieldKind::rational:
        return static_cast<double>(a_);
      case FieldKind::floating:
        return f_;
      case FieldKind::quadratic:
        return static_cast<double>(a_) +
               static_cast<double>(b_) * std::sqrt(static_cast<double>(d_));
    }
    return 0.0;
  }

  Scalar operator-() const {
    Scalar r = *this;
    if (kind_ == FieldKind::floating) {
      r.f_ = -f_;
    } else {
      r.a_ = -a_;
      r.b_ = -b_;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    auto [a, b] = promote(x, y);
    if (a.kind_ == FieldKind::floating) return floating(a.f_ + b.f_, a.tol_);
    Scalar r = a;
    r.a_ += b.a_;
    r.b_ += b.b_;
    return r;
  }

  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    auto [a, b] = promote(x, y);
    if (a.kind_ == FieldKind::floating) return floating(a.f_ * b.f_, a.tol_);
    Scalar r = a;
    if (a.kind_ == FieldKind::quadratic) {
      r.a_ = a.a_ * b.a_ + Rational(a.d_) * a.b_ * b.b_;
      r.b_ = a.a_ * b.b_ + a.b_ * b.a_;
    } else {
      r.a_ = a.a_ * b.a_;
    }
    return r;
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const {
    switch (kind_) {
      case FieldKind::floating:
        if (std::abs(f_) <= tol_) throw std::domain_error("division by zero");
        return floating(1.0 / f_, tol_);
      case FieldKind::rational:
        if (a_ == 0) throw std::domain_error("division by zero");
        return Scalar(Rational(1) / a_);
      case FieldKind::quadratic: {
        const Rational denom = a_ * a_ - Rational(d_) * b_ * b_;
        if (denom == 0) throw std::domain_error("division by zero");
        Scalar r = *this;
        r.a_ = a_ / denom;
        r.b_ = -b_ / denom;
        return r;
      }
    }
    throw std::domain_error("division by zero");
  }

  /// Exact three-way comparison in exact modes; tolerance comparison in
  /// float mode. Total order on exact scalars.
  int compare(const Scalar& o) const {
    auto [a, b] = promote(*this, o);
    if (a.kind_ == FieldKind::floating) {
      const double diff = a.f_ - b.f_;
      if (std::abs(diff) <= a.tol_) return 0;
      return diff > 0 ? 1 : -1;
    }
    return (a - b).sign();
  }

  friend bool operator==(const Scalar& x, const Scalar& y) { return x.compare(y) == 0; }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return x.compare(y) != 0; }
  friend bool operator<(const Scalar& x, const Scalar& y) { return x.compare(y) < 0; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return x.compare(y) <= 0; }
  friend bool operator>(const Scalar& x, const Scalar& y) { return x.compare(y) > 0; }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return x.compare(y) >= 0; }

  /// Human-readable form: "p/q", or "p/q+r/s*sqrt(D)".
  std::string str() const {
    switch (kind_) {
      case FieldKind::floating:
        return std::to_string(f_);
      case FieldKind::rational:
        return a_.str();
      case FieldKind::quadratic: {
        if (b_ == 0) return a_.str();
        std::string s;
        if (a_ != 0) s = a_.str();
        if (b_ > 0 && a_ != 0) s += "+";
        if (b_ == -1)
          s += "-";
        else if (b_ != 1)
          s += b_.str() + "*";
        s += "sqrt(" + std::to_string(d_) + ")";
        return s;
      }
    }
    return {};
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  /// Bring two scalars into a common field. Rational embeds into Q(sqrt(D));
  /// float never mixes with exact.
  static std::pair<Scalar, Scalar> promote(Scalar x, Scalar y) {
    if (x.kind_ == y.kind_) {
      if (x.kind_ == FieldKind::quadratic && x.d_ != y.d_)
        throw ValidationError("bad_input", "scalars from different quadratic fields");
      if (x.kind_ == FieldKind::floating) {
        const double t = std::max(x.tol_, y.tol_);
        x.tol_ = y.tol_ = t;
      }
      return {x, y};
    }
    if (x.kind_ == FieldKind::floating || y.kind_ == FieldKind::floating)
      throw ValidationError("bad_input", "mixed float/exact arithmetic");
    // one rational, one quadratic: embed the rational
    if (x.kind_ == FieldKind::rational) {
      x.kind_ = FieldKind::quadratic;
      x.d_ = y.d_;
    } else {
      y.kind_ = FieldKind::quadratic;
      y.d_ = x.d_;
    }
    return {x, y};
  }

  FieldKind kind_;
  long long d_ = 0;
  double tol_ = 0.0;
  Rational a_, b_;
  double f_ = 0.0;
};

/// An integer constant carried in the given field (exact and float modes
/// never mix, so generic code needs mode-correct constants).
inline Scalar field_scalar(const FieldDesc& f, long long v) {
  switch (f.kind) {
    case FieldKind::rational:
      return Scalar(v);
    case FieldKind::quadratic:
      return Scalar::quadratic(v, 0, f.d);
    case FieldKind::floating:
      return Scalar::floating(static_cast<double>(v), f.tol);
  }
  return Scalar(v);
}

}  // namespace polyq
