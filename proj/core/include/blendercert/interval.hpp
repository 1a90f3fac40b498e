#pragma once

// Validated interval arithmetic over binary64, with small fixed-dimension
// interval vectors/matrices and a verified 3x3 inverse.
//
// Every operation returns an enclosure: an interval guaranteed to contain the
// exact real result for all real inputs drawn from the operands.  Directed
// rounding is emulated portably by stepping endpoints one representable value
// outward after a nearest-rounded operation; the process rounding mode is
// never touched, so values are immutable and safe to use from any thread.
//
// Operations that are exact in binary64 (negation, multiplication by an exact
// 0 or +/-1 point, the zero lower bound of a square straddling 0) skip the
// outward step: no rounding occurred, so no widening is required.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace bcert {

// Raised by interval operations whose mathematical precondition fails
// (division by an interval containing zero, sqrt of a negative range, ...).
struct IntervalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by verified_inverse when the determinant enclosure contains zero.
struct SingularMatrixError : IntervalError {
  using IntervalError::IntervalError;
};

// One step toward -inf / +inf.  Used to make nearest-rounded results outward.
inline double prev_double(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_double(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

struct Interval {
  double lo;
  double hi;

  Interval() : lo(0.0), hi(0.0) {}
  Interval(double point) : lo(point), hi(point) { validate(); }  // NOLINT: implicit by design
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) { validate(); }

  bool is_point() const { return lo == hi; }

 private:
  void validate() const {
    // !(lo <= hi) also catches NaN endpoints.
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw IntervalError("invalid interval endpoints [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    }
  }
};

namespace detail {
inline bool is_zero_point(const Interval& a) { return a.lo == 0.0 && a.hi == 0.0; }
inline bool is_one_point(const Interval& a) { return a.lo == 1.0 && a.hi == 1.0; }
inline bool is_minus_one_point(const Interval& a) { return a.lo == -1.0 && a.hi == -1.0; }
}  // namespace detail

inline Interval neg(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval add(const Interval& a, const Interval& b) {
  if (detail::is_zero_point(a)) return b;
  if (detail::is_zero_point(b)) return a;
  return Interval(prev_double(a.lo + b.lo), next_double(a.hi + b.hi));
}

inline Interval sub(const Interval& a, const Interval& b) {
  if (detail::is_zero_point(b)) return a;
  if (detail::is_zero_point(a)) return neg(b);
  return Interval(prev_double(a.lo - b.hi), next_double(a.hi - b.lo));
}

inline Interval mul(const Interval& a, const Interval& b) {
  if (detail::is_zero_point(a) || detail::is_zero_point(b)) return Interval(0.0);
  if (detail::is_one_point(a)) return b;
  if (detail::is_one_point(b)) return a;
  if (detail::is_minus_one_point(a)) return neg(b);
  if (detail::is_minus_one_point(b)) return neg(a);
  const double c0 = a.lo * b.lo;
  const double c1 = a.lo * b.hi;
  const double c2 = a.hi * b.lo;
  const double c3 = a.hi * b.hi;
  const double lo = std::min(std::min(c0, c1), std::min(c2, c3));
  const double hi = std::max(std::max(c0, c1), std::max(c2, c3));
  return Interval(prev_double(lo), next_double(hi));
}

inline bool contains_zero(const Interval& a) { return a.lo <= 0.0 && 0.0 <= a.hi; }
inline bool contains(const Interval& a, double x) { return a.lo <= x && x <= a.hi; }

inline Interval div(const Interval& a, const Interval& b) {
  if (contains_zero(b)) {
    throw IntervalError("interval division by an interval containing zero");
  }
  if (detail::is_one_point(b)) return a;
  if (detail::is_zero_point(a)) return Interval(0.0);
  const double c0 = a.lo / b.lo;
  const double c1 = a.lo / b.hi;
  const double c2 = a.hi / b.lo;
  const double c3 = a.hi / b.hi;
  const double lo = std::min(std::min(c0, c1), std::min(c2, c3));
  const double hi = std::max(std::max(c0, c1), std::max(c2, c3));
  return Interval(prev_double(lo), next_double(hi));
}

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return mul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return div(a, b); }
inline Interval operator-(const Interval& a) { return neg(a); }

// Sharp nonnegative square: the exact range of {x^2 : x in a} rounded
// outward, never the spurious negative dip of mul(a, a) when 0 is interior.
// Point operands use the fma residue of the rounded product to decide whether
// any widening is needed at all, and on which side, so exactly representable
// squares (0, +/-1, small integers, powers of two) stay sharp.
inline Interval square(const Interval& a) {
  if (a.is_point()) {
    const double r = a.lo * a.lo;
    if (std::isfinite(r)) {
      const double err = std::fma(a.lo, a.lo, -r);
      // The residue is the exact rounding error only when the product did not
      // underflow; leave the subnormal range to the generic two-sided path.
      const bool residue_exact =
          r == 0.0 ? a.lo == 0.0
                   : std::abs(r) >= std::numeric_limits<double>::min();
      if (residue_exact) {
        if (err == 0.0) return Interval(r, r);
        return err > 0.0 ? Interval(r, next_double(r))
                         : Interval(prev_double(r), r);
      }
    }
  }
  const double alo = std::abs(a.lo);
  const double ahi = std::abs(a.hi);
  const double big = std::max(alo, ahi);
  if (contains_zero(a)) {
    return Interval(0.0, next_double(big * big));
  }
  const double small = std::min(alo, ahi);
  return Interval(std::max(0.0, prev_double(small * small)), next_double(big * big));
}

// Enclosure of {sqrt(x) : x in a}; requires a.lo >= 0.
inline Interval sqrt(const Interval& a) {
  if (a.lo < 0.0) throw IntervalError("interval sqrt of a partially negative range");
  const double lo = a.lo == 0.0 ? 0.0 : std::max(0.0, prev_double(std::sqrt(a.lo)));
  return Interval(lo, next_double(std::sqrt(a.hi)));
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

// Distinguished empty result: disjoint operands yield std::nullopt.
inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

// a is a subset of b (closed containment).
inline bool subset(const Interval& a, const Interval& b) {
  return b.lo <= a.lo && a.hi <= b.hi;
}

inline double midpoint(const Interval& a) {
  const double m = 0.5 * (a.lo + a.hi);
  // Guard against overflow of lo+hi for huge symmetric ranges.
  return std::isfinite(m) ? m : a.lo + 0.5 * (a.hi - a.lo);
}

inline double width(const Interval& a) { return a.hi - a.lo; }

// Magnitude: max |x| over the interval.
inline double mag(const Interval& a) { return std::max(std::abs(a.lo), std::abs(a.hi)); }

// Widen both endpoints outward by eps (eps >= 0), with a final outward step.
inline Interval inflate(const Interval& a, double eps) {
  if (!(eps >= 0.0)) throw IntervalError("inflate requires a nonnegative eps");
  if (eps == 0.0) return a;
  return Interval(prev_double(a.lo - eps), next_double(a.hi + eps));
}

// One representable step outward on both sides.
inline Interval inflate_ulp(const Interval& a) {
  return Interval(prev_double(a.lo), next_double(a.hi));
}

// ---------------------------------------------------------------------------
// Fixed-dimension vectors and matrices (all pipelines are 3-dimensional).

using IVector3 = std::array<Interval, 3>;
using IMatrix3 = std::array<std::array<Interval, 3>, 3>;
using Matrix3 = std::array<std::array<double, 3>, 3>;  // point matrix
using Vector3 = std::array<double, 3>;                 // point vector

inline IVector3 point_vector(const Vector3& v) {
  return IVector3{Interval(v[0]), Interval(v[1]), Interval(v[2])};
}

IMatrix3 to_interval(const Matrix3& m);

IVector3 add(const IVector3& a, const IVector3& b);
IVector3 sub(const IVector3& a, const IVector3& b);
inline IVector3 operator+(const IVector3& a, const IVector3& b) { return add(a, b); }
inline IVector3 operator-(const IVector3& a, const IVector3& b) { return sub(a, b); }

// Enclosure of {M v : M in the matrix enclosure, v in the vector enclosure}.
IVector3 mat_vec(const IMatrix3& m, const IVector3& v);
IVector3 mat_vec(const Matrix3& m, const IVector3& v);

IMatrix3 mat_mul(const IMatrix3& a, const IMatrix3& b);
IMatrix3 transpose(const IMatrix3& a);

// Determinant enclosure by cofactor expansion.
Interval det(const IMatrix3& a);

// Enclosure of the exact inverse of a nonsingular point matrix, computed by
// the closed-form adjugate over the determinant enclosure.  Throws
// SingularMatrixError when the determinant enclosure contains 0.
IMatrix3 verified_inverse(const Matrix3& a);

// True when mat_mul(to_interval(a), inv) contains the identity entrywise;
// used as the residual oracle for verified_inverse.
bool encloses_identity(const IMatrix3& m);

}  // namespace bcert
