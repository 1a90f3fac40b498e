#include "blendercert/interval.hpp"

namespace bcert {

IMatrix3 to_interval(const Matrix3& m) {
  IMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[r][c] = Interval(m[r][c]);
  return out;
}

IVector3 add(const IVector3& a, const IVector3& b) {
  return IVector3{add(a[0], b[0]), add(a[1], b[1]), add(a[2], b[2])};
}

IVector3 sub(const IVector3& a, const IVector3& b) {
  return IVector3{sub(a[0], b[0]), sub(a[1], b[1]), sub(a[2], b[2])};
}

IVector3 mat_vec(const IMatrix3& m, const IVector3& v) {
  IVector3 out;
  for (int r = 0; r < 3; ++r) {
    out[r] = add(add(mul(m[r][0], v[0]), mul(m[r][1], v[1])), mul(m[r][2], v[2]));
  }
  return out;
}

IVector3 mat_vec(const Matrix3& m, const IVector3& v) {
  IVector3 out;
  for (int r = 0; r < 3; ++r) {
    out[r] = add(add(mul(Interval(m[r][0]), v[0]), mul(Interval(m[r][1]), v[1])),
                 mul(Interval(m[r][2]), v[2]));
  }
  return out;
}

IMatrix3 mat_mul(const IMatrix3& a, const IMatrix3& b) {
  IMatrix3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out[r][c] =
          add(add(mul(a[r][0], b[0][c]), mul(a[r][1], b[1][c])), mul(a[r][2], b[2][c]));
    }
  }
  return out;
}

IMatrix3 transpose(const IMatrix3& a) {
  IMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[r][c] = a[c][r];
  return out;
}

namespace {
inline Interval det2(const Interval& a, const Interval& b, const Interval& c,
                     const Interval& d) {
  // | a b ; c d |
  return sub(mul(a, d), mul(b, c));
}
}  // namespace

Interval det(const IMatrix3& m) {
  const Interval c0 = det2(m[1][1], m[1][2], m[2][1], m[2][2]);
  const Interval c1 = det2(m[1][0], m[1][2], m[2][0], m[2][2]);
  const Interval c2 = det2(m[1][0], m[1][1], m[2][0], m[2][1]);
  return add(sub(mul(m[0][0], c0), mul(m[0][1], c1)), mul(m[0][2], c2));
}

IMatrix3 verified_inverse(const Matrix3& a) {
  const IMatrix3 m = to_interval(a);
  const Interval d = det(m);
  if (contains_zero(d)) {
    throw SingularMatrixError("verified_inverse: determinant contains 0");
  }
  // inv[i][j] = cofactor(j, i) / det  (adjugate transposed indexing).
  IMatrix3 inv;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      // Cyclic index choice folds the (-1)^{i+j} sign into the 2x2 layout.
      inv[i][j] = div(det2(m[r0][c0], m[r0][c1], m[r1][c0], m[r1][c1]), d);
    }
  }
  return inv;
}

bool encloses_identity(const IMatrix3& m) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double want = r == c ? 1.0 : 0.0;
      if (!contains(m[r][c], want)) return false;
    }
  }
  return true;
}

}  // namespace bcert
