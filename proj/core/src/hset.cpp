#include "blendercert/hset.hpp"

namespace bcert {

Chart Chart::make(const Matrix3& A, const IVector3& p) {
  Chart c;
  c.A = A;
  c.A_inv = verified_inverse(A);
  c.p = p;
  return c;
}

IVector3 to_global(const HSet& h, const IVector3& u) {
  return add(mat_vec(h.chart.A, u), h.chart.p);
}

IVector3 to_local(const HSet& h, const IVector3& z) {
  return mat_vec(h.chart.A_inv, sub(z, h.chart.p));
}

std::vector<Face> exit_faces(const HSet& h) {
  std::vector<Face> faces;
  faces.reserve(2 * h.exit_dims.size());
  for (int d : h.exit_dims) {
    Face lo{h.local_box, d, -1};
    lo.box[d] = Interval(h.local_box[d].lo);
    faces.push_back(lo);
    Face hi{h.local_box, d, +1};
    hi.box[d] = Interval(h.local_box[d].hi);
    faces.push_back(hi);
  }
  return faces;
}

IVector3 midpoint_box(const IVector3& u) {
  return IVector3{Interval(midpoint(u[0])), Interval(midpoint(u[1])),
                  Interval(midpoint(u[2]))};
}

IVector3 intersect_boxes(const IVector3& a, const IVector3& b) {
  IVector3 out;
  for (int d = 0; d < 3; ++d) {
    auto isect = intersect(a[d], b[d]);
    if (!isect) {
      throw IntervalError("intersect_boxes: disjoint enclosures of the same set");
    }
    out[d] = *isect;
  }
  return out;
}

namespace {

// Mean-value form around the box midpoint: f(mid) + [Df(u)] (u - mid).
// Valid for any C^1 map; evaluated with whatever image/jacobian enclosures
// the evaluator provides for the point box and the full box.
template <typename ImageFn, typename JacobianFn>
IVector3 mean_value_image(const IVector3& u, ImageFn&& img, JacobianFn&& jac) {
  const IVector3 mid = midpoint_box(u);
  const IVector3 at_mid = img(mid);
  const IMatrix3 j = jac(u);
  return add(at_mid, mat_vec(j, sub(u, mid)));
}

}  // namespace

IVector3 ComposedTransition::image(const IVector3& u) const {
  auto direct = [&](const IVector3& box) {
    return to_local(dst_, m_.image(to_global(src_, box)));
  };
  const IVector3 naive = direct(u);
  const IVector3 mv = mean_value_image(
      u, direct, [&](const IVector3& box) { return jacobian(box); });
  return intersect_boxes(naive, mv);
}

IMatrix3 ComposedTransition::jacobian(const IVector3& u) const {
  const IVector3 global_box = to_global(src_, u);
  const IMatrix3 df = m_.jacobian(global_box);
  return mat_mul(dst_.chart.A_inv, mat_mul(df, to_interval(src_.chart.A)));
}

HenonTransition::HenonTransition(const HenonParams& p, const HSet& src,
                                 const HSet& dst, const Interval& delta_z)
    : p_(p),
      A_(src.chart.A),
      R_(dst.chart.A_inv),
      src_px_(src.chart.p[0]),
      src_py_(src.chart.p[1]) {
  // delta = f(p_src) - p_dst.  The X and Y components only involve the XY
  // anchor constants, which are point (or near-point) intervals; the Z
  // component is taken from the caller so the wide center-Z enclosures never
  // meet the image computation.
  const Interval f_px = src_py_;  // pi_X f(p) = pi_Y p
  const Interval f_py = add(add(p_.mu, square(src_py_)), mul(p_.beta, src_px_));
  delta_ = IVector3{sub(f_px, dst.chart.p[0]), sub(f_py, dst.chart.p[1]), delta_z};
}

IVector3 HenonTransition::offset_map(const IVector3& t) const {
  // F(u) = f(p + t) - f(p) with t = A u:
  //   F_X = t_Y
  //   F_Y = (t_Y + p_Y)^2 - p_Y^2 + beta t_X   (sharp square form)
  //   F_Z = xi t_Z + t_Y
  const Interval fy =
      add(sub(square(add(t[1], src_py_)), square(src_py_)), mul(p_.beta, t[0]));
  return IVector3{t[1], fy, add(mul(p_.xi, t[2]), t[1])};
}

IVector3 HenonTransition::image(const IVector3& u) const {
  auto direct = [&](const IVector3& box) {
    const IVector3 t = mat_vec(A_, box);
    return mat_vec(R_, add(offset_map(t), delta_));
  };
  const IVector3 naive = direct(u);
  const IVector3 mv = mean_value_image(
      u, direct, [&](const IVector3& box) { return jacobian(box); });
  return intersect_boxes(naive, mv);
}

IMatrix3 HenonTransition::jacobian(const IVector3& u) const {
  // Df only reads the global Y coordinate, which is p_Y + (A u)_Y.
  const IVector3 t = mat_vec(A_, u);
  const Interval global_y = add(src_py_, t[1]);
  const IMatrix3 df =
      henon_jacobian(p_, IVector3{Interval(0.0), global_y, Interval(0.0)});
  return mat_mul(R_, mat_mul(df, to_interval(A_)));
}

IVector3 transition_image(const MapModel& m, const HSet& src, const HSet& dst,
                          const IVector3& u) {
  return ComposedTransition(m, src, dst).image(u);
}

IMatrix3 transition_jacobian(const MapModel& m, const HSet& src, const HSet& dst,
                             const IVector3& u) {
  return ComposedTransition(m, src, dst).jacobian(u);
}

}  // namespace bcert
