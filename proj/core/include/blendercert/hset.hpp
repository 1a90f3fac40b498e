#pragma once

// H-sets: affine charts, local boxes with designated exit dimensions, and the
// local transition map f_ji = gamma_j o f o gamma_i^{-1} together with its
// interval Jacobian.
//
// Local boxes are stored in natural (unnormalized) units; every verifier
// inequality is phrased against the stored bounds, so the homeomorphism to
// unit exit/entry balls is implicit and never materialized.

#include <string>
#include <vector>

#include "blendercert/interval.hpp"
#include "blendercert/map_model.hpp"

namespace bcert {

// Affine chart z = A u + p with a verified enclosure of A^{-1}.
struct Chart {
  Matrix3 A{};     // point column frame
  IMatrix3 A_inv;  // verified enclosure of A^{-1}
  IVector3 p;      // center (Z-component may be a genuine interval)

  // Computes the verified inverse; throws SingularMatrixError if A is
  // numerically singular.
  static Chart make(const Matrix3& A, const IVector3& p);
};

struct HSet {
  Chart chart;
  IVector3 local_box;
  std::vector<int> exit_dims;  // ordered, distinct indices ("x" coordinates)
  std::string label;

  int dx() const { return static_cast<int>(exit_dims.size()); }
  bool is_exit_dim(int d) const {
    for (int e : exit_dims)
      if (e == d) return true;
    return false;
  }
};

// Cone half-widths kappa_u, kappa_s attached to an h-set; both positive.
struct ConeSpec {
  double kappa_u;
  double kappa_s;

  ConeSpec(double ku, double ks) : kappa_u(ku), kappa_s(ks) {
    if (!(ku > 0.0) || !(ks > 0.0)) {
      throw IntervalError("ConeSpec: cone constants must be strictly positive");
    }
  }
};

// One face of the local box: the box with `dim` pinned to one endpoint.
struct Face {
  IVector3 box;
  int dim;
  int side;  // -1 = lower endpoint, +1 = upper endpoint
};

// gamma^{-1}(u) = A u + p.
IVector3 to_global(const HSet& h, const IVector3& u);

// gamma(z) = A^{-1} (z - p), using the verified inverse enclosure.
IVector3 to_local(const HSet& h, const IVector3& z);

// 2 * d_x faces: each exit dimension pinned to its lower/upper endpoint.
std::vector<Face> exit_faces(const HSet& h);

// ---------------------------------------------------------------------------
// Transition evaluation.
//
// The verifiers only need an enclosure of f_ji and of [Df_ji] over local
// boxes, so they are written against this small interface.  Two evaluators
// are provided:
//
//  * ComposedTransition: the generic chart-map-chart composition for any
//    MapModel.  Its image is the intersection of the direct composition with
//    a mean-value form (first-order enclosure around the box midpoint), which
//    removes most of the dependency blow-up of naive composition.
//
//  * HenonTransition: a cancellation-free evaluation specialized to the Henon
//    family.  The global center offsets are decomposed algebraically so the
//    (possibly very wide) Z-components of the chart centers never enter the
//    computation; the Z offset between f(p_src) and p_dst is supplied by the
//    caller as an exact or tightly-enclosed interval.  Required in the sweep:
//    the centers' Z enclosures grow to width ~10 at the low end of the xi
//    range, which naive composition would transfer onto every image.

class TransitionEvaluator {
 public:
  virtual ~TransitionEvaluator() = default;
  // Enclosure of f_ji(u) for a local box (or face) u of the source set.
  virtual IVector3 image(const IVector3& u) const = 0;
  // Entrywise enclosure of Df_ji over u.
  virtual IMatrix3 jacobian(const IVector3& u) const = 0;
};

class ComposedTransition final : public TransitionEvaluator {
 public:
  ComposedTransition(const MapModel& m, const HSet& src, const HSet& dst)
      : m_(m), src_(src), dst_(dst) {}

  IVector3 image(const IVector3& u) const override;
  IMatrix3 jacobian(const IVector3& u) const override;

 private:
  const MapModel& m_;
  const HSet& src_;
  const HSet& dst_;
};

class HenonTransition final : public TransitionEvaluator {
 public:
  // delta_z must enclose pi_Z(f(p_src)) - pi_Z(p_dst).  For centers linked by
  // the Z-recursion this is exactly [0, 0]; for loop-closing transitions it
  // is the drift enclosure produced by the z_M solver.
  HenonTransition(const HenonParams& p, const HSet& src, const HSet& dst,
                  const Interval& delta_z);

  IVector3 image(const IVector3& u) const override;
  IMatrix3 jacobian(const IVector3& u) const override;

 private:
  // F(u) = f(p_src + A u) - f(p_src), which is free of the center's Z.
  IVector3 offset_map(const IVector3& t) const;

  HenonParams p_;
  Matrix3 A_;       // source frame
  IMatrix3 R_;      // destination inverse enclosure
  Interval src_px_, src_py_;
  IVector3 delta_;  // f(p_src) - p_dst, with the Z part supplied by the caller
};

// Enclosure of f_ji(u) = to_local(dst, m.image(to_global(src, u))),
// tightened by intersection with the mean-value form.
IVector3 transition_image(const MapModel& m, const HSet& src, const HSet& dst,
                          const IVector3& u);

// Entrywise enclosure of [Df_ji(u)] = A_dst^{-1} [Df(global box)] A_src.
IMatrix3 transition_jacobian(const MapModel& m, const HSet& src, const HSet& dst,
                             const IVector3& u);

// Midpoint box (a point vector of component midpoints).
IVector3 midpoint_box(const IVector3& u);

// Componentwise intersection; throws IntervalError if any component pair is
// disjoint (two valid enclosures of the same set always intersect).
IVector3 intersect_boxes(const IVector3& a, const IVector3& b);

}  // namespace bcert
