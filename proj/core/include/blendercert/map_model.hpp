#pragma once

// The Henon-like family f(X, Y, Z) = (Y, mu + Y^2 + beta*X, xi*Z + Y):
// interval image, interval Jacobian, fixed points, and the minimal map
// interface the verifiers are written against.

#include <utility>

#include "blendercert/interval.hpp"

namespace bcert {

inline constexpr double kDefaultMu = -9.5;
inline constexpr double kDefaultBeta = 0.3;

struct HenonParams {
  Interval mu{kDefaultMu};
  Interval beta{kDefaultBeta};
  Interval xi;

  HenonParams(Interval mu_, Interval beta_, Interval xi_)
      : mu(mu_), beta(beta_), xi(xi_) {
    // The blender regime requires weak expansion: the whole xi range > 1.
    if (!(xi.lo > 1.0)) {
      throw IntervalError("HenonParams: xi must be strictly greater than 1");
    }
  }

  explicit HenonParams(Interval xi_)
      : HenonParams(Interval(kDefaultMu), Interval(kDefaultBeta), xi_) {}
};

// Map interface contract: box enclosure in, box/Jacobian enclosure out.
// Implementations must be inclusion-monotone in the input box.
class MapModel {
 public:
  virtual ~MapModel() = default;
  virtual IVector3 image(const IVector3& box) const = 0;
  virtual IMatrix3 jacobian(const IVector3& box) const = 0;
};

// Componentwise enclosure of f over the box.  Y^2 uses the sharp nonnegative
// interval square, not mul(Y, Y).
IVector3 henon_image(const HenonParams& p, const IVector3& z);

// Entrywise enclosure of Df over the box: rows (0,1,0), (beta,2Y,0), (0,1,xi).
IMatrix3 henon_jacobian(const HenonParams& p, const IVector3& z);

// Enclosures of the two fixed points p+ and p-:
//   rho+- = (1-beta)/2 +- sqrt((1-beta)^2 - 4 mu)/2,
//   p+-   = (rho, rho, rho/(1-xi)).
// Throws IntervalError when the discriminant enclosure is not positive.
std::pair<IVector3, IVector3> fixed_points(const HenonParams& p);

class HenonMap final : public MapModel {
 public:
  explicit HenonMap(HenonParams p) : p_(p) {}
  const HenonParams& params() const { return p_; }

  IVector3 image(const IVector3& box) const override { return henon_image(p_, box); }
  IMatrix3 jacobian(const IVector3& box) const override {
    return henon_jacobian(p_, box);
  }

 private:
  HenonParams p_;
};

}  // namespace bcert
