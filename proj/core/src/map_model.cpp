#include "blendercert/map_model.hpp"

namespace bcert {

IVector3 henon_image(const HenonParams& p, const IVector3& z) {
  const Interval& x = z[0];
  const Interval& y = z[1];
  const Interval& w = z[2];
  return IVector3{
      y,
      add(add(p.mu, square(y)), mul(p.beta, x)),
      add(mul(p.xi, w), y),
  };
}

IMatrix3 henon_jacobian(const HenonParams& p, const IVector3& z) {
  const Interval two_y = mul(Interval(2.0), z[1]);
  return IMatrix3{{
      {Interval(0.0), Interval(1.0), Interval(0.0)},
      {p.beta, two_y, Interval(0.0)},
      {Interval(0.0), Interval(1.0), p.xi},
  }};
}

std::pair<IVector3, IVector3> fixed_points(const HenonParams& p) {
  const Interval one_minus_beta = sub(Interval(1.0), p.beta);
  const Interval disc = sub(square(one_minus_beta), mul(Interval(4.0), p.mu));
  if (!(disc.lo > 0.0)) {
    throw IntervalError("fixed_points: discriminant (1-beta)^2 - 4 mu is not positive");
  }
  const Interval half = Interval(0.5);
  const Interval root = sqrt(disc);
  const Interval rho_plus = mul(half, add(one_minus_beta, root));
  const Interval rho_minus = mul(half, sub(one_minus_beta, root));
  const Interval one_minus_xi = sub(Interval(1.0), p.xi);  // xi > 1, so 0 is excluded
  auto point = [&](const Interval& rho) {
    return IVector3{rho, rho, div(rho, one_minus_xi)};
  };
  return {point(rho_plus), point(rho_minus)};
}

}  // namespace bcert
