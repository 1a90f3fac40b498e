#include "blendercert/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bcert {

namespace {

Matrix3 mat3(double a00, double a01, double a02, double a10, double a11,
             double a12, double a20, double a21, double a22) {
  return Matrix3{{{a00, a01, a02}, {a10, a11, a12}, {a20, a21, a22}}};
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials with interval coefficients (lowest degree
// first) and rational functions of xi.  The z_M solver needs enclosures of
// z_M, d1, d2 over xi blocks that stay close to the true variation: naive
// evaluation of (xi^5 - 1) z_M + c1 over a width-1e-3 block loses ~0.5 of
// absolute width near xi = 1.01, which would consume the covering margins.

using IPoly = std::vector<Interval>;

IPoly poly_add(const IPoly& a, const IPoly& b) {
  IPoly out(std::max(a.size(), b.size()), Interval(0.0));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = add(out[k], a[k]);
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = add(out[k], b[k]);
  return out;
}

IPoly poly_mul(const IPoly& a, const IPoly& b) {
  IPoly out(a.size() + b.size() - 1, Interval(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = add(out[i + j], mul(a[i], b[j]));
    }
  }
  return out;
}

IPoly poly_derivative(const IPoly& a) {
  if (a.size() <= 1) return IPoly{Interval(0.0)};
  IPoly out(a.size() - 1, Interval(0.0));
  for (std::size_t k = 1; k < a.size(); ++k) {
    out[k - 1] = mul(Interval(static_cast<double>(k)), a[k]);
  }
  return out;
}

Interval poly_eval(const IPoly& p, const Interval& x) {
  Interval acc(0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = add(mul(acc, x), *it);
  return acc;
}

// f = num/den with the first two derivative polynomials precomputed.  The
// derivative values are assembled from polynomial evaluations combined with
// interval quotients of the *evaluated* denominator -- never from expanded
// denominator powers, whose Horner dependency error near xi = 1 (where
// Q(xi) -> 0) would make the enclosure of Q^2 straddle zero.
struct RationalFn {
  IPoly num, den;
  IPoly dnum, dden;
  IPoly ddnum, ddden;

  RationalFn(IPoly n, IPoly d) : num(std::move(n)), den(std::move(d)) {
    dnum = poly_derivative(num);
    dden = poly_derivative(den);
    ddnum = poly_derivative(dnum);
    ddden = poly_derivative(dden);
  }
};

Interval eval_den(const RationalFn& f, const Interval& x) {
  const Interval q = poly_eval(f.den, x);
  if (contains_zero(q)) {
    throw IntervalError("solve_zM: denominator enclosure contains zero");
  }
  return q;
}

Interval rational_value(const RationalFn& f, const Interval& x) {
  return div(poly_eval(f.num, x), eval_den(f, x));
}

// f' = (N'Q - NQ') / Q^2.
Interval rational_d1(const RationalFn& f, const Interval& x) {
  const Interval q = eval_den(f, x);
  const Interval u = sub(mul(poly_eval(f.dnum, x), q),
                         mul(poly_eval(f.num, x), poly_eval(f.dden, x)));
  return div(u, square(q));
}

// f'' = ((N''Q - NQ'')Q - 2Q'(N'Q - NQ')) / Q^3.
Interval rational_d2(const RationalFn& f, const Interval& x) {
  const Interval q = eval_den(f, x);
  const Interval n = poly_eval(f.num, x);
  const Interval dq = poly_eval(f.dden, x);
  const Interval u = sub(mul(poly_eval(f.dnum, x), q), mul(n, dq));
  const Interval t = sub(mul(poly_eval(f.ddnum, x), q),
                         mul(n, poly_eval(f.ddden, x)));
  const Interval top = sub(mul(t, q), mul(mul(Interval(2.0), dq), u));
  return div(top, mul(square(q), q));
}

Interval tighten(const Interval& a, const Interval& b) {
  const auto isect = intersect(a, b);
  if (!isect) {
    throw IntervalError("solve_zM: disjoint enclosures of the same value");
  }
  return *isect;
}

// Intersection of the direct evaluation with a mean-value form and a
// second-order Taylor form about the block midpoint; the Taylor form's
// derivative is evaluated at the point midpoint, so only the second-order
// remainder sees the block width squared.
Interval rational_eval_tight(const RationalFn& f, const Interval& x) {
  Interval out = rational_value(f, x);
  if (x.is_point()) return out;
  const Interval m(midpoint(x));
  const Interval dx = sub(x, m);
  const Interval at_m = rational_value(f, m);
  const Interval mv = add(at_m, mul(rational_d1(f, x), dx));
  const Interval taylor2 =
      add(at_m, add(mul(rational_d1(f, m), dx),
                    mul(mul(Interval(0.5), rational_d2(f, x)), square(dx))));
  out = tighten(out, mv);
  out = tighten(out, taylor2);
  return out;
}

// c_a(x): Horner accumulation of the branch anchor Y values, so
// c_a = yM x^{n-1} + y_{a1} x^{n-2} + ... + y_{a,n-1}  (lowest degree first).
IPoly branch_poly(double y_mother, const double* ys, std::size_t n) {
  IPoly out(n + 1, Interval(0.0));
  out[n] = Interval(y_mother);
  for (std::size_t k = 0; k < n; ++k) out[n - 1 - k] = Interval(ys[k]);
  return out;
}

double signed_gap_from_zero(const Interval& a) {
  if (a.lo > 0.0) return a.lo;
  if (a.hi < 0.0) return -a.hi;
  return -std::min(a.hi, -a.lo);
}

std::string tile_label(int branch, int step, int tile) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "N_%d%dc%02d", branch, step, tile);
  return buf;
}

// Per-block charts: fixed frames with anchor heights from the Z-recursion.
struct BlockGeometry {
  ZMResult zm;
  CenterData centers;
  Chart chart_M;
  std::array<Chart, 4> chart_1;
  std::array<Chart, 3> chart_2;
};

CenterData centers_from(const HenonParams& params, const ConstructionData& data,
                        const ZMResult& zm) {
  CenterData c;
  c.z_M = zm.z_M;
  Interval z = zm.z_M;
  double y_prev = data.anchor_M[1];
  for (std::size_t k = 0; k < c.z_1.size(); ++k) {
    z = add(mul(params.xi, z), Interval(y_prev));
    c.z_1[k] = z;
    y_prev = data.anchors_1[k][1];
  }
  z = zm.z_M;
  y_prev = data.anchor_M[1];
  for (std::size_t k = 0; k < c.z_2.size(); ++k) {
    z = add(mul(params.xi, z), Interval(y_prev));
    c.z_2[k] = z;
    y_prev = data.anchors_2[k][1];
  }
  return c;
}

BlockGeometry build_geometry(const HenonParams& params,
                             const ConstructionData& data) {
  BlockGeometry g;
  g.zm = solve_zM(params, data);
  g.centers = centers_from(params, data, g.zm);
  g.chart_M = Chart::make(
      data.chart_M, IVector3{Interval(data.anchor_M[0]), Interval(data.anchor_M[1]),
                             g.centers.z_M});
  for (std::size_t k = 0; k < g.chart_1.size(); ++k) {
    g.chart_1[k] = Chart::make(
        data.charts_1[k], IVector3{Interval(data.anchors_1[k][0]),
                                   Interval(data.anchors_1[k][1]), g.centers.z_1[k]});
  }
  for (std::size_t k = 0; k < g.chart_2.size(); ++k) {
    g.chart_2[k] = Chart::make(
        data.charts_2[k], IVector3{Interval(data.anchors_2[k][0]),
                                   Interval(data.anchors_2[k][1]), g.centers.z_2[k]});
  }
  return g;
}

HSet mother_from(const BlockGeometry& g, const ConstructionData& data) {
  return HSet{g.chart_M, data.mother_box, {0}, "M"};
}

std::vector<HSet> ladder_from(const BlockGeometry& g, const ConstructionData& data) {
  std::vector<HSet> out;
  out.reserve(2 * static_cast<std::size_t>(data.tiles_per_branch));
  const Interval half(-data.tile_half_width, data.tile_half_width);
  for (int branch : {1, 2}) {
    for (int tile = 0; tile < data.tiles_per_branch; ++tile) {
      Interval seed = mul(Interval(static_cast<double>(tile)),
                          Interval(data.tile_half_width));
      if (branch == 2) seed = neg(seed);
      HSet h{g.chart_M,
             IVector3{data.mother_box[0], add(seed, half), data.mother_box[2]},
             {0},
             tile_label(branch, 0, tile)};
      out.push_back(std::move(h));
    }
  }
  return out;
}

int branch_steps(int branch) { return branch == 1 ? 4 : 3; }

std::vector<Chain> chains_from(const HenonParams& params, const BlockGeometry& g,
                               const ConstructionData& data) {
  const std::vector<HSet> ladder = ladder_from(g, data);
  std::vector<Chain> out;
  out.reserve(ladder.size());
  for (std::size_t idx = 0; idx < ladder.size(); ++idx) {
    const int branch = idx < static_cast<std::size_t>(data.tiles_per_branch) ? 1 : 2;
    const int tile = static_cast<int>(idx) % data.tiles_per_branch;
    Chain ch{branch, tile, {ladder[idx]}};
    for (int b = 1; b <= branch_steps(branch); ++b) {
      const HSet& src = ch.sets.back();
      const Chart& chart =
          branch == 1 ? g.chart_1[static_cast<std::size_t>(b - 1)]
                      : g.chart_2[static_cast<std::size_t>(b - 1)];
      HSet dst{chart,
               IVector3{data.mother_box[0], Interval(0.0), data.mother_box[2]},
               {0},
               tile_label(branch, b, tile)};
      // Intermediate links have Z-offset exactly [0, 0] by the Z-recursion.
      const HenonTransition t(params, src, dst, Interval(0.0));
      const Interval hull = t.image(src.local_box)[1];
      dst.local_box[1] = inflate_ulp(
          inflate(hull, data.propagation_inflation * width(hull)));
      ch.sets.push_back(std::move(dst));
    }
    out.push_back(std::move(ch));
  }
  return out;
}

// 1.01 * m rounded upward; clamped away from zero so it remains a valid cone
// constant even in the degenerate all-zero-ratio case.
double grow_cone_constant(double m) {
  const double g = mul(Interval(1.01), Interval(m)).hi;
  return g > 0.0 ? g : std::numeric_limits<double>::min();
}

}  // namespace

ConstructionData ConstructionData::embedded() {
  ConstructionData d;
  d.chart_M = mat3(0.131936, 0.0, -0.998261,   //
                   0.984126, 0.0, 0.0447916,   //
                   0.118698, 1.0, -0.0383312);
  d.charts_1 = {mat3(0.15187, 0.0, -0.64804,   //
                     1.0123, 0.0, 0.039354,    //
                     0.17202, 1.0, -0.038011),
                mat3(0.15622, 0.0, 0.85005,    //
                     0.78914, 0.0, 0.056412,   //
                     0.18542, 1.0, -0.053097),
                mat3(0.12178, 0.0, 1.2185,     //
                     -0.53836, 0.0, 0.04927,   //
                     0.15326, 1.0, -0.043093),
                mat3(-0.08308, 0.0, 1.0643,    //
                     0.62561, 0.0, -0.046216,  //
                     -0.057064, 1.0, 0.040401)};
  d.charts_2 = {mat3(-0.15209, 0.0, -0.78781,  //
                     -1.0012, 0.0, 0.053503,   //
                     -0.17003, 1.0, -0.050450),
                mat3(-0.15451, 0.0, 1.1557,    //
                     -0.69615, 0.0, 0.049190,  //
                     -0.18337, 1.0, -0.043018),
                mat3(-0.10743, 0.0, 1.0625,    //
                     0.75471, 0.0, -0.046214,  //
                     -0.13856, 1.0, 0.040391)};
  // The mother anchor lies on the homoclinic orbit, so its Y coordinate
  // equals the X coordinate of the next anchor along either branch.
  d.anchor_M = {3.4319, 3.3127};
  d.anchors_1 = {{{3.3127, 2.5032},
                  {2.5032, -2.2401},
                  {-2.2401, -3.7312},
                  {-3.7312, 3.7495}}};
  d.anchors_2 = {{{3.2714, 2.2300}, {2.2300, -3.5459}, {-3.5459, 3.7421}}};
  d.l_half_widths_1 = {100.5, 101.0, 101.5, 102.0};
  d.l_half_widths_2 = {100.5, 101.0, 101.5};
  return d;
}

std::vector<Interval> xi_blocks(const XiSweepConfig& cfg) {
  if (!(cfg.xi_min <= cfg.xi_max) || !(cfg.block_width > 0.0)) {
    throw IntervalError("xi_blocks: need xi_min <= xi_max and a positive width");
  }
  if (cfg.xi_min == cfg.xi_max) {
    return {Interval(cfg.xi_min)};  // a single point block
  }
  const double span = cfg.xi_max - cfg.xi_min;
  // Snap near-integral block counts so accumulated rounding cannot create a
  // spurious extra sliver block.
  long n = static_cast<long>(std::ceil(span / cfg.block_width - 1e-6));
  if (n < 1) n = 1;
  std::vector<Interval> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  double lo = cfg.xi_min;
  for (long k = 1; k <= n; ++k) {
    double hi = k == n ? cfg.xi_max
                       : cfg.xi_min + static_cast<double>(k) * cfg.block_width;
    if (hi > cfg.xi_max) hi = cfg.xi_max;
    if (!(hi > lo)) continue;
    blocks.emplace_back(lo, hi);
    lo = hi;
  }
  return blocks;
}

ZMResult solve_zM(const HenonParams& params, const ConstructionData& data) {
  const Interval& x = params.xi;

  std::array<double, 4> ys1{data.anchors_1[0][1], data.anchors_1[1][1],
                            data.anchors_1[2][1], data.anchors_1[3][1]};
  std::array<double, 3> ys2{data.anchors_2[0][1], data.anchors_2[1][1],
                            data.anchors_2[2][1]};
  const IPoly c1 = branch_poly(data.anchor_M[1], ys1.data(), ys1.size());
  const IPoly c2 = branch_poly(data.anchor_M[1], ys2.data(), ys2.size());
  const IPoly n_poly = poly_add(c1, c2);
  // Q = 2 - x^4 - x^5.
  const IPoly q_poly{Interval(2.0), Interval(0.0),  Interval(0.0),
                     Interval(0.0), Interval(-1.0), Interval(-1.0)};
  const IPoly x5m1{Interval(-1.0), Interval(0.0), Interval(0.0),
                   Interval(0.0),  Interval(0.0), Interval(1.0)};
  const IPoly x4m1{Interval(-1.0), Interval(0.0), Interval(0.0), Interval(0.0),
                   Interval(1.0)};

  const RationalFn zm_fn{n_poly, q_poly};
  const RationalFn d1_fn{poly_add(poly_mul(x5m1, n_poly), poly_mul(c1, q_poly)),
                         q_poly};
  const RationalFn d2_fn{poly_add(poly_mul(x4m1, n_poly), poly_mul(c2, q_poly)),
                         q_poly};

  ZMResult r;
  r.z_M = rational_eval_tight(zm_fn, x);
  r.d1 = rational_eval_tight(d1_fn, x);
  r.d2 = rational_eval_tight(d2_fn, x);
  r.residual = sub(mul(poly_eval(q_poly, x), r.z_M), poly_eval(n_poly, x));
  r.side_margins = {signed_gap_from_zero(r.d1), signed_gap_from_zero(r.d2)};
  r.sides_ok = (r.d1.hi < 0.0 && r.d2.lo > 0.0) || (r.d1.lo > 0.0 && r.d2.hi < 0.0);
  return r;
}

CenterData build_centers(const HenonParams& params, const ConstructionData& data) {
  return centers_from(params, data, solve_zM(params, data));
}

HSet make_mother_hset(const HenonParams& params, const ConstructionData& data) {
  return mother_from(build_geometry(params, data), data);
}

std::vector<HSet> build_initial_hsets(const HenonParams& params,
                                      const ConstructionData& data) {
  return ladder_from(build_geometry(params, data), data);
}

std::vector<Chain> propagate_hsets(const HenonParams& params,
                                   const ConstructionData& data) {
  return chains_from(params, build_geometry(params, data), data);
}

HenonTransition make_link_transition(const HenonParams& params,
                                     const ZMResult& zm, const Chain& chain,
                                     const HSet& mother, std::size_t link) {
  const HSet& src = chain.sets.at(link);
  const bool closing = link + 1 == chain.sets.size();
  const HSet& dst = closing ? mother : chain.sets[link + 1];
  const Interval dz =
      closing ? (chain.branch == 1 ? zm.d1 : zm.d2) : Interval(0.0);
  return HenonTransition(params, src, dst, dz);
}

BlenderBlockVerdicts verify_blender(const HenonParams& params,
                                    const ConstructionData& data) {
  const BlockGeometry g = build_geometry(params, data);
  const HSet mother = mother_from(g, data);
  const std::vector<HSet> ladder = ladder_from(g, data);
  const std::vector<Chain> chains = chains_from(params, g, data);

  BlenderBlockVerdicts out;
  out.zm = g.zm;
  out.b1 = verify_b1_overlap(mother, ConeSpec(data.kappa_M, data.kappa_M), ladder);
  out.pass = out.zm.sides_ok && out.b1.pass;

  for (const Chain& ch : chains) {
    ChainVerdicts cv;
    cv.branch = ch.branch;
    cv.tile = ch.tile;
    cv.pass = true;
    ConeSpec cur(data.kappa_u, data.kappa_s);
    for (std::size_t k = 0; k < ch.sets.size(); ++k) {
      const bool closing = k + 1 == ch.sets.size();
      const HSet& src = ch.sets[k];
      const HSet& dst = closing ? mother : ch.sets[k + 1];
      const HenonTransition t = make_link_transition(params, g.zm, ch, mother, k);

      LinkVerdict lv;
      lv.src_label = src.label;
      lv.dst_label = dst.label;
      lv.covering = verify_covering_dx1(t, src, dst);

      ConeSpec next = cur;
      if (closing) {
        next = ConeSpec(data.kappa_M, data.kappa_M);
        lv.cone = verify_cone(t, src, cur, dst, next);
      } else {
        const ConeVerdict probe = verify_cone(t, src, cur, dst, cur);
        if (contains_zero(probe.wx_enclosure)) {
          lv.cone = probe;  // transversality failed; pass stays false
        } else {
          next = ConeSpec(grow_cone_constant(mag(probe.achieved_ratio_u)),
                          grow_cone_constant(mag(probe.achieved_ratio_s)));
          lv.cone = verify_cone(t, src, cur, dst, next);
        }
      }
      lv.dst_kappa_u = next.kappa_u;
      lv.dst_kappa_s = next.kappa_s;
      lv.pass = lv.covering.pass && lv.cone.pass;
      cv.pass = cv.pass && lv.pass;
      cv.links.push_back(std::move(lv));
      cur = next;
    }
    out.pass = out.pass && cv.pass;
    out.chains.push_back(std::move(cv));
  }
  return out;
}

}  // namespace bcert
