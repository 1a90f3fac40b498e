#pragma once

// Blender construction pipeline: the fixed chart/anchor data, the rational
// solver for the mother anchor height z_M, the ladder of initial h-sets, the
// chain propagation along both homoclinic branches, and the per-block blender
// verification (overlap condition + 100 covering/cone chains).

#include <array>
#include <string>
#include <vector>

#include "blendercert/hset.hpp"
#include "blendercert/map_model.hpp"
#include "blendercert/verify.hpp"

namespace bcert {

// Geometry and constants of the construction.  All fields are plain data so
// the whole struct round-trips through JSON; `embedded()` returns the
// built-in default construction.
struct ConstructionData {
  // Local box of the mother h-set (exit dimension 0, overlap ladder in
  // dimension 1, strong-stable dimension 2).
  IVector3 mother_box{Interval(-0.1, 0.1), Interval(-2.0, 2.0),
                      Interval(-0.4, 0.4)};

  // Chart frames: columns are (strong-unstable, center, strong-stable)
  // directions at the anchor; column 1 is exactly (0, 0, 1).
  Matrix3 chart_M{};
  std::array<Matrix3, 4> charts_1{};  // N_11 .. N_14
  std::array<Matrix3, 3> charts_2{};  // N_21 .. N_23

  // Anchor (X, Y) pairs; the Z components are produced by the z_M solver and
  // the Z-recursion along each branch.
  std::array<double, 2> anchor_M{};
  std::array<std::array<double, 2>, 4> anchors_1{};
  std::array<std::array<double, 2>, 3> anchors_2{};

  // Initial-set ladder in the mother's dimension 1: per branch,
  // `tiles_per_branch` tiles of half-width `tile_half_width` whose centers
  // step by `tile_half_width` (so consecutive tiles overlap by one
  // half-width).
  double tile_half_width = 0.04;
  int tiles_per_branch = 50;

  // Cone constants: the initial cone attached to every ladder set and the
  // cone the final link of every chain must re-enter at the mother.
  double kappa_u = 0.02;
  double kappa_s = 0.02;
  double kappa_M = 0.02;

  // Relative inflation applied to image hulls when propagating the
  // dimension-1 ranges along a chain (plus one ulp outward).
  double propagation_inflation = 0.01;

  // Half-widths of the dimension-1 ranges of the L-sets used by the
  // hyperbolicity verification.  They grow along each branch so that the
  // loop-closing transition (whose centers drift by d_a in Z) still exits
  // strictly: with equal sizes the xi-fold stretching per step could not
  // absorb the drift near xi = 1.
  double l_half_width_M = 100.0;
  std::array<double, 4> l_half_widths_1{};
  std::array<double, 3> l_half_widths_2{};

  static ConstructionData embedded();
};

// Partition of [xi_min, xi_max] into verification blocks.
struct XiSweepConfig {
  double xi_min = 1.01;
  double xi_max = 1.125;
  double block_width = 1e-3;
  int jobs = 0;  // 0 = one worker per hardware thread
};

// Consecutive blocks share their endpoint bitwise, so the union covers
// [xi_min, xi_max] with no gaps.  Every block has width <= block_width; a
// degenerate range xi_min == xi_max yields a single point block.  Throws
// IntervalError if xi_min > xi_max or the width is not positive.
std::vector<Interval> xi_blocks(const XiSweepConfig& cfg);

// Output of the z_M solver.  z_M is the height at which the two loop-closing
// Z-drifts d_1, d_2 balance (d_1 + d_2 = 0):
//   d_a(xi) = xi^{n_a} z_M + c_a(xi) - z_M,  c_a = Horner sum of the branch's
//   anchor Y values, n_1 = 5, n_2 = 4,
// which gives z_M = (c_1 + c_2) / (2 - xi^5 - xi^4).  All three are rational
// functions of xi and are enclosed with a second-order Taylor form about the
// block midpoint (intersected with the mean-value and direct forms), which
// keeps the enclosures near the true variation over the block even where
// z_M'(xi) is of order 10^4.
struct ZMResult {
  Interval z_M;
  Interval d1;
  Interval d2;
  // Q(xi) z_M - N(xi) for the defining equation z_M = N/Q; contains zero.
  Interval residual;
  // Signed distances of d1 and d2 from zero (negative if the enclosure
  // touches zero).  sides_ok requires the drifts to point to opposite sides.
  std::array<double, 2> side_margins{};
  bool sides_ok = false;
};

// Throws IntervalError if the denominator enclosure contains zero (cannot
// happen for xi > 1, which HenonParams already guarantees).
ZMResult solve_zM(const HenonParams& params, const ConstructionData& data);

// Anchor heights: z_M for the mother and the Z-recursion
// z_{next} = xi z + Y along each branch.
struct CenterData {
  Interval z_M;
  std::array<Interval, 4> z_1;  // N_11 .. N_14
  std::array<Interval, 3> z_2;  // N_21 .. N_23
};

CenterData build_centers(const HenonParams& params, const ConstructionData& data);

// The mother h-set M: mother chart, mother box, exit dimension 0.
HSet make_mother_hset(const HenonParams& params, const ConstructionData& data);

// The 2 * tiles_per_branch initial h-sets N_{a}0c*: mother chart, mother box
// with dimension 1 replaced by the branch-a ladder tile.  Tile endpoints are
// computed with outward rounding, so the two outermost tiles reach past the
// mother's dimension-1 range.
std::vector<HSet> build_initial_hsets(const HenonParams& params,
                                      const ConstructionData& data);

// One verification chain: the ladder set of a branch/tile followed by its
// propagated images along the branch charts.  The chain's final covering
// target is the mother set (not stored here).
struct Chain {
  int branch = 0;  // 1 or 2
  int tile = 0;    // 0 .. tiles_per_branch - 1
  std::vector<HSet> sets;
};

// Propagates every ladder set along its branch: the dimension-1 range of the
// next set is the image hull inflated by `propagation_inflation` of its width
// plus one ulp; dimensions 0 and 2 stay at the shared exit/stable ranges.
std::vector<Chain> propagate_hsets(const HenonParams& params,
                                   const ConstructionData& data);

// The transition evaluator for link `link` of a chain (link k maps set k to
// set k+1; the last link maps the final set to the mother).  Supplies the
// symbolic Z-offset: exactly [0, 0] on intermediate links, the branch drift
// d_a on the loop-closing link.
HenonTransition make_link_transition(const HenonParams& params,
                                     const ZMResult& zm, const Chain& chain,
                                     const HSet& mother, std::size_t link);

// Blender verification of one xi block: overlap condition for the ladder
// plus covering and cone conditions along every chain, with cone constants
// propagated as 1.01 * |achieved ratio hull| and the final link checked
// against the mother cone kappa_M.
struct ChainVerdicts {
  int branch = 0;
  int tile = 0;
  std::vector<LinkVerdict> links;
  bool pass = false;
};

struct BlenderBlockVerdicts {
  ZMResult zm;
  B1Verdict b1;
  std::vector<ChainVerdicts> chains;
  bool pass = false;
};

BlenderBlockVerdicts verify_blender(const HenonParams& params,
                                    const ConstructionData& data);

}  // namespace bcert
