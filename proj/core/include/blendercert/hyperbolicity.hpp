#pragma once

// Strong-hyperbolicity layer: the family of wide L-sets that carries the
// two homoclinic loops, the 9 appendix covering relations between them, the
// positive-definiteness (quadratic-form) checks, and the transitivity record.

#include <string>
#include <utility>
#include <vector>

#include "blendercert/pipeline.hpp"

namespace bcert {

// The 8 L-sets share the blender charts; their dimension-1 ranges are the
// graded half-widths from the construction data, and both dimensions 0 and 1
// are exit directions (d_x = 2).
struct LSetFamily {
  std::vector<HSet> sets;  // L_0 (mother chart) first, then branch 1, branch 2

  struct Transition {
    int src = 0;  // indices into `sets`
    int dst = 0;
    Interval delta_z;  // [0, 0] on intermediate links, d_a on loop closers
  };
  std::vector<Transition> transitions;  // the 9 loop links

  // For the mother set and every chain set: label and whether it is contained
  // in the L-set sharing its chart.
  std::vector<std::pair<std::string, bool>> containment;
};

LSetFamily build_L_sets(const HenonParams& params, const ConstructionData& data,
                        const std::vector<Chain>& chains);

// 9 appendix covering relations (exit in dimensions 0 and 1, entry in
// dimension 2) and 9 quadratic-form checks with Q = diag(1, 1, -1).
struct HyperbolicityVerdicts {
  struct Link {
    std::string src_label;
    std::string dst_label;
    CoveringVerdict covering;
    PDVerdict pd;
    bool pass = false;
  };
  std::vector<Link> links;
  bool containment_ok = false;
  bool pass = false;
};

HyperbolicityVerdicts verify_hyperbolicity(const HenonParams& params,
                                           const ConstructionData& data,
                                           const LSetFamily& family);

// Transitivity is witnessed by the two loop words; it is recorded as verified
// exactly when every loop link passed in full (covering relation and
// quadratic-form check).  No further computation.
struct TransitivityRecord {
  bool verified = false;
  std::vector<int> word_alpha{1, 0, 0, 0, 0};
  std::vector<int> word_beta{1, 0, 0, 0};
};

TransitivityRecord record_transitivity(const HyperbolicityVerdicts& verdicts);

}  // namespace bcert
