#pragma once

// Per-block assembly of every verified condition and the xi sweep that
// produces the full certificate.  Block results are a pure function of the
// inputs; wall-clock fields are the only nondeterministic members.

#include <vector>

#include "blendercert/hyperbolicity.hpp"
#include "blendercert/pipeline.hpp"

namespace bcert {

struct BlockResult {
  Interval xi;
  BlenderBlockVerdicts blender;
  HyperbolicityVerdicts hyperbolicity;
  TransitivityRecord transitivity;
  int containment_checked = 0;
  bool pass = false;
  double wall_ms = 0.0;
};

BlockResult verify_block(const Interval& mu, const Interval& beta,
                         const Interval& xi, const ConstructionData& data);

struct Certificate {
  Interval mu;
  Interval beta;
  XiSweepConfig sweep;
  ConstructionData data;
  std::vector<BlockResult> blocks;
  bool pass = false;
  double wall_ms = 0.0;
};

// Verifies every block of the partition (in parallel when cfg.jobs != 1);
// the result is identical for any job count.
Certificate sweep_xi(const Interval& mu, const Interval& beta,
                     const ConstructionData& data, const XiSweepConfig& cfg);

// Hyperbolicity-only sweep for the `hyperbolicity` subcommand.
struct HyperbolicityBlockResult {
  Interval xi;
  ZMResult zm;
  HyperbolicityVerdicts verdicts;
  TransitivityRecord transitivity;
  int containment_checked = 0;
  bool pass = false;
  double wall_ms = 0.0;
};

struct HyperbolicityReport {
  Interval mu;
  Interval beta;
  XiSweepConfig sweep;
  ConstructionData data;
  std::vector<HyperbolicityBlockResult> blocks;
  bool pass = false;
  double wall_ms = 0.0;
};

HyperbolicityReport sweep_hyperbolicity(const Interval& mu, const Interval& beta,
                                        const ConstructionData& data,
                                        const XiSweepConfig& cfg);

}  // namespace bcert
