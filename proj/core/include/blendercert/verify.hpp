#pragma once

// The checkable sufficient conditions: covering relations (d_x = 1 and the
// two-exit-dimension variant), cone propagation, the overlap condition (B1),
// and strong hyperbolicity as positive definiteness of J^T Q J - Q.
//
// Failing a check is a verdict, never an exception: every "pass = false"
// means "not verified", not "disproved".  All strict inequalities are
// evaluated on outward-rounded enclosures, so every pass is rigorous.

#include <array>
#include <string>
#include <vector>

#include "blendercert/hset.hpp"

namespace bcert {

enum class Orientation { preserving, reversing };

inline const char* to_string(Orientation o) {
  return o == Orientation::preserving ? "preserving" : "reversing";
}

struct CoveringVerdict {
  bool pass = false;
  // Orientation of the first exit dimension's successful (or best) pairing.
  Orientation orientation = Orientation::preserving;
  // Per exit face, in face order (dim0 lower, dim0 upper, dim1 lower, ...):
  // distance by which the face image clears the target's exit bound.
  std::vector<double> exit_margins;
  // Per entry dimension: distance by which the full image stays strictly
  // inside the target's entry range.
  std::vector<double> entry_margins;
};

struct ConeVerdict {
  bool pass = false;
  Interval achieved_ratio_u{0.0};
  Interval achieved_ratio_s{0.0};
  Interval wx_enclosure{0.0};
};

struct PDVerdict {
  bool pass = false;
  std::array<double, 3> minor_lower_bounds{0.0, 0.0, 0.0};
};

struct B1Verdict {
  bool pass = false;
  // min over adjacent tiles of overlap/2, minus delta (single tile:
  // half-width minus delta); must be strictly positive.
  double margin = 0.0;
  // delta = kappa_u * width(mother exit range) / 2: the maximal y_u
  // oscillation of a horizontal disk crossing the mother box.
  double delta = 0.0;
  // Union of tiles reaches both ends of the mother's y_u range with no gaps.
  bool covers = false;
};

// Signature matrix diag(Id_{d_u}, -Id_{d_s}).
struct QForm {
  std::array<int, 3> diag{1, 1, -1};

  static QForm signature(int d_u, int d_s);
  IMatrix3 matrix() const;
};

struct LinkVerdict {
  std::string src_label;
  std::string dst_label;
  CoveringVerdict covering;
  ConeVerdict cone;
  double dst_kappa_u = 0.0;
  double dst_kappa_s = 0.0;
  bool pass = false;
};

struct SequenceVerdict {
  bool pass = false;
  std::vector<LinkVerdict> links;
  int first_failure = -1;  // index of the first failing link, -1 if none
};

// d_x = 1 covering N_src => N_dst: one orientation's two exit-face images
// clear the target's exit bounds strictly, and the full image's entry
// coordinates lie strictly inside the target's entry ranges.
CoveringVerdict verify_covering_dx1(const TransitionEvaluator& t, const HSet& src,
                                    const HSet& dst);
CoveringVerdict verify_covering_dx1(const MapModel& m, const HSet& src,
                                    const HSet& dst);

// d_x = 2 covering for the hyperbolicity loops (strong exit x1, weak exit x2,
// entry y): exit-face checks in both x1 and x2 (each with its own
// orientation) plus strict entry containment in y.
//
// Note: around a closed loop the weak direction expands by exactly xi > 1 per
// transition, so "image x2-range contained in the target x2-range" is
// unsatisfiable on a loop; the exit-form check used here is the d_x = 2
// covering condition that the loops do satisfy.  Certificates carry a note
// recording this choice.
CoveringVerdict verify_covering_appendix(const TransitionEvaluator& t,
                                         const HSet& src, const HSet& dst);
CoveringVerdict verify_covering_appendix(const MapModel& m, const HSet& src,
                                         const HSet& dst);

// Cone propagation: w = [Df_ji(src box)] ({1} x [-ku,ku] x [-ks,ks]); passes
// iff 0 is excluded from w_x and the ratio hulls w_yu/w_x, w_ys/w_x lie
// within the destination cone constants.  Achieved ratio hulls are always
// reported so callers can propagate cone constants along a chain.
ConeVerdict verify_cone(const TransitionEvaluator& t, const HSet& src,
                        const ConeSpec& src_cone, const HSet& dst,
                        const ConeSpec& dst_cone);
ConeVerdict verify_cone(const MapModel& m, const HSet& src, const ConeSpec& src_cone,
                        const HSet& dst, const ConeSpec& dst_cone);

// Condition (B1): the initial sets' y_u tiles cover the mother's y_u range
// with pairwise overlap deep enough that every delta-ball around a covered
// point stays inside a single tile.  All initial sets must share the mother's
// chart and differ from it only in the y_u interval (else std::invalid_argument).
B1Verdict verify_b1_overlap(const HSet& mother, const ConeSpec& mother_cone,
                            const std::vector<HSet>& initial);

// Strong hyperbolicity: G = J^T Q J - Q over the source box; passes iff the
// three leading principal minors of the symmetric part S = (G + G^T)/2 have
// strictly positive lower bounds (Sylvester; v^T G v = v^T S v).
PDVerdict verify_strong_hyperbolicity(const TransitionEvaluator& t, const HSet& src,
                                      const HSet& dst, const QForm& q);
PDVerdict verify_strong_hyperbolicity(const MapModel& m, const HSet& src,
                                      const HSet& dst, const QForm& q);

// Chain verification: every consecutive pair must pass verify_covering_dx1
// and verify_cone.  Realizes both (B2) chains and connecting sequences.
SequenceVerdict verify_sequence(const MapModel& m,
                                const std::vector<std::pair<HSet, ConeSpec>>& chain);
// Same, with caller-supplied transition evaluators (transitions.size() must
// equal chain.size() - 1).
SequenceVerdict verify_sequence(
    const std::vector<const TransitionEvaluator*>& transitions,
    const std::vector<std::pair<HSet, ConeSpec>>& chain);

}  // namespace bcert
