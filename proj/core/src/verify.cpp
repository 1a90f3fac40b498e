#include "blendercert/verify.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace bcert {

namespace {

struct ExitCheck {
  Orientation orientation = Orientation::preserving;
  double margin_lo_face = -std::numeric_limits<double>::infinity();
  double margin_hi_face = -std::numeric_limits<double>::infinity();

  double min_margin() const { return std::min(margin_lo_face, margin_hi_face); }
  bool pass() const { return margin_lo_face > 0.0 && margin_hi_face > 0.0; }
};

// Exit test for one exit dimension: the image of the lower/upper face must
// land strictly beyond the target's bounds, on opposite sides.  Both
// orientations are tried; the one with the larger worst margin is reported.
ExitCheck check_exit_dim(const TransitionEvaluator& t, const HSet& src,
                         const HSet& dst, int src_dim, int dst_dim) {
  IVector3 lo_face = src.local_box;
  lo_face[src_dim] = Interval(src.local_box[src_dim].lo);
  IVector3 hi_face = src.local_box;
  hi_face[src_dim] = Interval(src.local_box[src_dim].hi);

  const Interval img_lo = t.image(lo_face)[dst_dim];
  const Interval img_hi = t.image(hi_face)[dst_dim];
  const Interval& target = dst.local_box[dst_dim];

  ExitCheck preserving;
  preserving.orientation = Orientation::preserving;
  preserving.margin_lo_face = target.lo - img_lo.hi;
  preserving.margin_hi_face = img_hi.lo - target.hi;

  ExitCheck reversing;
  reversing.orientation = Orientation::reversing;
  reversing.margin_lo_face = img_lo.lo - target.hi;
  reversing.margin_hi_face = target.lo - img_hi.hi;

  return preserving.min_margin() >= reversing.min_margin() ? preserving : reversing;
}

double entry_margin(const Interval& image, const Interval& target) {
  return std::min(image.lo - target.lo, target.hi - image.hi);
}

std::vector<int> entry_dims(const HSet& h) {
  std::vector<int> dims;
  for (int d = 0; d < 3; ++d) {
    if (!h.is_exit_dim(d)) dims.push_back(d);
  }
  return dims;
}

}  // namespace

CoveringVerdict verify_covering_dx1(const TransitionEvaluator& t, const HSet& src,
                                    const HSet& dst) {
  if (src.dx() != 1 || dst.dx() != 1) {
    throw std::invalid_argument("verify_covering_dx1 requires d_x = 1 on both sets");
  }
  CoveringVerdict v;
  const ExitCheck exit =
      check_exit_dim(t, src, dst, src.exit_dims[0], dst.exit_dims[0]);
  v.orientation = exit.orientation;
  v.exit_margins = {exit.margin_lo_face, exit.margin_hi_face};

  const IVector3 full = t.image(src.local_box);
  bool entries_ok = true;
  for (int q : entry_dims(dst)) {
    const double m = entry_margin(full[q], dst.local_box[q]);
    v.entry_margins.push_back(m);
    entries_ok = entries_ok && m > 0.0;
  }
  v.pass = exit.pass() && entries_ok;
  return v;
}

CoveringVerdict verify_covering_dx1(const MapModel& m, const HSet& src,
                                    const HSet& dst) {
  return verify_covering_dx1(ComposedTransition(m, src, dst), src, dst);
}

CoveringVerdict verify_covering_appendix(const TransitionEvaluator& t,
                                         const HSet& src, const HSet& dst) {
  if (src.dx() != 2 || dst.dx() != 2) {
    throw std::invalid_argument(
        "verify_covering_appendix requires d_x = 2 on both sets");
  }
  CoveringVerdict v;
  bool exits_ok = true;
  for (int k = 0; k < 2; ++k) {
    const ExitCheck exit =
        check_exit_dim(t, src, dst, src.exit_dims[k], dst.exit_dims[k]);
    if (k == 0) v.orientation = exit.orientation;
    v.exit_margins.push_back(exit.margin_lo_face);
    v.exit_margins.push_back(exit.margin_hi_face);
    exits_ok = exits_ok && exit.pass();
  }

  const IVector3 full = t.image(src.local_box);
  bool entries_ok = true;
  for (int q : entry_dims(dst)) {
    const double m = entry_margin(full[q], dst.local_box[q]);
    v.entry_margins.push_back(m);
    entries_ok = entries_ok && m > 0.0;
  }
  v.pass = exits_ok && entries_ok;
  return v;
}

CoveringVerdict verify_covering_appendix(const MapModel& m, const HSet& src,
                                         const HSet& dst) {
  return verify_covering_appendix(ComposedTransition(m, src, dst), src, dst);
}

ConeVerdict verify_cone(const TransitionEvaluator& t, const HSet& src,
                        const ConeSpec& src_cone, const HSet& dst,
                        const ConeSpec& dst_cone) {
  ConeVerdict v;
  const IMatrix3 j = t.jacobian(src.local_box);
  const IVector3 cone_vec{Interval(1.0),
                          Interval(-src_cone.kappa_u, src_cone.kappa_u),
                          Interval(-src_cone.kappa_s, src_cone.kappa_s)};
  const IVector3 w = mat_vec(j, cone_vec);
  v.wx_enclosure = w[0];
  if (contains_zero(w[0])) {
    v.pass = false;
    return v;
  }
  v.achieved_ratio_u = div(w[1], w[0]);
  v.achieved_ratio_s = div(w[2], w[0]);
  v.pass = subset(v.achieved_ratio_u, Interval(-dst_cone.kappa_u, dst_cone.kappa_u)) &&
           subset(v.achieved_ratio_s, Interval(-dst_cone.kappa_s, dst_cone.kappa_s));
  return v;
}

ConeVerdict verify_cone(const MapModel& m, const HSet& src, const ConeSpec& src_cone,
                        const HSet& dst, const ConeSpec& dst_cone) {
  return verify_cone(ComposedTransition(m, src, dst), src, src_cone, dst, dst_cone);
}

namespace {

bool same_interval(const Interval& a, const Interval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

bool same_chart(const Chart& a, const Chart& b) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (a.A[r][c] != b.A[r][c]) return false;
    }
  }
  for (int d = 0; d < 3; ++d) {
    if (!same_interval(a.p[d], b.p[d])) return false;
  }
  return true;
}

}  // namespace

B1Verdict verify_b1_overlap(const HSet& mother, const ConeSpec& mother_cone,
                            const std::vector<HSet>& initial) {
  if (mother.dx() != 1) {
    throw std::invalid_argument("verify_b1_overlap: mother set must have d_x = 1");
  }
  const int exit_dim = mother.exit_dims[0];
  const int yu_dim = entry_dims(mother)[0];

  std::vector<Interval> tiles;
  tiles.reserve(initial.size());
  for (const HSet& h : initial) {
    if (!same_chart(h.chart, mother.chart)) {
      throw std::invalid_argument("verify_b1_overlap: initial set `" + h.label +
                                  "` does not share the mother's chart");
    }
    for (int d = 0; d < 3; ++d) {
      if (d == yu_dim) continue;
      if (!same_interval(h.local_box[d], mother.local_box[d])) {
        throw std::invalid_argument("verify_b1_overlap: initial set `" + h.label +
                                    "` differs from the mother outside y_u");
      }
    }
    tiles.push_back(h.local_box[yu_dim]);
  }
  if (tiles.empty()) {
    throw std::invalid_argument("verify_b1_overlap: no initial sets given");
  }

  B1Verdict v;
  const Interval delta_enc = mul(
      mul(Interval(mother_cone.kappa_u), Interval(width(mother.local_box[exit_dim]))),
      Interval(0.5));
  v.delta = delta_enc.hi;

  std::sort(tiles.begin(), tiles.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  const Interval& range = mother.local_box[yu_dim];

  bool covers = tiles.front().lo <= range.lo;
  double run_hi = tiles.front().hi;
  // min over adjacent tiles of overlap/2 - delta, as a rigorous lower bound.
  double margin = width(tiles.front()) / 2.0;
  bool single = tiles.size() == 1;
  for (size_t k = 1; k < tiles.size(); ++k) {
    if (tiles[k].lo > run_hi) {
      covers = false;
      margin = std::min(margin, run_hi - tiles[k].lo);  // negative gap, informative
    } else {
      const Interval overlap = sub(Interval(run_hi), Interval(tiles[k].lo));
      margin = std::min(margin, mul(overlap, Interval(0.5)).lo);
    }
    run_hi = std::max(run_hi, tiles[k].hi);
  }
  covers = covers && run_hi >= range.hi;
  if (single) {
    margin = mul(Interval(width(tiles.front())), Interval(0.5)).lo;
  }

  v.covers = covers;
  v.margin = sub(Interval(margin), delta_enc).lo;
  v.pass = covers && v.margin > 0.0;
  return v;
}

QForm QForm::signature(int d_u, int d_s) {
  if (d_u < 0 || d_s < 0 || d_u + d_s != 3) {
    throw std::invalid_argument("QForm::signature requires d_u + d_s = 3");
  }
  QForm q;
  for (int i = 0; i < 3; ++i) q.diag[i] = i < d_u ? 1 : -1;
  return q;
}

IMatrix3 QForm::matrix() const {
  IMatrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = Interval(static_cast<double>(diag[i]));
  return m;
}

PDVerdict verify_strong_hyperbolicity(const TransitionEvaluator& t, const HSet& src,
                                      const HSet& /*dst*/, const QForm& q) {
  const IMatrix3 j = t.jacobian(src.local_box);
  const IMatrix3 qm = q.matrix();
  IMatrix3 g = mat_mul(transpose(j), mat_mul(qm, j));
  for (int i = 0; i < 3; ++i) g[i][i] = sub(g[i][i], qm[i][i]);

  IMatrix3 s;
  const Interval half(0.5);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) s[r][c] = mul(half, add(g[r][c], g[c][r]));
  }

  PDVerdict v;
  const Interval m1 = s[0][0];
  const Interval m2 = sub(mul(s[0][0], s[1][1]), mul(s[0][1], s[1][0]));
  const Interval m3 = det(s);
  v.minor_lower_bounds = {m1.lo, m2.lo, m3.lo};
  v.pass = m1.lo > 0.0 && m2.lo > 0.0 && m3.lo > 0.0;
  return v;
}

PDVerdict verify_strong_hyperbolicity(const MapModel& m, const HSet& src,
                                      const HSet& dst, const QForm& q) {
  return verify_strong_hyperbolicity(ComposedTransition(m, src, dst), src, dst, q);
}

SequenceVerdict verify_sequence(
    const std::vector<const TransitionEvaluator*>& transitions,
    const std::vector<std::pair<HSet, ConeSpec>>& chain) {
  if (chain.size() < 2) {
    throw std::invalid_argument("verify_sequence requires a chain of length >= 2");
  }
  if (transitions.size() + 1 != chain.size()) {
    throw std::invalid_argument(
        "verify_sequence: need exactly one transition per consecutive pair");
  }
  SequenceVerdict v;
  v.pass = true;
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    const auto& [src, src_cone] = chain[k];
    const auto& [dst, dst_cone] = chain[k + 1];
    LinkVerdict link;
    link.src_label = src.label;
    link.dst_label = dst.label;
    link.covering = verify_covering_dx1(*transitions[k], src, dst);
    link.cone = verify_cone(*transitions[k], src, src_cone, dst, dst_cone);
    link.dst_kappa_u = dst_cone.kappa_u;
    link.dst_kappa_s = dst_cone.kappa_s;
    link.pass = link.covering.pass && link.cone.pass;
    if (!link.pass && v.first_failure < 0) {
      v.first_failure = static_cast<int>(k);
    }
    v.pass = v.pass && link.pass;
    v.links.push_back(std::move(link));
  }
  return v;
}

SequenceVerdict verify_sequence(const MapModel& m,
                                const std::vector<std::pair<HSet, ConeSpec>>& chain) {
  if (chain.size() < 2) {
    throw std::invalid_argument("verify_sequence requires a chain of length >= 2");
  }
  std::vector<ComposedTransition> owned;
  owned.reserve(chain.size() - 1);
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    owned.emplace_back(m, chain[k].first, chain[k + 1].first);
  }
  std::vector<const TransitionEvaluator*> ptrs;
  ptrs.reserve(owned.size());
  for (const auto& t : owned) ptrs.push_back(&t);
  return verify_sequence(ptrs, chain);
}

}  // namespace bcert
