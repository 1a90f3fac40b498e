#include "blendercert/hyperbolicity.hpp"

#include <string>

namespace bcert {

namespace {

bool box_subset(const IVector3& inner, const IVector3& outer) {
  return subset(inner[0], outer[0]) && subset(inner[1], outer[1]) &&
         subset(inner[2], outer[2]);
}

HSet make_l_set(const Chart& chart, const ConstructionData& data, double half,
                std::string label) {
  return HSet{chart,
              IVector3{data.mother_box[0], Interval(-half, half), data.mother_box[2]},
              {0, 1},
              std::move(label)};
}

}  // namespace

LSetFamily build_L_sets(const HenonParams& params, const ConstructionData& data,
                        const std::vector<Chain>& chains) {
  const ZMResult zm = solve_zM(params, data);
  const CenterData centers = build_centers(params, data);

  LSetFamily fam;
  fam.sets.reserve(8);
  fam.sets.push_back(make_l_set(
      Chart::make(data.chart_M,
                  IVector3{Interval(data.anchor_M[0]), Interval(data.anchor_M[1]),
                           centers.z_M}),
      data, data.l_half_width_M, "L_0"));
  for (std::size_t k = 0; k < data.charts_1.size(); ++k) {
    fam.sets.push_back(make_l_set(
        Chart::make(data.charts_1[k],
                    IVector3{Interval(data.anchors_1[k][0]),
                             Interval(data.anchors_1[k][1]), centers.z_1[k]}),
        data, data.l_half_widths_1[k], "L_1" + std::to_string(k + 1)));
  }
  for (std::size_t k = 0; k < data.charts_2.size(); ++k) {
    fam.sets.push_back(make_l_set(
        Chart::make(data.charts_2[k],
                    IVector3{Interval(data.anchors_2[k][0]),
                             Interval(data.anchors_2[k][1]), centers.z_2[k]}),
        data, data.l_half_widths_2[k], "L_2" + std::to_string(k + 1)));
  }

  // Branch-1 loop L_0 -> L_11 -> ... -> L_14 -> L_0, then branch 2; the
  // loop-closing links carry the corresponding Z-drift enclosure.
  const std::vector<int> seq1{0, 1, 2, 3, 4, 0};
  const std::vector<int> seq2{0, 5, 6, 7, 0};
  for (const auto* seq : {&seq1, &seq2}) {
    for (std::size_t k = 0; k + 1 < seq->size(); ++k) {
      LSetFamily::Transition tr;
      tr.src = (*seq)[k];
      tr.dst = (*seq)[k + 1];
      const bool closing = tr.dst == 0;
      tr.delta_z = closing ? (seq == &seq1 ? zm.d1 : zm.d2) : Interval(0.0);
      fam.transitions.push_back(tr);
    }
  }

  // Containment of the blender sets in the L-set sharing their chart:
  // the mother and every chain set at step b against L_0 / L_{branch,b}.
  const IVector3 mother_box = data.mother_box;
  fam.containment.emplace_back("M", box_subset(mother_box, fam.sets[0].local_box));
  for (const Chain& ch : chains) {
    for (std::size_t b = 0; b < ch.sets.size(); ++b) {
      const HSet& h = ch.sets[b];
      const std::size_t l_index =
          b == 0 ? 0 : (ch.branch == 1 ? b : 4 + b);  // L_0, L_1b, L_2b
      fam.containment.emplace_back(
          h.label, box_subset(h.local_box, fam.sets[l_index].local_box));
    }
  }
  return fam;
}

HyperbolicityVerdicts verify_hyperbolicity(const HenonParams& params,
                                           const ConstructionData& data,
                                           const LSetFamily& family) {
  (void)data;
  HyperbolicityVerdicts out;
  out.pass = true;
  const QForm q = QForm::signature(2, 1);
  for (const LSetFamily::Transition& tr : family.transitions) {
    const HSet& src = family.sets.at(static_cast<std::size_t>(tr.src));
    const HSet& dst = family.sets.at(static_cast<std::size_t>(tr.dst));
    const HenonTransition t(params, src, dst, tr.delta_z);

    HyperbolicityVerdicts::Link link;
    link.src_label = src.label;
    link.dst_label = dst.label;
    link.covering = verify_covering_appendix(t, src, dst);
    link.pd = verify_strong_hyperbolicity(t, src, dst, q);
    link.pass = link.covering.pass && link.pd.pass;
    out.pass = out.pass && link.pass;
    out.links.push_back(std::move(link));
  }
  out.containment_ok = true;
  for (const auto& [label, contained] : family.containment) {
    out.containment_ok = out.containment_ok && contained;
  }
  out.pass = out.pass && out.containment_ok;
  return out;
}

TransitivityRecord record_transitivity(const HyperbolicityVerdicts& verdicts) {
  TransitivityRecord rec;
  rec.verified = !verdicts.links.empty();
  for (const auto& link : verdicts.links) {
    rec.verified = rec.verified && link.pass;
  }
  return rec;
}

}  // namespace bcert
