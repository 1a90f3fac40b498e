#include "blendercert/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bcert {
namespace {

using ordered_json = nlohmann::ordered_json;

// --- file helpers ------------------------------------------------------------

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open `" + path + "` for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (!f && !f.eof()) throw ConfigError("failed while reading `" + path + "`");
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open `" + path + "` for writing");
  f << text;
  f.flush();
  if (!f) throw ConfigError("failed while writing `" + path + "`");
}

// --- serialization helpers ---------------------------------------------------

ordered_json iv_json(const Interval& x) {
  return ordered_json::array({x.lo, x.hi});
}

ordered_json box_json(const IVector3& b) {
  return ordered_json::array({iv_json(b[0]), iv_json(b[1]), iv_json(b[2])});
}

ordered_json matrix_json(const Matrix3& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 3; ++i) {
    rows.push_back(ordered_json::array({m[i][0], m[i][1], m[i][2]}));
  }
  return rows;
}

ordered_json covering_json(const CoveringVerdict& v) {
  ordered_json j;
  j["pass"] = v.pass;
  j["orientation"] = to_string(v.orientation);
  j["exit_margins"] = v.exit_margins;
  j["entry_margins"] = v.entry_margins;
  return j;
}

ordered_json cone_json(const ConeVerdict& v) {
  ordered_json j;
  j["pass"] = v.pass;
  j["wx"] = iv_json(v.wx_enclosure);
  j["ratio_u"] = iv_json(v.achieved_ratio_u);
  j["ratio_s"] = iv_json(v.achieved_ratio_s);
  return j;
}

ordered_json pd_json(const PDVerdict& v) {
  ordered_json j;
  j["pass"] = v.pass;
  j["minor_lower_bounds"] = ordered_json::array(
      {v.minor_lower_bounds[0], v.minor_lower_bounds[1], v.minor_lower_bounds[2]});
  return j;
}

ordered_json b1_json(const B1Verdict& v) {
  ordered_json j;
  j["pass"] = v.pass;
  j["covers"] = v.covers;
  j["delta"] = v.delta;
  j["margin"] = v.margin;
  return j;
}

ordered_json link_json(const LinkVerdict& v) {
  ordered_json j;
  j["src"] = v.src_label;
  j["dst"] = v.dst_label;
  j["covering"] = covering_json(v.covering);
  j["cone"] = cone_json(v.cone);
  j["kappa_next"] = ordered_json::array({v.dst_kappa_u, v.dst_kappa_s});
  j["pass"] = v.pass;
  return j;
}

ordered_json zm_json(const ZMResult& zm) {
  ordered_json j;
  j["z_M"] = iv_json(zm.z_M);
  j["d1"] = iv_json(zm.d1);
  j["d2"] = iv_json(zm.d2);
  j["residual"] = iv_json(zm.residual);
  j["residual_contains_zero"] = contains_zero(zm.residual);
  j["side_margins"] =
      ordered_json::array({zm.side_margins[0], zm.side_margins[1]});
  j["sides_ok"] = zm.sides_ok;
  return j;
}

ordered_json hyperbolicity_json(const HyperbolicityVerdicts& v) {
  ordered_json j;
  j["pass"] = v.pass;
  j["containment_ok"] = v.containment_ok;
  ordered_json links = ordered_json::array();
  for (const auto& l : v.links) {
    ordered_json lj;
    lj["src"] = l.src_label;
    lj["dst"] = l.dst_label;
    lj["covering"] = covering_json(l.covering);
    lj["quadratic_form"] = pd_json(l.pd);
    lj["pass"] = l.pass;
    links.push_back(std::move(lj));
  }
  j["links"] = std::move(links);
  return j;
}

ordered_json transitivity_json(const TransitivityRecord& t) {
  ordered_json j;
  j["verified"] = t.verified;
  j["word_alpha"] = t.word_alpha;
  j["word_beta"] = t.word_beta;
  return j;
}

ordered_json block_json(const BlockResult& b) {
  ordered_json j;
  j["xi"] = iv_json(b.xi);
  j["zm"] = zm_json(b.blender.zm);
  j["b1"] = b1_json(b.blender.b1);
  ordered_json chains = ordered_json::array();
  for (const auto& c : b.blender.chains) {
    ordered_json cj;
    cj["branch"] = c.branch;
    cj["tile"] = c.tile;
    cj["pass"] = c.pass;
    ordered_json links = ordered_json::array();
    for (const auto& l : c.links) links.push_back(link_json(l));
    cj["links"] = std::move(links);
    chains.push_back(std::move(cj));
  }
  j["chains"] = std::move(chains);
  j["hyperbolicity"] = hyperbolicity_json(b.hyperbolicity);
  j["containment_checked"] = b.containment_checked;
  j["transitivity"] = transitivity_json(b.transitivity);
  j["pass"] = b.pass;
  j["timing"] = ordered_json{{"wall_ms", b.wall_ms}};
  return j;
}

ordered_json hyperbolicity_block_json(const HyperbolicityBlockResult& b) {
  ordered_json j;
  j["xi"] = iv_json(b.xi);
  j["zm"] = zm_json(b.zm);
  j["hyperbolicity"] = hyperbolicity_json(b.verdicts);
  j["containment_checked"] = b.containment_checked;
  j["transitivity"] = transitivity_json(b.transitivity);
  j["pass"] = b.pass;
  j["timing"] = ordered_json{{"wall_ms", b.wall_ms}};
  return j;
}

ordered_json construction_json(const ConstructionData& d) {
  ordered_json j;
  j["format"] = "blender-construction";
  j["schema_version"] = kConstructionSchemaVersion;
  j["mother_box"] = box_json(d.mother_box);
  ordered_json charts;
  charts["M"] = matrix_json(d.chart_M);
  for (int k = 0; k < 4; ++k)
    charts["N_1" + std::to_string(k + 1)] = matrix_json(d.charts_1[k]);
  for (int k = 0; k < 3; ++k)
    charts["N_2" + std::to_string(k + 1)] = matrix_json(d.charts_2[k]);
  j["charts"] = std::move(charts);
  ordered_json anchors;
  anchors["M"] = ordered_json::array({d.anchor_M[0], d.anchor_M[1]});
  for (int k = 0; k < 4; ++k)
    anchors["N_1" + std::to_string(k + 1)] =
        ordered_json::array({d.anchors_1[k][0], d.anchors_1[k][1]});
  for (int k = 0; k < 3; ++k)
    anchors["N_2" + std::to_string(k + 1)] =
        ordered_json::array({d.anchors_2[k][0], d.anchors_2[k][1]});
  j["anchors"] = std::move(anchors);
  j["tile_half_width"] = d.tile_half_width;
  j["tiles_per_branch"] = d.tiles_per_branch;
  j["kappa_u"] = d.kappa_u;
  j["kappa_s"] = d.kappa_s;
  j["kappa_M"] = d.kappa_M;
  j["propagation_inflation"] = d.propagation_inflation;
  ordered_json lw;
  lw["L_0"] = d.l_half_width_M;
  for (int k = 0; k < 4; ++k)
    lw["L_1" + std::to_string(k + 1)] = d.l_half_widths_1[k];
  for (int k = 0; k < 3; ++k)
    lw["L_2" + std::to_string(k + 1)] = d.l_half_widths_2[k];
  j["l_half_widths"] = std::move(lw);
  return j;
}

ordered_json notes_json() {
  return ordered_json::array({
      "The mother anchor's Y coordinate equals the X coordinate of the first "
      "anchor along either homoclinic branch (3.3127); every anchor pair is "
      "chained the same way, which pins the anchors to one orbit.",
      "Loop covering relations are checked in exit-face form in both exit "
      "dimensions; containment of the weak coordinate is unsatisfiable around "
      "a closed loop because its width scales by xi > 1 at every step.",
      "L-set half-widths grow along each branch so the loop-closing Z-drift "
      "d_a is absorbed even near xi = 1, where |d_a| exceeds (xi - 1) times "
      "the base half-width.",
      "Cone constants propagate along each chain as 1.01 times the achieved "
      "ratio magnitude; the final link must re-enter the mother cone "
      "kappa_M.",
  });
}

ordered_json sweep_json(const XiSweepConfig& s, std::size_t block_count) {
  ordered_json j;
  j["xi_min"] = s.xi_min;
  j["xi_max"] = s.xi_max;
  j["block_width"] = s.block_width;
  j["block_count"] = block_count;
  return j;
}

// --- construction parsing ----------------------------------------------------

std::string joined(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const ordered_json& require_field(const ordered_json& j, const std::string& path,
                                  const std::string& key) {
  if (!j.is_object()) {
    throw ConfigError("construction: `" + (path.empty() ? std::string("<top>") : path) +
                      "` must be an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError("construction: missing field `" + joined(path, key) + "`");
  }
  return *it;
}

double require_double(const ordered_json& j, const std::string& path,
                      const std::string& key) {
  const ordered_json& v = require_field(j, path, key);
  if (!v.is_number()) {
    throw ConfigError("construction: `" + joined(path, key) + "` must be a number");
  }
  return v.get<double>();
}

int require_int(const ordered_json& j, const std::string& path,
                const std::string& key) {
  const ordered_json& v = require_field(j, path, key);
  if (!v.is_number_integer()) {
    throw ConfigError("construction: `" + joined(path, key) +
                      "` must be an integer");
  }
  return v.get<int>();
}

Interval json_to_interval(const ordered_json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError("construction: `" + where +
                      "` must be an array of two numbers [lo, hi]");
  }
  try {
    return Interval(v[0].get<double>(), v[1].get<double>());
  } catch (const IntervalError& e) {
    throw ConfigError("construction: `" + where + "`: " + e.what());
  }
}

IVector3 require_ibox(const ordered_json& j, const std::string& path,
                      const std::string& key) {
  const ordered_json& v = require_field(j, path, key);
  if (!v.is_array() || v.size() != 3) {
    throw ConfigError("construction: `" + joined(path, key) +
                      "` must be an array of three intervals");
  }
  IVector3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = json_to_interval(v[i], joined(path, key) + "[" + std::to_string(i) + "]");
  }
  return out;
}

Matrix3 require_matrix(const ordered_json& j, const std::string& path,
                       const std::string& key) {
  const ordered_json& v = require_field(j, path, key);
  if (!v.is_array() || v.size() != 3) {
    throw ConfigError("construction: `" + joined(path, key) +
                      "` must be a 3x3 array of numbers");
  }
  Matrix3 m{};
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_array() || v[i].size() != 3) {
      throw ConfigError("construction: `" + joined(path, key) +
                        "` must be a 3x3 array of numbers");
    }
    for (int c = 0; c < 3; ++c) {
      if (!v[i][c].is_number()) {
        throw ConfigError("construction: `" + joined(path, key) +
                          "` must be a 3x3 array of numbers");
      }
      m[i][c] = v[i][c].get<double>();
    }
  }
  return m;
}

std::array<double, 2> require_pair(const ordered_json& j, const std::string& path,
                                   const std::string& key) {
  const ordered_json& v = require_field(j, path, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError("construction: `" + joined(path, key) +
                      "` must be an array of two numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

void require_positive(double x, const std::string& field) {
  if (!(x > 0.0)) {
    throw ConfigError("construction: `" + field + "` must be strictly positive");
  }
}

}  // namespace

ConstructionData construction_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("construction: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("construction: top level must be an object");
  }
  if (j.contains("format") &&
      (!j["format"].is_string() ||
       j["format"].get<std::string>() != "blender-construction")) {
    throw ConfigError("construction: `format` must be \"blender-construction\"");
  }
  int version = require_int(j, "", "schema_version");
  if (version != kConstructionSchemaVersion) {
    throw ConfigError("construction: unsupported schema_version " +
                      std::to_string(version) + " (expected " +
                      std::to_string(kConstructionSchemaVersion) + ")");
  }

  ConstructionData d{};
  d.mother_box = require_ibox(j, "", "mother_box");
  for (int i = 0; i < 3; ++i) {
    if (!(width(d.mother_box[i]) > 0.0)) {
      throw ConfigError("construction: `mother_box[" + std::to_string(i) +
                        "]` must have positive width");
    }
  }

  const ordered_json& charts = require_field(j, "", "charts");
  d.chart_M = require_matrix(charts, "charts", "M");
  for (int k = 0; k < 4; ++k)
    d.charts_1[k] = require_matrix(charts, "charts", "N_1" + std::to_string(k + 1));
  for (int k = 0; k < 3; ++k)
    d.charts_2[k] = require_matrix(charts, "charts", "N_2" + std::to_string(k + 1));

  const ordered_json& anchors = require_field(j, "", "anchors");
  d.anchor_M = require_pair(anchors, "anchors", "M");
  for (int k = 0; k < 4; ++k)
    d.anchors_1[k] = require_pair(anchors, "anchors", "N_1" + std::to_string(k + 1));
  for (int k = 0; k < 3; ++k)
    d.anchors_2[k] = require_pair(anchors, "anchors", "N_2" + std::to_string(k + 1));

  d.tile_half_width = require_double(j, "", "tile_half_width");
  require_positive(d.tile_half_width, "tile_half_width");
  d.tiles_per_branch = require_int(j, "", "tiles_per_branch");
  if (d.tiles_per_branch < 1) {
    throw ConfigError("construction: `tiles_per_branch` must be at least 1");
  }
  d.kappa_u = require_double(j, "", "kappa_u");
  require_positive(d.kappa_u, "kappa_u");
  d.kappa_s = require_double(j, "", "kappa_s");
  require_positive(d.kappa_s, "kappa_s");
  d.kappa_M = require_double(j, "", "kappa_M");
  require_positive(d.kappa_M, "kappa_M");
  d.propagation_inflation = require_double(j, "", "propagation_inflation");
  if (!(d.propagation_inflation >= 0.0)) {
    throw ConfigError("construction: `propagation_inflation` must be nonnegative");
  }

  const ordered_json& lw = require_field(j, "", "l_half_widths");
  d.l_half_width_M = require_double(lw, "l_half_widths", "L_0");
  require_positive(d.l_half_width_M, "l_half_widths.L_0");
  for (int k = 0; k < 4; ++k) {
    std::string key = "L_1" + std::to_string(k + 1);
    d.l_half_widths_1[k] = require_double(lw, "l_half_widths", key);
    require_positive(d.l_half_widths_1[k], "l_half_widths." + key);
  }
  for (int k = 0; k < 3; ++k) {
    std::string key = "L_2" + std::to_string(k + 1);
    d.l_half_widths_2[k] = require_double(lw, "l_half_widths", key);
    require_positive(d.l_half_widths_2[k], "l_half_widths." + key);
  }
  return d;
}

ConstructionData load_construction(const std::string& path) {
  return construction_from_json_text(read_text(path));
}

std::string construction_to_json_text(const ConstructionData& data) {
  return construction_json(data).dump(2) + "\n";
}

void save_construction(const ConstructionData& data, const std::string& path) {
  write_text(path, construction_to_json_text(data));
}

std::string certificate_to_json_text(const Certificate& cert) {
  ordered_json j;
  j["format"] = "blender-certificate";
  j["schema_version"] = kCertificateSchemaVersion;
  j["generator"] = "blendercert 1.0.0";
  j["pass"] = cert.pass;
  j["params"] = ordered_json{{"mu", iv_json(cert.mu)}, {"beta", iv_json(cert.beta)}};
  j["sweep"] = sweep_json(cert.sweep, cert.blocks.size());
  j["notes"] = notes_json();
  j["construction"] = construction_json(cert.data);
  ordered_json blocks = ordered_json::array();
  for (const auto& b : cert.blocks) blocks.push_back(block_json(b));
  j["blocks"] = std::move(blocks);
  j["timing"] = ordered_json{{"wall_ms", cert.wall_ms}};
  return j.dump() + "\n";
}

void write_certificate(const Certificate& cert, const std::string& path) {
  write_text(path, certificate_to_json_text(cert));
}

std::string hyperbolicity_report_to_json_text(const HyperbolicityReport& report) {
  ordered_json j;
  j["format"] = "blender-hyperbolicity";
  j["schema_version"] = kCertificateSchemaVersion;
  j["generator"] = "blendercert 1.0.0";
  j["pass"] = report.pass;
  j["params"] =
      ordered_json{{"mu", iv_json(report.mu)}, {"beta", iv_json(report.beta)}};
  j["sweep"] = sweep_json(report.sweep, report.blocks.size());
  j["notes"] = notes_json();
  j["construction"] = construction_json(report.data);
  ordered_json blocks = ordered_json::array();
  for (const auto& b : report.blocks) blocks.push_back(hyperbolicity_block_json(b));
  j["blocks"] = std::move(blocks);
  j["timing"] = ordered_json{{"wall_ms", report.wall_ms}};
  return j.dump() + "\n";
}

void write_hyperbolicity_report(const HyperbolicityReport& report,
                                const std::string& path) {
  write_text(path, hyperbolicity_report_to_json_text(report));
}

// --- geometry export ---------------------------------------------------------

namespace {

void append_double(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  out += buf;
}

void append_geometry_row(std::string& out, const HenonParams& params,
                         const HSet& h, int branch, int step, int tile) {
  out += h.label;
  out += ',';
  out += std::to_string(branch);
  out += ',';
  out += std::to_string(step);
  out += ',';
  out += std::to_string(tile);
  for (int i = 0; i < 3; ++i) {
    out += ',';
    append_double(out, h.local_box[i].lo);
    out += ',';
    append_double(out, h.local_box[i].hi);
  }
  std::array<IVector3, 8> corners;
  for (int c = 0; c < 8; ++c) {
    IVector3 u;
    for (int d = 0; d < 3; ++d) {
      const bool upper = ((c >> (2 - d)) & 1) != 0;
      const double end = upper ? h.local_box[d].hi : h.local_box[d].lo;
      u[d] = Interval(end);
    }
    corners[c] = to_global(h, u);
    for (int d = 0; d < 3; ++d) {
      out += ',';
      append_double(out, midpoint(corners[c][d]));
    }
  }
  for (int c = 0; c < 8; ++c) {
    const IVector3 img = henon_image(params, corners[c]);
    for (int d = 0; d < 3; ++d) {
      out += ',';
      append_double(out, midpoint(img[d]));
    }
  }
  out += '\n';
}

std::string geometry_header() {
  std::string h = "label,branch,step,tile";
  for (int i = 0; i < 3; ++i) {
    h += ",u" + std::to_string(i) + "_lo,u" + std::to_string(i) + "_hi";
  }
  const char* axis = "xyz";
  for (const char* prefix : {"g", "f"}) {
    for (int c = 0; c < 8; ++c) {
      for (int d = 0; d < 3; ++d) {
        h += ',';
        h += prefix;
        h += static_cast<char>('0' + ((c >> 2) & 1));
        h += static_cast<char>('0' + ((c >> 1) & 1));
        h += static_cast<char>('0' + (c & 1));
        h += '_';
        h += axis[d];
      }
    }
  }
  h += '\n';
  return h;
}

}  // namespace

int export_geometry(const HenonParams& params, const ConstructionData& data,
                    const std::string& path) {
  const std::vector<Chain> chains = propagate_hsets(params, data);
  const LSetFamily family = build_L_sets(params, data, chains);
  const HSet mother = make_mother_hset(params, data);

  std::string out = geometry_header();
  int rows = 0;
  append_geometry_row(out, params, mother, 0, 0, -1);
  ++rows;
  for (const Chain& chain : chains) {
    for (std::size_t s = 0; s < chain.sets.size(); ++s) {
      append_geometry_row(out, params, chain.sets[s], chain.branch,
                          static_cast<int>(s), chain.tile);
      ++rows;
    }
  }
  for (std::size_t k = 0; k < family.sets.size(); ++k) {
    int branch = 0;
    int step = 0;
    if (k >= 1 && k <= 4) {
      branch = 1;
      step = static_cast<int>(k);
    } else if (k >= 5) {
      branch = 2;
      step = static_cast<int>(k) - 4;
    }
    append_geometry_row(out, params, family.sets[k], branch, step, -1);
    ++rows;
  }
  write_text(path, out);
  return rows;
}

// --- CLI driver --------------------------------------------------------------

namespace {

std::string format_interval(const Interval& x) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "[%.6g, %.6g]", x.lo, x.hi);
  return buf;
}

double worst_margin(const CoveringVerdict& v) {
  double worst = std::numeric_limits<double>::infinity();
  for (double m : v.exit_margins) worst = std::min(worst, m);
  for (double m : v.entry_margins) worst = std::min(worst, m);
  return worst;
}

std::string attribute_block_failure(const BlockResult& b) {
  std::ostringstream ss;
  const char* sep = "";
  if (!b.blender.zm.sides_ok) {
    ss << sep << "loop drift enclosures do not separate from zero";
    sep = "; ";
  }
  if (!b.blender.b1.pass) {
    ss << sep << "overlap condition failed (margin " << b.blender.b1.margin << ")";
    sep = "; ";
  }
  int failing_chains = 0;
  const LinkVerdict* first_bad = nullptr;
  for (const auto& c : b.blender.chains) {
    if (c.pass) continue;
    ++failing_chains;
    if (first_bad == nullptr) {
      for (const auto& l : c.links) {
        if (!l.pass) {
          first_bad = &l;
          break;
        }
      }
    }
  }
  if (failing_chains > 0) {
    ss << sep << failing_chains << " of " << b.blender.chains.size()
       << " chains failed";
    if (first_bad != nullptr) {
      ss << ", first at " << first_bad->src_label << " => " << first_bad->dst_label
         << " (";
      const char* inner = "";
      if (!first_bad->covering.pass) {
        ss << "covering, worst margin " << worst_margin(first_bad->covering);
        inner = "; ";
      }
      if (!first_bad->cone.pass) ss << inner << "cone condition";
      ss << ")";
    }
    sep = "; ";
  }
  if (!b.hyperbolicity.pass) {
    ss << sep << "hyperbolicity failed";
    if (!b.hyperbolicity.containment_ok) ss << " (containment)";
    for (const auto& l : b.hyperbolicity.links) {
      if (!l.pass) {
        ss << " at " << l.src_label << " => " << l.dst_label;
        break;
      }
    }
    sep = "; ";
  }
  std::string s = ss.str();
  if (s.empty()) s = "unattributed failure";
  return s;
}

int run_prove(const CliConfig& cfg, const ConstructionData& data,
              std::ostream& out) {
  const XiSweepConfig sweep{cfg.xi_min, cfg.xi_max, cfg.xi_width, cfg.jobs};
  const Certificate cert =
      sweep_xi(Interval(cfg.mu), Interval(cfg.beta), data, sweep);
  write_certificate(cert, cfg.out_path);

  std::size_t failed = 0;
  for (const auto& b : cert.blocks) {
    if (!b.pass) ++failed;
  }
  if (cfg.verbose) {
    for (const auto& b : cert.blocks) {
      out << "block xi=" << format_interval(b.xi) << " "
          << (b.pass ? "pass" : "FAIL") << "\n";
    }
  }
  out << "xi range [" << cfg.xi_min << ", " << cfg.xi_max << "], "
      << cert.blocks.size() << " blocks, " << (cert.blocks.size() - failed)
      << " passed, " << failed << " failed\n";
  int printed = 0;
  for (const auto& b : cert.blocks) {
    if (b.pass) continue;
    if (printed == 20) {
      out << "  ... (" << failed - 20 << " more failing blocks)\n";
      break;
    }
    out << "  FAIL xi=" << format_interval(b.xi) << ": "
        << attribute_block_failure(b) << "\n";
    ++printed;
  }
  out << "certificate written to " << cfg.out_path << "\n";
  if (cert.pass) {
    out << "VERIFIED: blender and strong hyperbolicity conditions hold on the "
           "whole xi range\n";
    return 0;
  }
  out << "NOT VERIFIED\n";
  return 1;
}

int run_hyperbolicity(const CliConfig& cfg, const ConstructionData& data,
                      std::ostream& out) {
  const XiSweepConfig sweep{cfg.xi_min, cfg.xi_max, cfg.xi_width, cfg.jobs};
  const HyperbolicityReport report =
      sweep_hyperbolicity(Interval(cfg.mu), Interval(cfg.beta), data, sweep);
  write_hyperbolicity_report(report, cfg.out_path);

  std::size_t failed = 0;
  for (const auto& b : report.blocks) {
    if (!b.pass) ++failed;
  }
  if (cfg.verbose) {
    for (const auto& b : report.blocks) {
      out << "block xi=" << format_interval(b.xi) << " "
          << (b.pass ? "pass" : "FAIL") << "\n";
    }
  }
  out << "xi range [" << cfg.xi_min << ", " << cfg.xi_max << "], "
      << report.blocks.size() << " blocks, " << (report.blocks.size() - failed)
      << " passed, " << failed << " failed\n";
  int printed = 0;
  for (const auto& b : report.blocks) {
    if (b.pass) continue;
    if (printed == 20) {
      out << "  ... (" << failed - 20 << " more failing blocks)\n";
      break;
    }
    out << "  FAIL xi=" << format_interval(b.xi) << ":";
    if (!b.zm.sides_ok) out << " drift sides";
    if (!b.verdicts.containment_ok) out << " containment";
    for (const auto& l : b.verdicts.links) {
      if (!l.pass) {
        out << " " << l.src_label << " => " << l.dst_label;
        break;
      }
    }
    out << "\n";
    ++printed;
  }
  out << "report written to " << cfg.out_path << "\n";
  if (report.pass) {
    out << "VERIFIED: strong hyperbolicity conditions hold on the whole xi "
           "range\n";
    return 0;
  }
  out << "NOT VERIFIED\n";
  return 1;
}

}  // namespace

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == Command::selftest) return selftest(out);

    const ConstructionData data = cfg.data_path.empty()
                                      ? ConstructionData::embedded()
                                      : load_construction(cfg.data_path);
    switch (cfg.command) {
      case Command::prove:
        return run_prove(cfg, data, out);
      case Command::hyperbolicity:
        return run_hyperbolicity(cfg, data, out);
      case Command::export_geometry: {
        const HenonParams params(Interval(cfg.mu), Interval(cfg.beta),
                                 Interval(cfg.xi_min, cfg.xi_max));
        const int rows = export_geometry(params, data, cfg.geometry_path);
        out << "wrote " << rows << " h-set rows to " << cfg.geometry_path << "\n";
        return 0;
      }
      case Command::selftest:
        break;  // handled above
    }
    err << "error: unknown command\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IntervalError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// --- selftest ----------------------------------------------------------------

namespace {

struct FixtureTransition final : TransitionEvaluator {
  IMatrix3 J;
  explicit FixtureTransition(const Matrix3& m) : J(to_interval(m)) {}
  IVector3 image(const IVector3& u) const override { return mat_vec(J, u); }
  IMatrix3 jacobian(const IVector3&) const override { return J; }
};

bool report_check(std::ostream& out, const char* name, bool ok) {
  out << (ok ? "ok:   " : "FAIL: ") << name << "\n";
  return ok;
}

}  // namespace

int selftest(std::ostream& out) {
  bool all = true;
  const ConstructionData data = ConstructionData::embedded();
  const HenonParams params{Interval(1.1)};

  {
    const Interval r = sqrt(Interval(2.0));
    const Interval rr = square(r);
    const Interval diff = sub(Interval(1.0, 2.0), Interval(1.0, 2.0));
    all &= report_check(out, "interval arithmetic encloses sqrt(2)^2 = 2 and x - x = 0",
                        contains(rr, 2.0) && contains_zero(diff) && rr.hi - rr.lo < 1e-14);
  }
  {
    const Chart chart = Chart::make(
        data.chart_M, point_vector({data.anchor_M[0], data.anchor_M[1], 0.0}));
    const IMatrix3 prod = mat_mul(chart.A_inv, to_interval(chart.A));
    all &= report_check(out, "verified chart inverse encloses the identity",
                        encloses_identity(prod));
  }
  {
    const auto fps = fixed_points(params);
    const IVector3 img = henon_image(params, fps.first);
    const IVector3 res = sub(img, fps.first);
    const bool ok = contains_zero(res[0]) && contains_zero(res[1]) &&
                    contains_zero(res[2]);
    all &= report_check(out, "fixed-point enclosure has zero-containing residual", ok);
  }
  {
    const ZMResult zm = solve_zM(params, data);
    const bool ok = zm.sides_ok && width(zm.z_M) <= 1e-9 &&
                    contains_zero(zm.residual);
    all &= report_check(out, "z_M solver: tight enclosure, residual and drift signs", ok);
  }
  {
    Matrix3 mj{};
    mj[0][0] = 4.0;
    mj[1][1] = 2.0;
    mj[2][2] = 0.5;
    const FixtureTransition t(mj);
    Matrix3 id{};
    id[0][0] = id[1][1] = id[2][2] = 1.0;
    const Chart chart = Chart::make(id, point_vector({0.0, 0.0, 0.0}));
    const IVector3 unit{Interval(-1.0, 1.0), Interval(-1.0, 1.0),
                        Interval(-1.0, 1.0)};
    const HSet src{chart, unit, {0}, "src"};
    const HSet dst{chart, unit, {0}, "dst"};
    const ConeVerdict cv =
        verify_cone(t, src, ConeSpec(0.02, 0.02), dst, ConeSpec(0.02, 0.02));
    const bool ok = cv.pass && mag(cv.achieved_ratio_u) <= 0.011 &&
                    mag(cv.achieved_ratio_s) <= 0.003;
    all &= report_check(out, "cone check on diag(4, 2, 0.5) contracts the cone", ok);
  }
  {
    const HSet mother = make_mother_hset(params, data);
    const std::vector<HSet> initial = build_initial_hsets(params, data);
    const B1Verdict b1 = verify_b1_overlap(
        mother, ConeSpec(data.kappa_M, data.kappa_M), initial);
    const bool ok = b1.pass && b1.covers && b1.margin > 0.017 && b1.margin < 0.019;
    all &= report_check(out, "overlap condition on the embedded ladder", ok);
  }
  out << (all ? "selftest passed\n" : "selftest FAILED\n");
  return all ? 0 : 1;
}

}  // namespace bcert
