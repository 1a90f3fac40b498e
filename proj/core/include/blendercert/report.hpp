#pragma once

// Reporting layer: JSON (de)serialization of the construction data, JSON
// certificates, CSV geometry export, and the command-line driver shared by
// the CLI binary and the tests.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "blendercert/certificate.hpp"

namespace bcert {

// Configuration / input-file problems (bad flags, malformed JSON, missing
// fields).  The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kCertificateSchemaVersion = 1;
inline constexpr int kConstructionSchemaVersion = 1;

// --- construction data -----------------------------------------------------
// Errors name the offending JSON field by path, e.g. `charts.N_12`.
ConstructionData construction_from_json_text(const std::string& text);
ConstructionData load_construction(const std::string& path);
std::string construction_to_json_text(const ConstructionData& data);
void save_construction(const ConstructionData& data, const std::string& path);

// --- certificates ------------------------------------------------------------
// Deterministic except for the values under "timing" keys.
std::string certificate_to_json_text(const Certificate& cert);
void write_certificate(const Certificate& cert, const std::string& path);
std::string hyperbolicity_report_to_json_text(const HyperbolicityReport& report);
void write_hyperbolicity_report(const HyperbolicityReport& report,
                                const std::string& path);

// --- geometry export ---------------------------------------------------------
// CSV with one row per h-set (mother, all chain sets, all L-sets) and 58
// columns: label,branch,step,tile, the 6 local bounds, the 24 coordinates of
// the global box corners, and the 24 coordinates of their images (interval
// results are reported by midpoint).  Returns the number of data rows.
int export_geometry(const HenonParams& params, const ConstructionData& data,
                    const std::string& path);

// --- CLI driver --------------------------------------------------------------

enum class Command { prove, hyperbolicity, export_geometry, selftest };

struct CliConfig {
  Command command = Command::prove;
  double xi_min = 1.01;
  double xi_max = 1.125;
  double xi_width = 1e-3;
  double mu = kDefaultMu;
  double beta = kDefaultBeta;
  std::string data_path;  // construction JSON; "" = use the embedded data
  std::string out_path = "certificate.json";
  std::string geometry_path = "geometry.csv";
  int jobs = 0;  // 0 = one worker per hardware thread
  bool verbose = false;
};

// Exit code 0: verified.  1: the run completed but verification failed (the
// certificate is still written).  2: configuration or I/O errors.
int run(const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Quick built-in checks (interval algebra, inverse enclosure, fixed points,
// the z_M solver, a cone fixture, the single-tile overlap example).
int selftest(std::ostream& out);

}  // namespace bcert
