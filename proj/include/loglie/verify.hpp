#ifndef LOGLIE_VERIFY_HPP
#define LOGLIE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace loglie {

/// Thresholds for the certificate suite. Every identity the library claims
/// is checked against one of these; `verify` fails on the first violation.
struct Tolerances {
  double roundtrip = 1e-9;            // exp chart round trip, relative
  double roundtrip_iterative = 1e-8;  // scaler-backed charts
  double group = 1e-9;                // group axioms, bi-invariance
  double scalers = 1e-10;             // shift lemmas
  double rowzero_image = 1e-9;        // row sums of the log-scaling image
  double metric_split = 1e-12;        // g_le = g_ol + g_dl, relative
  double degeneracy = 1e-11;          // g_ol on diagonal dlog-directions
  double tangent_fd = 1e-6;           // tangent maps vs central differences
  double tangent_inverse = 1e-7;      // mutual-inverse composition
  double isometry = 1e-8;             // distance/homomorphism preservation
  double embed_norm = 1e-13;          // linear-layer norm preservation
  double helmert = 1e-14;
  double multistart = 1e-8;           // uniqueness certificates
  double quotient = 1e-8;             // quotient metric identities
  double section_isometry = 1e-10;    // canonical-section distances
  double lift = 1e-9;                 // lift horizontality/projection
  double split_cross = 1e-11;         // trivialization cross terms
  double mean_translation = 1e-10;
  double cov_translation = 1e-12;
  double cov_psd = 1e-10;             // -lambda_min / trace bound
  double geodesic_affinity = 1e-12;
  double defect_witness = 1e-6;       // lower bound: defect must exceed this
};

struct VerifyOptions {
  std::vector<int> dims = {2, 3, 4, 5, 6};
  int trials = 50;
  uint64_t seed = 0;
  Tolerances tol;
  bool parallel = true;
  /// When nonempty, only checks whose id starts with one of these run.
  std::vector<std::string> only;
};

enum class CheckKind {
  MaxResidual,  // pass iff value <= threshold
  MinWitness,   // pass iff value > threshold
};

struct CheckResult {
  std::string id;
  CheckKind kind = CheckKind::MaxResidual;
  double value = 0.0;
  double threshold = 0.0;
  int evaluations = 0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Runs the certificate suite. Results depend only on (dims, trials, seed,
/// tolerances); the parallel flag changes wall time, never values.
VerifyReport run_verify(const VerifyOptions& opts);

/// Deterministic JSON rendering (17-significant-digit floats).
std::string report_to_json(const VerifyReport& report, const VerifyOptions& opts);

/// One aligned text line per check.
std::string report_to_text(const VerifyReport& report);

std::vector<std::string> all_check_ids();

}  // namespace loglie

#endif
