#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ighit/numeric_spec.hpp"

namespace ighit {

enum class Verdict { confirmed, corrected, bounded_only, failed };
std::string_view to_string(Verdict v);

enum class Comparison { absolute, relative, at_least, at_most };

/// One independent check. absolute / relative pass when the (relative)
/// discrepancy is within tolerance; at_least / at_most compare value with
/// reference directly.
struct OracleCheck {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::absolute;
  double discrepancy = 0.0;
  bool pass = false;
};

struct VerificationRecord {
  std::string id;
  std::string citation;
  /// The formula evaluated exactly as printed, when it differs from the
  /// implemented one.
  std::optional<double> paper_literal;
  double corrected = 0.0;
  std::vector<OracleCheck> oracles;
  /// Whether the as-printed value is consistent with the oracles.
  std::optional<bool> literal_consistent;
  Verdict verdict = Verdict::failed;
  std::string note;
};

struct VerificationReport {
  std::vector<VerificationRecord> records;
  bool numeric_failure = false;
  std::string failure_message;
  std::uint64_t seed = 0;
  long mc_samples = 0;
  NumericSpec spec{};

  bool all_passed() const;
};

struct VerifyOptions {
  /// Record ids to run; empty runs everything.
  std::vector<std::string> only;
  NumericSpec spec{};
  std::uint64_t seed = 20240611;
  long mc_samples = 20000;
  double mc_dt = 1e-3;
};

/// Ids in report order.
const std::vector<std::string>& verification_ids();

/// Runs the oracle battery. Quadrature or inversion failures inside a record
/// mark that record failed and set numeric_failure; the remaining records
/// still run.
VerificationReport run_verification(const VerifyOptions& options);

nlohmann::json to_json(const VerificationReport& report);

}  // namespace ighit
