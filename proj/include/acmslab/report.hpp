#pragma once

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace acmslab {

/// How a residual is compared against its tolerance.
enum class Bound {
  below,  ///< pass iff residual < tolerance (identities, axioms)
  above,  ///< pass iff residual > tolerance (nondegeneracy: contact, σ_min)
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Bound bound = Bound::below;
  bool skipped = false;
  std::string detail;
};

/// Named residuals with verdicts. The verdict is the conjunction of the
/// pass flags; an empty report passes.
class VerificationReport {
 public:
  /// Appends a check and evaluates pass from residual, tolerance and bound.
  /// NaN residuals never pass.
  Check& add(std::string name, double residual, double tolerance, Bound bound = Bound::below,
             std::string detail = {});
  /// Appends a skipped check; it does not pass.
  Check& skip(std::string name, std::string reason);
  void append(const VerificationReport& other, const std::string& prefix = {});

  [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }
  [[nodiscard]] bool verdict() const;
  [[nodiscard]] const Check& at(const std::string& name) const;
  [[nodiscard]] const Check* find(const std::string& name) const;
  [[nodiscard]] bool empty() const { return checks_.empty(); }

  /// Merges reports from several sample points: checks are matched by name
  /// in first-seen order; the worst residual survives and pass is the
  /// conjunction.
  static VerificationReport aggregate(std::span<const VerificationReport> reports);

 private:
  std::vector<Check> checks_;
};

nlohmann::ordered_json to_json(const Check& check);
nlohmann::ordered_json to_json(const VerificationReport& report);

/// Fixed-width text table, one line per check.
std::string to_text(const VerificationReport& report);

}  // namespace acmslab
