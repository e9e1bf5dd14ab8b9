#include "acmslab/report.hpp"

#include "acmslab/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>

namespace acmslab {

Check& VerificationReport::add(std::string name, double residual, double tolerance, Bound bound,
                               std::string detail) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tolerance;
  c.bound = bound;
  c.detail = std::move(detail);
  if (std::isnan(residual)) {
    c.pass = false;
  } else {
    c.pass = bound == Bound::below ? residual < tolerance : residual > tolerance;
  }
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& VerificationReport::skip(std::string name, std::string reason) {
  Check c;
  c.name = std::move(name);
  c.residual = std::nan("");
  c.skipped = true;
  c.detail = std::move(reason);
  checks_.push_back(std::move(c));
  return checks_.back();
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks_) {
    if (!prefix.empty()) c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

bool VerificationReport::verdict() const {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const Check& VerificationReport::at(const std::string& name) const {
  if (const auto* c = find(name)) return *c;
  throw InputError("report has no check named '" + name + "'");
}

VerificationReport VerificationReport::aggregate(std::span<const VerificationReport> reports) {
  VerificationReport out;
  std::map<std::string, std::size_t> index;
  for (const auto& r : reports) {
    for (const auto& c : r.checks_) {
      auto it = index.find(c.name);
      if (it == index.end()) {
        index.emplace(c.name, out.checks_.size());
        out.checks_.push_back(c);
        continue;
      }
      Check& acc = out.checks_[it->second];
      const bool worse = std::isnan(c.residual) ||
                         (!std::isnan(acc.residual) &&
                          (c.bound == Bound::below ? c.residual > acc.residual
                                                   : c.residual < acc.residual));
      if (worse) {
        acc.residual = c.residual;
        if (!c.detail.empty()) acc.detail = c.detail;
      }
      acc.pass = acc.pass && c.pass;
      acc.skipped = acc.skipped || c.skipped;
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const Check& check) {
  nlohmann::ordered_json j;
  j["name"] = check.name;
  if (std::isnan(check.residual)) {
    j["residual"] = nullptr;
  } else {
    j["residual"] = check.residual;
  }
  j["tolerance"] = check.tolerance;
  j["pass"] = check.pass;
  if (check.bound == Bound::above) j["bound"] = "above";
  if (check.skipped) j["skipped"] = true;
  if (!check.detail.empty()) j["detail"] = check.detail;
  return j;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : report.checks()) arr.push_back(to_json(c));
  return arr;
}

std::string to_text(const VerificationReport& report) {
  std::string out;
  for (const auto& c : report.checks()) {
    const char* status = c.skipped ? "SKIPPED" : (c.pass ? "PASS" : "FAIL");
    if (c.skipped) {
      out += fmt::format("  {:<8} {:<48} ({})\n", status, c.name, c.detail);
      continue;
    }
    out += fmt::format("  {:<8} {:<48} {:>12.4e} {} {:.1e}", status, c.name, c.residual,
                       c.bound == Bound::below ? "<" : ">", c.tolerance);
    if (!c.detail.empty()) out += fmt::format("  ({})", c.detail);
    out += '\n';
  }
  return out;
}

}  // namespace acmslab
