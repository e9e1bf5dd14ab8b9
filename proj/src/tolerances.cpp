#include "acmslab/tolerances.hpp"

#include "acmslab/error.hpp"

#include <cmath>
#include <utility>

namespace acmslab {

namespace {

using Field = double Tolerances::*;

const std::vector<std::pair<std::string, Field>>& table() {
  static const std::vector<std::pair<std::string, Field>> t = {
      {"pd", &Tolerances::pd},
      {"symmetric", &Tolerances::symmetric},
      {"acms", &Tolerances::acms},
      {"acms_fd", &Tolerances::acms_fd},
      {"contact", &Tolerances::contact},
      {"rank", &Tolerances::rank},
      {"quad", &Tolerances::quad},
      {"sing", &Tolerances::sing},
      {"sing_slack", &Tolerances::sing_slack},
      {"witness", &Tolerances::witness},
      {"star", &Tolerances::star},
      {"eta_parallel", &Tolerances::eta_parallel},
      {"nearly", &Tolerances::nearly},
      {"killing", &Tolerances::killing},
      {"bridge", &Tolerances::bridge},
      {"bridge_fd", &Tolerances::bridge_fd},
      {"tilde_phi", &Tolerances::tilde_phi},
      {"tilde", &Tolerances::tilde},
      {"curvature", &Tolerances::curvature},
      {"curv_symmetry", &Tolerances::curv_symmetry},
      {"curv_symmetry_fd", &Tolerances::curv_symmetry_fd},
      {"dual_mode", &Tolerances::dual_mode},
      {"sigma_a", &Tolerances::sigma_a},
  };
  return t;
}

Field lookup(std::string_view key) {
  for (const auto& [name, field] : table()) {
    if (name == key) return field;
  }
  throw InputError("unknown tolerance key '" + std::string(key) + "'");
}

}  // namespace

void Tolerances::set(std::string_view key, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InputError("tolerance '" + std::string(key) + "' must be a positive number");
  }
  this->*lookup(key) = value;
}

double Tolerances::get(std::string_view key) const { return this->*lookup(key); }

const std::vector<std::string>& Tolerances::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& entry : table()) out.push_back(entry.first);
    return out;
  }();
  return k;
}

}  // namespace acmslab
