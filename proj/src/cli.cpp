#include "acmslab/cli.hpp"

#include "acmslab/calculus.hpp"
#include "acmslab/chart.hpp"
#include "acmslab/error.hpp"
#include "acmslab/gallery.hpp"
#include "acmslab/lemma_dim.hpp"
#include "acmslab/modified_connection.hpp"
#include "acmslab/random.hpp"
#include "acmslab/report.hpp"
#include "acmslab/theorem.hpp"
#include "acmslab/tolerances.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>

namespace acmslab::cli {

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string chart_path;
  std::string gallery;
  std::uint64_t seed = 0;
  int probes = 50;
  int points = 20;
  std::vector<std::string> tol_overrides;
  Tolerances tol;
  bool json = false;
  std::string derivative_mode;
  int dim = 0;
  int trials = 100;
  std::optional<double> c;
};

struct Outcome {
  VerificationReport report;
  ordered_json summary = ordered_json::object();
  std::vector<std::string> notes;
  std::string verdict;
  int exit_code = kExitPass;
};

Chart load_chart(const RunConfig& cfg) {
  std::optional<DerivativeSettings> mode;
  if (!cfg.derivative_mode.empty()) mode = DerivativeSettings::parse(cfg.derivative_mode);
  if (!cfg.gallery.empty()) return gallery::by_name(cfg.gallery, mode.value_or(DerivativeSettings{}));
  Chart chart = Chart::load(cfg.chart_path);
  return mode ? chart.with_mode(*mode) : chart;
}

Outcome verdict_from_report(Outcome o) {
  o.verdict = o.report.verdict() ? "PASS" : "FAIL";
  o.exit_code = o.report.verdict() ? kExitPass : kExitFail;
  return o;
}

Outcome cmd_validate(const RunConfig& cfg) {
  const Chart chart = load_chart(cfg);
  if (chart.dim() % 2 == 0) throw InputError(fmt::format("chart dimension {} is even", chart.dim()));
  std::vector<VerificationReport> per_point;
  for (const auto& p : chart.sample_points(cfg.points, cfg.seed)) {
    const LocalGeometry geo = LocalGeometry::at(chart, p, false, cfg.tol);
    VerificationReport r;
    r.append(validate_acms(geo.acms, cfg.tol));
    r.append(contact_form_check(geo, cfg.tol));
    r.append(check_star_condition(geo.a, geo.acms, cfg.tol));
    r.append(check_eta_parallel(geo.nabla_phi, geo.acms, cfg.tol));
    r.append(check_bridge(geo, cfg.tol));
    per_point.push_back(std::move(r));
  }
  Outcome o;
  o.report = VerificationReport::aggregate(per_point);
  return verdict_from_report(std::move(o));
}

Outcome cmd_lemma(const RunConfig& cfg) {
  if (cfg.dim < 2 || cfg.dim % 2 != 0) {
    throw InputError(fmt::format("--dim must be even and at least 2, got {}", cfg.dim));
  }
  const ComplexStructuredSpace space = ComplexStructuredSpace::standard(cfg.dim);
  const ConstrainedOperatorSampler sampler(space, true);
  std::vector<VerificationReport> per_trial;
  int decompositions = 0;
  int singular = 0;
  int generic = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(t));
    const LinearOp a = sampler.sample(rng);
    VerificationReport r;
    // Part 1 needs A != 0; in dimension 2 the constrained space is {0}.
    if (max_abs(a.mat()) > 0.0) {
      const Vector y = find_generic_vector(space, a, cfg.tol, cfg.seed + static_cast<std::uint64_t>(t));
      const Vector z = find_orthogonal_witness(space, a, y, cfg.tol);
      r.add("generic vector Gram determinant", triple_gram_determinant(space, a, y), cfg.tol.rank, Bound::above);
      const Vector jay = space.j().apply(a.apply(y));
      r.add("witness |g(Z, JAY)|", std::abs(space.g().inner(z, jay)), cfg.tol.witness, Bound::above);
      ++generic;
    }
    const VerificationReport mod4 = check_mod4(space, a, cfg.tol);
    if (mod4.find("quadruple count = dim/4")) ++decompositions;
    if (mod4.find("A singular (dim != 0 mod 4)") && mod4.verdict()) ++singular;
    r.append(mod4);
    per_trial.push_back(std::move(r));
  }
  Outcome o;
  o.report = VerificationReport::aggregate(per_trial);
  o.summary["dim"] = cfg.dim;
  o.summary["trials"] = cfg.trials;
  o.summary["generic_vectors"] = generic;
  o.summary["decompositions"] = decompositions;
  o.summary["singular_certifications"] = singular;
  if (cfg.dim % 4 == 0) {
    o.notes.push_back(fmt::format("{}/{} decompositions", decompositions, cfg.trials));
  } else {
    o.notes.push_back(fmt::format("{}/{} singular certifications", singular, cfg.trials));
  }
  return verdict_from_report(std::move(o));
}

Outcome cmd_curvature(const RunConfig& cfg) {
  const Chart chart = load_chart(cfg);
  if (chart.dim() % 2 == 0) throw InputError(fmt::format("chart dimension {} is even", chart.dim()));
  const CurvatureSurvey s =
      curvature_survey(chart, chart.sample_points(cfg.points, cfg.seed), cfg.probes, cfg.seed, cfg.tol);
  Outcome o;
  o.report = s.checks;
  o.summary["points"] = s.points;
  o.summary["planes_per_point"] = s.planes;
  o.summary["c_mean"] = s.c_mean;
  o.summary["c_min"] = s.c_min;
  o.summary["c_max"] = s.c_max;
  o.summary["c_spread"] = s.c_spread();
  o.summary["sigma_min_A_D"] = s.sigma_a_min;
  o.summary["nearly_cosymplectic"] = s.nearly_cosymplectic;
  if (!s.reason.empty()) o.summary["reason"] = s.reason;
  o.notes.push_back(fmt::format("horizontal sectional curvature: mean {:.6g}, spread {:.3g} ({} points x {} planes)",
                                s.c_mean, s.c_spread(), s.points, s.planes));
  o.notes.push_back(fmt::format("sigma_min(A|_D) = {:.6g}", s.sigma_a_min));
  if (!s.reason.empty()) o.notes.push_back(s.reason);
  o.verdict = to_string(s.verdict);
  o.exit_code = s.verdict == TheoremVerdict::inconsistent ? kExitFail : kExitPass;
  return o;
}

Outcome cmd_identities(const RunConfig& cfg) {
  const Chart chart = load_chart(cfg);
  if (chart.dim() % 2 == 0) throw InputError(fmt::format("chart dimension {} is even", chart.dim()));
  const auto points = chart.sample_points(cfg.points, cfg.seed);
  const ProbeConfig probes{cfg.probes, cfg.seed};
  const double c = cfg.c ? *cfg.c : phi_sectional_curvature(chart, points, cfg.probes, cfg.seed, cfg.tol);

  const char* hyp_names[] = {"(nabla~_X phi)Y = 0 on D", "S(X,Y,Z) = 2g(BX,Y)(nabla~_xi phi)Z",
                             "(R~(X,Y)Z)^H: differentiated = algebraic",
                             "2g(BX,Y)((nabla~_xi phi)Z - B phi Z)^H = R-side"};
  const char* nearly_names[] = {"4g(R(W,X)Y,Z) = curvature formula", "horizontal curvature formula",
                                "g((nabla_X phi)Y, AZ) = eta(Y)g(A^2X, phiZ) - eta(X)g(A^2Y, phiZ)"};
  std::vector<VerificationReport> per_point;
  for (const auto& p : points) {
    const ModifiedConnectionData data = modified_connection(chart, p, true, cfg.tol);
    const LocalGeometry& geo = data.base;
    VerificationReport r;
    const VerificationReport table = modified_connection_report(data, probes, cfg.tol);
    for (const auto& ch : table.checks()) {
      if (ch.name.rfind("H(", 0) == 0) r.add(ch.name, ch.residual, ch.tolerance, ch.bound);
    }
    const VerificationReport star = check_star_condition(geo.a, geo.acms, cfg.tol);
    const VerificationReport eta_parallel = check_eta_parallel(geo.nabla_phi, geo.acms, cfg.tol);
    const VerificationReport nearly = check_nearly_cosymplectic(geo, probes, cfg.tol);
    r.append(star);
    r.append(eta_parallel);
    r.append(nearly);
    if (star.verdict() && eta_parallel.verdict()) {
      const Check& tp = table.at(hyp_names[0]);
      r.add(tp.name, tp.residual, tp.tolerance);
      r.append(eq_r_residual(data, probes, cfg.tol));
      r.append(tilde_mode_agreement(data, probes, cfg.tol));
      r.append(gb_identity_residual(data, probes, cfg.tol));
    } else {
      for (const char* n : hyp_names) r.skip(n, "A phi + phi A = 0 or horizontal eta-parallelism fails");
    }
    if (nearly.verdict()) {
      r.append(endo_residual(geo, c, probes, cfg.tol));
      r.append(endo_identity_residual(geo, probes, cfg.tol));
    } else {
      for (const char* n : nearly_names) r.skip(n, "not nearly cosymplectic");
    }
    per_point.push_back(std::move(r));
  }
  Outcome o;
  o.report = VerificationReport::aggregate(per_point);
  o.summary["c"] = c;
  o.summary["c_source"] = cfg.c ? "option" : "phi-sectional curvature estimate";
  o.notes.push_back(fmt::format("c = {:.6g} ({})", c, cfg.c ? "--c" : "estimated from K(X, phi X)"));
  return verdict_from_report(std::move(o));
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  if (cfg.command == "lemma") {
    j["dim"] = cfg.dim;
    j["trials"] = cfg.trials;
  } else {
    if (!cfg.gallery.empty()) j["gallery"] = cfg.gallery;
    if (!cfg.chart_path.empty()) j["chart"] = cfg.chart_path;
    j["points"] = cfg.points;
    j["probes"] = cfg.probes;
    if (!cfg.derivative_mode.empty()) j["derivative_mode"] = cfg.derivative_mode;
    if (cfg.c) j["c"] = *cfg.c;
  }
  j["seed"] = cfg.seed;
  ordered_json tol = ordered_json::object();
  for (const auto& key : Tolerances::keys()) tol[key] = cfg.tol.get(key);
  j["tolerances"] = tol;
  return j;
}

void emit(const RunConfig& cfg, const Outcome& o, std::ostream& out) {
  if (cfg.json) {
    ordered_json j;
    j["command"] = cfg.command;
    j["config"] = config_json(cfg);
    j["checks"] = to_json(o.report);
    if (!o.summary.empty()) j["summary"] = o.summary;
    j["verdict"] = o.verdict;
    out << j.dump(2) << '\n';
    return;
  }
  const std::string subject = cfg.command == "lemma" ? fmt::format("dim {}, {} trials", cfg.dim, cfg.trials)
                              : !cfg.gallery.empty() ? "gallery " + cfg.gallery
                                                     : cfg.chart_path;
  out << fmt::format("acmslab {}: {} (seed {})\n", cfg.command, subject, cfg.seed);
  out << to_text(o.report);
  for (const auto& n : o.notes) out << n << '\n';
  out << "verdict: " << o.verdict << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Numerical checks for almost contact metric structures", "acmslab"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub, bool with_chart) {
    sub->add_option("--seed", seed, "random seed (default: ACMSLAB_SEED or 0)");
    sub->add_option("--tol", cfg.tol_overrides, "tolerance override key=value")->allow_extra_args(false);
    sub->add_flag("--json", cfg.json, "machine-readable report");
    if (!with_chart) return;
    auto* chart = sub->add_option("--chart", cfg.chart_path, "chart file");
    auto* gal = sub->add_option("--gallery", cfg.gallery, "gallery chart: s5, sasakian_r5, cosymplectic_r5");
    chart->excludes(gal);
    gal->excludes(chart);
    sub->add_option("--probes", cfg.probes, "random probes per residual")->check(CLI::PositiveNumber);
    sub->add_option("--points", cfg.points, "sample points")->check(CLI::PositiveNumber);
    sub->add_option("--derivative-mode", cfg.derivative_mode, "override: symbolic or fd:<h>");
  };

  auto* validate = app.add_subcommand("validate", "structure axioms, contact form and conditions");
  add_common(validate, true);
  auto* lemma = app.add_subcommand("lemma", "random campaign for the dimension lemma");
  add_common(lemma, false);
  lemma->add_option("--dim", cfg.dim, "dimension of D (even)")->required();
  lemma->add_option("--trials", cfg.trials, "number of random operators")->check(CLI::PositiveNumber);
  auto* curvature = app.add_subcommand("curvature", "horizontal sectional curvature survey");
  add_common(curvature, true);
  auto* identities = app.add_subcommand("identities", "modified-connection and curvature identities");
  add_common(identities, true);
  identities->add_option("--c", cfg.c, "phi-sectional curvature (default: estimated)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (seed) {
      cfg.seed = *seed;
    } else if (const char* env = std::getenv("ACMSLAB_SEED"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (*end != '\0' || env[0] == '-') throw InputError(fmt::format("ACMSLAB_SEED is not an integer: '{}'", env));
      cfg.seed = v;
    }
    for (const auto& kv : cfg.tol_overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw InputError(fmt::format("--tol expects key=value, got '{}'", kv));
      char* end = nullptr;
      const std::string value = kv.substr(eq + 1);
      const double v = std::strtod(value.c_str(), &end);
      if (value.empty() || *end != '\0') throw InputError(fmt::format("--tol {}: not a number", kv));
      cfg.tol.set(kv.substr(0, eq), v);
    }
    if (cfg.command != "lemma" && cfg.chart_path.empty() && cfg.gallery.empty()) {
      throw InputError("one of --chart or --gallery is required");
    }

    Outcome o;
    if (cfg.command == "validate") o = cmd_validate(cfg);
    else if (cfg.command == "lemma") o = cmd_lemma(cfg);
    else if (cfg.command == "curvature") o = cmd_curvature(cfg);
    else o = cmd_identities(cfg);
    emit(cfg, o, out);
    return o.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace acmslab::cli
