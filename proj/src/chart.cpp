#include "acmslab/chart.hpp"

#include "acmslab/error.hpp"
#include "acmslab/random.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace acmslab {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view text, const std::string& where) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InputError(fmt::format("{}: expected a number, got '{}'", where, text));
  }
  return v;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

DerivativeSettings DerivativeSettings::parse(std::string_view text) {
  text = trim(text);
  if (text == "symbolic") return symbolic();
  if (text.starts_with("fd:")) {
    const double h = parse_double(text.substr(3), "derivative_mode");
    if (!(h > 0.0)) throw InputError("derivative_mode: finite-difference step must be positive");
    return finite_difference(h);
  }
  throw InputError(fmt::format("derivative_mode: expected 'symbolic' or 'fd:<h>', got '{}'", text));
}

std::string DerivativeSettings::to_string() const {
  return mode == DerivativeMode::symbolic ? "symbolic" : "fd:" + format_double(step);
}

Chart Chart::parse(std::string_view text, const std::string& source) {
  Chart c;
  c.source_ = source;
  bool have_mode = false;
  std::vector<bool> seen;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view raw =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::string where = fmt::format("{}:{}", source, line_no);

    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) throw InputError(where + ": expected '<key> = <value>'");
    const std::string_view key = trim(raw.substr(0, eq));
    const std::string_view value_raw = raw.substr(eq + 1);
    const std::string_view value = trim(value_raw);

    if (key == "dim") {
      if (c.dim_ != 0) throw InputError(where + ": dim given twice");
      const double d = parse_double(value, where);
      if (d != std::floor(d) || d < 1 || d > 64) {
        throw InputError(where + ": dim must be an integer between 1 and 64");
      }
      c.dim_ = static_cast<int>(d);
      const auto n = static_cast<std::size_t>(c.dim_);
      c.g_.assign(n * n, expr::Expr());
      c.phi_.assign(n * n, expr::Expr());
      c.xi_.assign(n, expr::Expr());
      c.eta_.assign(n, expr::Expr());
      seen.assign(2 * n * n + 2 * n, false);
      continue;
    }
    if (key == "derivative_mode") {
      if (have_mode) throw InputError(where + ": derivative_mode given twice");
      try {
        c.mode_ = DerivativeSettings::parse(value);
      } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
      }
      have_mode = true;
      continue;
    }
    if (key == "sample_box") {
      const auto comma = value.find(',');
      if (comma == std::string_view::npos) throw InputError(where + ": sample_box = <lo>, <hi>");
      c.box_lo_ = parse_double(value.substr(0, comma), where);
      c.box_hi_ = parse_double(value.substr(comma + 1), where);
      if (!(c.box_lo_ < c.box_hi_)) throw InputError(where + ": sample_box needs lo < hi");
      continue;
    }

    // Component line: name[i] or name[i][j].
    const auto bracket = key.find('[');
    if (bracket == std::string_view::npos) {
      throw InputError(fmt::format("{}: unknown key '{}'", where, key));
    }
    if (c.dim_ == 0) throw InputError(where + ": 'dim' must come before components");
    const std::string_view name = trim(key.substr(0, bracket));
    std::vector<int> indices;
    std::string_view rest = key.substr(bracket);
    while (!rest.empty()) {
      if (rest.front() != '[') throw InputError(fmt::format("{}: malformed index in '{}'", where, key));
      const auto close = rest.find(']');
      if (close == std::string_view::npos) throw InputError(fmt::format("{}: missing ']' in '{}'", where, key));
      const std::string_view num = trim(rest.substr(1, close - 1));
      int k = 0;
      const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
      if (ec != std::errc() || ptr != num.data() + num.size() || k < 1 || k > c.dim_) {
        throw InputError(fmt::format("{}: index '{}' out of range 1..{}", where, num, c.dim_));
      }
      indices.push_back(k - 1);
      rest = trim(rest.substr(close + 1));
    }

    const std::size_t n = static_cast<std::size_t>(c.dim_);
    expr::Expr* slot = nullptr;
    std::size_t seen_index = 0;
    auto want = [&](std::size_t count) {
      if (indices.size() != count) {
        throw InputError(fmt::format("{}: '{}' takes {} index(es)", where, name, count));
      }
    };
    if (name == "g") {
      want(2);
      seen_index = c.idx(indices[0], indices[1]);
      slot = &c.g_[seen_index];
    } else if (name == "phi") {
      want(2);
      seen_index = n * n + c.idx(indices[0], indices[1]);
      slot = &c.phi_[c.idx(indices[0], indices[1])];
    } else if (name == "xi") {
      want(1);
      seen_index = 2 * n * n + indices[0];
      slot = &c.xi_[indices[0]];
    } else if (name == "eta") {
      want(1);
      seen_index = 2 * n * n + n + indices[0];
      slot = &c.eta_[indices[0]];
    } else {
      throw InputError(fmt::format("{}: unknown field '{}'", where, name));
    }
    if (seen[seen_index]) throw InputError(fmt::format("{}: '{}' assigned twice", where, key));
    seen[seen_index] = true;

    try {
      *slot = expr::parse(value_raw, c.dim_);
    } catch (const expr::ParseError& e) {
      // Map the expression position to the file position.
      const int column = e.line() == 1 ? static_cast<int>(eq + 1) + e.column() : e.column();
      throw expr::ParseError(fmt::format("{} (in {})", e.reason(), source), line_no + e.line() - 1,
                             column);
    }
  }
  if (c.dim_ == 0) throw InputError(source + ": missing 'dim'");
  c.prepare_symbolic();
  return c;
}

Chart Chart::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open chart file '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::string Chart::to_text() const {
  std::string out;
  out += fmt::format("dim = {}\n", dim_);
  out += fmt::format("derivative_mode = {}\n", mode_.to_string());
  out += fmt::format("sample_box = {}, {}\n", format_double(box_lo_), format_double(box_hi_));
  auto emit2 = [&](const char* name, const std::vector<expr::Expr>& v) {
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        const auto& e = v[idx(i, j)];
        if (!e.is_number(0.0)) out += fmt::format("{}[{}][{}] = {}\n", name, i + 1, j + 1, expr::print(e));
      }
    }
  };
  auto emit1 = [&](const char* name, const std::vector<expr::Expr>& v) {
    for (int i = 0; i < dim_; ++i) {
      if (!v[i].is_number(0.0)) out += fmt::format("{}[{}] = {}\n", name, i + 1, expr::print(v[i]));
    }
  };
  emit2("g", g_);
  emit2("phi", phi_);
  emit1("xi", xi_);
  emit1("eta", eta_);
  return out;
}

Chart Chart::with_mode(DerivativeSettings mode) const {
  Chart c = *this;
  c.mode_ = mode;
  c.dg_.clear();
  c.ddg_.clear();
  c.dphi_.clear();
  c.dxi_.clear();
  c.deta_.clear();
  c.prepare_symbolic();
  return c;
}

void Chart::prepare_symbolic() {
  if (mode_.mode != DerivativeMode::symbolic) return;
  const int n = dim_;
  auto diff_all = [&](const std::vector<expr::Expr>& v, int k) {
    std::vector<expr::Expr> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(expr::differentiate(e, k));
    return out;
  };
  dg_.resize(n);
  dphi_.resize(n);
  dxi_.resize(n);
  deta_.resize(n);
  for (int k = 0; k < n; ++k) {
    dg_[k] = diff_all(g_, k);
    dphi_[k] = diff_all(phi_, k);
    dxi_[k] = diff_all(xi_, k);
    deta_[k] = diff_all(eta_, k);
  }
  ddg_.resize(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      ddg_[idx(k, l)] = diff_all(dg_[k], l);
      if (l != k) ddg_[idx(l, k)] = ddg_[idx(k, l)];
    }
  }
}

void Chart::eval_values(const Vector& x, Matrix& g, Matrix& phi, Vector& xi, Vector& eta) const {
  const std::span<const double> b(x.data(), static_cast<std::size_t>(x.size()));
  g.resize(dim_, dim_);
  phi.resize(dim_, dim_);
  xi.resize(dim_);
  eta.resize(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      g(i, j) = expr::eval(g_[idx(i, j)], b);
      phi(i, j) = expr::eval(phi_[idx(i, j)], b);
    }
    xi(i) = expr::eval(xi_[i], b);
    eta(i) = expr::eval(eta_[i], b);
  }
}

Matrix Chart::eval_g(const Vector& x) const {
  const std::span<const double> b(x.data(), static_cast<std::size_t>(x.size()));
  Matrix g(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) g(i, j) = expr::eval(g_[idx(i, j)], b);
  }
  return g;
}

std::string format_point(const Vector& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) s += ", ";
    s += fmt::format("{:.6g}", x(i));
  }
  return s + ")";
}

FieldJet Chart::jet(const Vector& point, int order) const {
  if (point.size() != dim_) {
    throw DimensionError(fmt::format("Chart::jet: point has {} coordinates, chart dim {}",
                                     point.size(), dim_));
  }
  const int n = dim_;
  FieldJet j;
  j.point = point;
  try {
    eval_values(point, j.g, j.phi, j.xi, j.eta);
    if (order < 1) return j;

    j.dg.assign(n, Matrix::Zero(n, n));
    j.dphi.assign(n, Matrix::Zero(n, n));
    j.dxi = Matrix::Zero(n, n);
    j.deta = Matrix::Zero(n, n);
    if (order >= 2) j.ddg.assign(n, std::vector<Matrix>(n, Matrix::Zero(n, n)));

    if (mode_.mode == DerivativeMode::symbolic) {
      const std::span<const double> b(point.data(), static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        for (int a = 0; a < n; ++a) {
          for (int c = 0; c < n; ++c) {
            j.dg[k](a, c) = expr::eval(dg_[k][idx(a, c)], b);
            j.dphi[k](a, c) = expr::eval(dphi_[k][idx(a, c)], b);
          }
          j.dxi(a, k) = expr::eval(dxi_[k][a], b);
          j.deta(a, k) = expr::eval(deta_[k][a], b);
        }
      }
      if (order >= 2) {
        for (int k = 0; k < n; ++k) {
          for (int l = k; l < n; ++l) {
            for (int a = 0; a < n; ++a) {
              for (int c = 0; c < n; ++c) j.ddg[k][l](a, c) = expr::eval(ddg_[idx(k, l)][idx(a, c)], b);
            }
            j.ddg[l][k] = j.ddg[k][l];
          }
        }
      }
      return j;
    }

    // Central differences.
    const double h = mode_.step;
    for (int k = 0; k < n; ++k) {
      Vector xp = point, xm = point;
      xp(k) += h;
      xm(k) -= h;
      Matrix gp, gm, pp, pm;
      Vector xip, xim, ep, em;
      eval_values(xp, gp, pp, xip, ep);
      eval_values(xm, gm, pm, xim, em);
      j.dg[k] = (gp - gm) / (2 * h);
      j.dphi[k] = (pp - pm) / (2 * h);
      j.dxi.col(k) = (xip - xim) / (2 * h);
      j.deta.col(k) = (ep - em) / (2 * h);
      if (order >= 2) j.ddg[k][k] = (gp - 2 * j.g + gm) / (h * h);
    }
    if (order >= 2) {
      for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
          Vector pp = point, pm = point, mp = point, mm = point;
          pp(k) += h; pp(l) += h;
          pm(k) += h; pm(l) -= h;
          mp(k) -= h; mp(l) += h;
          mm(k) -= h; mm(l) -= h;
          j.ddg[k][l] = (eval_g(pp) - eval_g(pm) - eval_g(mp) + eval_g(mm)) / (4 * h * h);
          j.ddg[l][k] = j.ddg[k][l];
        }
      }
    }
  } catch (const expr::EvalError& e) {
    throw Error(fmt::format("{} at point {} of chart {}", e.what(), format_point(point), source_));
  }
  return j;
}

std::vector<Vector> Chart::sample_points(int count, std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(uniform_vector(rng, dim_, box_lo_, box_hi_));
  return out;
}

}  // namespace acmslab
