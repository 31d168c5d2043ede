#include "semnet/nullmodels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "semnet/util.hpp"

namespace semnet {

std::string model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::BiRGM: return "birgm";
    case ModelKind::BiPCM: return "bipcm";
    case ModelKind::BiCM: return "bicm";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "birgm") return ModelKind::BiRGM;
  if (name == "bipcm") return ModelKind::BiPCM;
  if (name == "bicm") return ModelKind::BiCM;
  throw std::invalid_argument("unknown model kind '" + name + "'");
}

double NullModel::link_probability(int i, int alpha) const {
  if (i < 0 || i >= n_top || alpha < 0 || alpha >= n_bot)
    throw std::out_of_range("link_probability: index out of range");
  switch (kind) {
    case ModelKind::BiRGM:
      return uniform_p;
    case ModelKind::BiPCM:
      return constrained == Layer::bottom ? rates[alpha] : rates[i];
    case ModelKind::BiCM: {
      const double xy = x[i] * y[alpha];
      return xy / (1.0 + xy);
    }
  }
  return 0.0;
}

namespace {

// Degree classes for the reduced BiCM system: nodes with equal degree share
// one unknown.
struct Classes {
  std::vector<double> deg;     // class degree (> 0)
  std::vector<double> mult;    // class multiplicity
  std::vector<int> node_class; // node -> class, -1 for zero-degree nodes
};

Classes reduce(const std::vector<int>& degs) {
  std::map<int, int> ids;
  Classes c;
  c.node_class.assign(degs.size(), -1);
  for (std::size_t i = 0; i < degs.size(); ++i) {
    if (degs[i] == 0) continue;
    auto [it, fresh] = ids.emplace(degs[i], static_cast<int>(c.deg.size()));
    if (fresh) {
      c.deg.push_back(degs[i]);
      c.mult.push_back(0.0);
    }
    c.node_class[i] = it->second;
    c.mult[it->second] += 1.0;
  }
  return c;
}

// In-place Gaussian elimination with partial pivoting; returns false when
// the system is (near-)singular.
bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    double s = b[col];
    for (int k = col + 1; k < n; ++k) s -= a[col][k] * b[k];
    b[col] = s / a[col][col];
  }
  return true;
}

double residual_of(const Classes& tc, const Classes& bc, const std::vector<double>& X,
                   const std::vector<double>& Y) {
  double res = 0.0;
  for (std::size_t c = 0; c < tc.deg.size(); ++c) {
    double e = 0.0;
    for (std::size_t d = 0; d < bc.deg.size(); ++d) {
      const double xy = X[c] * Y[d];
      e += bc.mult[d] * xy / (1.0 + xy);
    }
    res = std::max(res, std::abs(e - tc.deg[c]));
  }
  for (std::size_t d = 0; d < bc.deg.size(); ++d) {
    double e = 0.0;
    for (std::size_t c = 0; c < tc.deg.size(); ++c) {
      const double xy = X[c] * Y[d];
      e += tc.mult[c] * xy / (1.0 + xy);
    }
    res = std::max(res, std::abs(e - bc.deg[d]));
  }
  return res;
}

// One Newton step on u = ln X, v = ln Y. Returns false if the linear solve
// fails or the step does not reduce the residual.
bool newton_step(const Classes& tc, const Classes& bc, std::vector<double>& X,
                 std::vector<double>& Y) {
  const int nt = static_cast<int>(tc.deg.size());
  const int nb = static_cast<int>(bc.deg.size());
  const int n = nt + nb;
  std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
  std::vector<double> F(n, 0.0);
  for (int c = 0; c < nt; ++c) {
    for (int d = 0; d < nb; ++d) {
      const double xy = X[c] * Y[d];
      const double p = xy / (1.0 + xy);
      const double w = p * (1.0 - p);
      F[c] += bc.mult[d] * p;
      J[c][c] += bc.mult[d] * w;
      J[c][nt + d] = bc.mult[d] * w;
      F[nt + d] += tc.mult[c] * p;
      J[nt + d][nt + d] += tc.mult[c] * w;
      J[nt + d][c] = tc.mult[c] * w;
    }
    F[c] -= tc.deg[c];
  }
  for (int d = 0; d < nb; ++d) F[nt + d] -= bc.deg[d];
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = -F[i];
  if (!solve_dense(J, rhs)) return false;

  const double before = residual_of(tc, bc, X, Y);
  for (double step = 1.0; step > 1e-4; step *= 0.5) {
    std::vector<double> Xn(nt), Yn(nb);
    bool sane = true;
    for (int c = 0; c < nt && sane; ++c) {
      const double s = std::clamp(step * rhs[c], -30.0, 30.0);
      Xn[c] = X[c] * std::exp(s);
      sane = std::isfinite(Xn[c]) && Xn[c] > 0.0;
    }
    for (int d = 0; d < nb && sane; ++d) {
      const double s = std::clamp(step * rhs[nt + d], -30.0, 30.0);
      Yn[d] = Y[d] * std::exp(s);
      sane = std::isfinite(Yn[d]) && Yn[d] > 0.0;
    }
    if (!sane) continue;
    if (residual_of(tc, bc, Xn, Yn) < before) {
      X = std::move(Xn);
      Y = std::move(Yn);
      return true;
    }
  }
  return false;
}

}  // namespace

std::pair<NullModel, SolverReport> fit_bicm(const BipartiteGraph& g, double tolerance, int max_iter) {
  const auto h = degrees(g, Layer::top);
  const auto k = degrees(g, Layer::bottom);
  const int nt = g.num_top(), nb = g.num_bottom();
  for (int i = 0; i < nt; ++i)
    if (nb > 0 && h[i] == nb)
      throw DegenerateDegreeError("top node '" + g.top_labels[i] + "' is connected to the entire bottom layer");
  for (int a = 0; a < nb; ++a)
    if (nt > 0 && k[a] == nt)
      throw DegenerateDegreeError("bottom node '" + g.bottom_labels[a] + "' is connected to the entire top layer");

  const Classes tc = reduce(h);
  const Classes bc = reduce(k);
  const double L = static_cast<double>(g.num_edges());
  const double scale = std::sqrt(std::max(L, 1.0));
  std::vector<double> X(tc.deg.size()), Y(bc.deg.size());
  for (std::size_t c = 0; c < tc.deg.size(); ++c) X[c] = tc.deg[c] / scale;
  for (std::size_t d = 0; d < bc.deg.size(); ++d) Y[d] = bc.deg[d] / scale;

  SolverReport report;
  double res = residual_of(tc, bc, X, Y);
  double best_window_res = res;
  int window = 0;
  while (res > tolerance && report.iterations < max_iter) {
    for (std::size_t c = 0; c < tc.deg.size(); ++c) {
      double denom = 0.0;
      for (std::size_t d = 0; d < bc.deg.size(); ++d) denom += bc.mult[d] * Y[d] / (1.0 + X[c] * Y[d]);
      if (denom > 0.0) X[c] = tc.deg[c] / denom;
    }
    for (std::size_t d = 0; d < bc.deg.size(); ++d) {
      double denom = 0.0;
      for (std::size_t c = 0; c < tc.deg.size(); ++c) denom += tc.mult[c] * X[c] / (1.0 + X[c] * Y[d]);
      if (denom > 0.0) Y[d] = bc.deg[d] / denom;
    }
    ++report.iterations;
    res = residual_of(tc, bc, X, Y);
    if (++window >= 50) {
      if (res > 0.5 * best_window_res) newton_step(tc, bc, X, Y), res = residual_of(tc, bc, X, Y);
      best_window_res = res;
      window = 0;
    }
  }
  report.max_residual = res;
  report.converged = res <= tolerance;

  NullModel m;
  m.kind = ModelKind::BiCM;
  m.n_top = nt;
  m.n_bot = nb;
  m.x.assign(nt, 0.0);
  m.y.assign(nb, 0.0);
  for (int i = 0; i < nt; ++i)
    if (tc.node_class[i] >= 0) m.x[i] = X[tc.node_class[i]];
  for (int a = 0; a < nb; ++a)
    if (bc.node_class[a] >= 0) m.y[a] = Y[bc.node_class[a]];
  return {std::move(m), report};
}

NullModel fit_bipcm(const BipartiteGraph& g, Layer constrained_layer) {
  NullModel m;
  m.kind = ModelKind::BiPCM;
  m.n_top = g.num_top();
  m.n_bot = g.num_bottom();
  m.constrained = constrained_layer;
  const auto d = degrees(g, constrained_layer);
  const int other = constrained_layer == Layer::bottom ? m.n_top : m.n_bot;
  m.rates.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    m.rates[i] = other > 0 ? static_cast<double>(d[i]) / other : 0.0;
  return m;
}

NullModel fit_birgm(const BipartiteGraph& g) {
  if (g.num_top() == 0 || g.num_bottom() == 0)
    throw std::invalid_argument("fit_birgm: empty layer");
  NullModel m;
  m.kind = ModelKind::BiRGM;
  m.n_top = g.num_top();
  m.n_bot = g.num_bottom();
  m.uniform_p = static_cast<double>(g.num_edges()) /
                (static_cast<double>(m.n_top) * static_cast<double>(m.n_bot));
  return m;
}

std::string dump_model_json(const NullModel& m, const SolverReport* report) {
  nlohmann::json j;
  j["kind"] = model_kind_name(m.kind);
  j["shape"] = {m.n_top, m.n_bot};
  switch (m.kind) {
    case ModelKind::BiCM:
      j["x"] = m.x;
      j["y"] = m.y;
      break;
    case ModelKind::BiPCM:
      j["constrained"] = m.constrained == Layer::bottom ? "bottom" : "top";
      j["rates"] = m.rates;
      break;
    case ModelKind::BiRGM:
      j["p"] = m.uniform_p;
      break;
  }
  if (report) {
    j["report"] = {{"iterations", report->iterations},
                   {"max_residual", report->max_residual},
                   {"converged", report->converged}};
  }
  return j.dump(2);
}

std::pair<NullModel, SolverReport> load_model_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  NullModel m;
  m.kind = model_kind_from_name(j.at("kind").get<std::string>());
  m.n_top = j.at("shape").at(0).get<int>();
  m.n_bot = j.at("shape").at(1).get<int>();
  switch (m.kind) {
    case ModelKind::BiCM:
      m.x = j.at("x").get<std::vector<double>>();
      m.y = j.at("y").get<std::vector<double>>();
      break;
    case ModelKind::BiPCM:
      m.constrained = j.at("constrained").get<std::string>() == "bottom" ? Layer::bottom : Layer::top;
      m.rates = j.at("rates").get<std::vector<double>>();
      break;
    case ModelKind::BiRGM:
      m.uniform_p = j.at("p").get<double>();
      break;
  }
  SolverReport r;
  if (j.contains("report")) {
    r.iterations = j["report"].value("iterations", 0);
    r.max_residual = j["report"].value("max_residual", 0.0);
    r.converged = j["report"].value("converged", true);
  }
  return {std::move(m), r};
}

}  // namespace semnet
