#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semnet/bigraph.hpp"

namespace semnet {

enum class ModelKind { BiRGM, BiPCM, BiCM };

std::string model_kind_name(ModelKind k);
ModelKind model_kind_from_name(const std::string& name);

struct SolverReport {
  int iterations = 0;
  double max_residual = 0.0;  // max over constraints of |expected - observed|
  bool converged = true;
};

// Maximum-entropy link probabilities for a bipartite graph. Which fields
// are populated depends on `kind`:
//   BiCM  - per-node multipliers x (top), y (bottom): p = xy/(1+xy)
//   BiPCM - per-node rates for the constrained layer
//   BiRGM - a single uniform probability
struct NullModel {
  ModelKind kind = ModelKind::BiRGM;
  int n_top = 0;
  int n_bot = 0;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> rates;
  Layer constrained = Layer::bottom;
  double uniform_p = 0.0;

  double link_probability(int i, int alpha) const;
};

// Fits both degree sequences. Equal degrees share a multiplier (the system
// is solved on degree classes); zero-degree nodes get multiplier 0. Damped
// fixed-point iteration, with a Newton step when progress stagnates.
// Throws DegenerateDegreeError when a node is connected to an entire layer.
std::pair<NullModel, SolverReport> fit_bicm(const BipartiteGraph& g, double tolerance = 1e-8,
                                            int max_iter = 10000);

// Constrains one degree sequence; closed form, exact.
NullModel fit_bipcm(const BipartiteGraph& g, Layer constrained_layer = Layer::bottom);

// Constrains only the total link count: uniform p = L / (N_top * N_bot).
NullModel fit_birgm(const BipartiteGraph& g);

std::string dump_model_json(const NullModel& m, const SolverReport* report = nullptr);
std::pair<NullModel, SolverReport> load_model_json(const std::string& text);

}  // namespace semnet
