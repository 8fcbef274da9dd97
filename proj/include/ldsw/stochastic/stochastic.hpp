#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ldsw/exactnum/matrix.hpp"
#include "ldsw/lrs/weight.hpp"

namespace ldsw::stochastic {

// Column-stochastic P (P(i, j) is the probability of moving from j to i) and a distribution.
struct MarkovChain {
  QMatrix P;
  RVec iota;
};

// throws NotStochastic
void validate(const QMatrix& P);
void validate(const MarkovChain& c);

struct ChainStructure {
  std::vector<std::vector<int>> sccs;  // in reverse topological order of the condensation
  std::vector<bool> bottom;            // per SCC
  std::vector<int> scc_of;             // per state
  std::vector<long> state_period;      // 0 for states that never return
  long period = 1;                     // lcm of the nonzero state periods
  bool irreducible = false;
  bool aperiodic = false;
};

ChainStructure analyze(const QMatrix& P);
// unique distribution with P pi = pi; throws NotIrreducible
RVec stationary(const QMatrix& P);
// lim A^n v, for A with eigenvalue 1 semisimple and every other eigenvalue inside the unit disc
RVec limit_projection(const QMatrix& A, const RVec& v);

struct EvaluationPoints {
  long l = 1;
  std::vector<RVec> points;
};
EvaluationPoints evaluation_points(const MarkovChain& c);

struct StochasticMeanPayoff {
  EvaluationPoints points;
  std::optional<Rational> exact;  // for polynomial weights
  double value = 0;
};
StochasticMeanPayoff mean_payoff_stochastic(const MarkovChain& c, const PolyWeight& w);
StochasticMeanPayoff mean_payoff_stochastic(const MarkovChain& c, const std::function<double(const RVec&)>& w);

}  // namespace ldsw::stochastic
