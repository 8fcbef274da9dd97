#include "ldsw/stochastic/stochastic.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "ldsw/exactnum/algnum.hpp"
#include "ldsw/exactnum/errors.hpp"
#include "ldsw/lrs/lrs.hpp"

namespace ldsw::stochastic {

void validate(const QMatrix& P) {
  int d = P.rows();
  if (P.cols() != d || d == 0) throw Error(ErrorCode::NotStochastic, "transition matrix must be square and nonempty");
  for (int j = 0; j < d; ++j) {
    Rational s = 0;
    for (int i = 0; i < d; ++i) {
      if (P(i, j) < 0) throw Error(ErrorCode::NotStochastic, "negative transition probability");
      s += P(i, j);
    }
    if (s != 1) throw Error(ErrorCode::NotStochastic, "column " + std::to_string(j) + " does not sum to 1");
  }
}

void validate(const MarkovChain& c) {
  validate(c.P);
  if ((int)c.iota.size() != c.P.rows()) throw Error(ErrorCode::DimensionMismatch, "initial distribution size");
  Rational s = 0;
  for (auto& x : c.iota) {
    if (x < 0) throw Error(ErrorCode::NotStochastic, "negative initial probability");
    s += x;
  }
  if (s != 1) throw Error(ErrorCode::NotStochastic, "initial distribution does not sum to 1");
}

namespace {

struct Tarjan {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> index, low, comp;
  std::vector<bool> on;
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  int counter = 0;

  explicit Tarjan(const std::vector<std::vector<int>>& a)
      : adj(a), index(a.size(), -1), low(a.size()), comp(a.size(), -1), on(a.size()) {
    for (int v = 0; v < (int)a.size(); ++v)
      if (index[v] < 0) visit(v);
  }

  void visit(int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> c;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        comp[w] = (int)sccs.size();
        c.push_back(w);
      } while (w != v);
      std::sort(c.begin(), c.end());
      sccs.push_back(c);
    }
  }
};

}  // namespace

ChainStructure analyze(const QMatrix& P) {
  validate(P);
  int d = P.rows();
  std::vector<std::vector<int>> adj(d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      if (P(i, j) > 0) adj[j].push_back(i);
  Tarjan t(adj);
  ChainStructure cs;
  cs.sccs = t.sccs;
  cs.scc_of = t.comp;
  cs.bottom.assign(cs.sccs.size(), true);
  for (int v = 0; v < d; ++v)
    for (int w : adj[v])
      if (t.comp[w] != t.comp[v]) cs.bottom[t.comp[v]] = false;
  cs.state_period.assign(d, 0);
  long period = 1;
  for (size_t c = 0; c < cs.sccs.size(); ++c) {
    int root = cs.sccs[c][0];
    std::vector<long> level(d, -1);
    level[root] = 0;
    std::queue<int> q;
    q.push(root);
    long g = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (t.comp[w] != (int)c) continue;
        if (level[w] < 0) {
          level[w] = level[v] + 1;
          q.push(w);
        } else {
          g = std::gcd(g, std::labs(level[v] + 1 - level[w]));
        }
      }
    }
    for (int v : cs.sccs[c]) cs.state_period[v] = g;
    if (g > 0) period = std::lcm(period, g);
  }
  cs.period = period;
  cs.irreducible = cs.sccs.size() == 1;
  cs.aperiodic = period == 1;
  return cs;
}

RVec stationary(const QMatrix& P) {
  ChainStructure cs = analyze(P);
  if (!cs.irreducible) throw Error(ErrorCode::NotIrreducible, "stationary distribution requires an irreducible chain");
  int d = P.rows();
  QMatrix A(d + 1, d);
  RVec b(d + 1, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = P(i, j) - (i == j ? 1 : 0);
  for (int j = 0; j < d; ++j) A(d, j) = 1;
  b[d] = 1;
  auto x = solve(A, b);
  if (!x) throw Error(ErrorCode::InternalInconsistency, "no stationary distribution found");
  return *x;
}

namespace {

// every coordinate sequence of A^n v converges: roots inside the disc, or 1 with constant coefficient
void spectral_audit(const QMatrix& A, const RVec& v) {
  for (int i = 0; i < A.rows(); ++i) {
    lrs::Lrs s = lrs::lds_coordinate(A, v, i);
    if (lrs::is_zero(s)) continue;
    lrs::ExpPolyForm f = lrs::exp_poly(s);
    for (auto& t : f.terms()) {
      int c = compare_modulus(t.root, 1);
      bool one = t.root.is_rational() && t.root.rational() == 1;
      if (c > 0 || (c == 0 && !one) || (one && t.degree > 0))
        throw Error(ErrorCode::SpectralPreconditionViolated, "A^n v does not converge");
    }
  }
}

}  // namespace

RVec limit_projection(const QMatrix& A, const RVec& v) {
  int d = A.rows();
  if (A.cols() != d || (int)v.size() != d) throw Error(ErrorCode::DimensionMismatch, "limit_projection sizes");
  spectral_audit(A, v);
  QMatrix B = A - QMatrix::identity(d);
  std::vector<RVec> K = nullspace(B), J = column_basis(B);
  if (K.size() + J.size() != (size_t)d) throw Error(ErrorCode::SpectralPreconditionViolated, "eigenvalue 1 is not semisimple");
  QMatrix S(d, d);
  for (size_t c = 0; c < K.size(); ++c)
    for (int i = 0; i < d; ++i) S(i, c) = K[c][i];
  for (size_t c = 0; c < J.size(); ++c)
    for (int i = 0; i < d; ++i) S(i, K.size() + c) = J[c][i];
  auto coef = solve(S, v);
  if (!coef) throw Error(ErrorCode::SpectralPreconditionViolated, "kernel and image of A - I do not span");
  RVec x(d, 0);
  for (size_t c = 0; c < K.size(); ++c)
    for (int i = 0; i < d; ++i) x[i] += (*coef)[c] * K[c][i];
  return x;
}

EvaluationPoints evaluation_points(const MarkovChain& c) {
  validate(c);
  ChainStructure cs = analyze(c.P);
  EvaluationPoints ep;
  if (cs.irreducible && cs.aperiodic) {
    ep.l = 1;
    ep.points.push_back(stationary(c.P));
    return ep;
  }
  long l = 1;
  if (cs.irreducible) {
    l = cs.period;
  } else {
    for (size_t k = 0; k < cs.sccs.size(); ++k)
      if (cs.bottom[k] && cs.state_period[cs.sccs[k][0]] > 0) l = std::lcm(l, cs.state_period[cs.sccs[k][0]]);
  }
  long d = c.P.rows();
  long ceiling = 1;
  for (long i = 0; i < d && ceiling < (1L << 40); ++i) ceiling *= d;
  if (l > ceiling) throw Error(ErrorCode::InternalInconsistency, "evaluation modulus exceeds d^d");
  ep.l = l;
  QMatrix Pl = c.P.pow(l);
  RVec x = c.iota;
  for (long r = 0; r < l; ++r) {
    ep.points.push_back(limit_projection(Pl, x));
    x = c.P * x;
  }
  return ep;
}

StochasticMeanPayoff mean_payoff_stochastic(const MarkovChain& c, const PolyWeight& w) {
  if (w.arity() != c.P.rows()) throw Error(ErrorCode::DimensionMismatch, "weight arity differs from the dimension");
  StochasticMeanPayoff out;
  out.points = evaluation_points(c);
  Rational s = 0;
  for (auto& p : out.points.points) s += w.eval(p);
  s /= out.points.l;
  out.exact = s;
  out.value = s.get_d();
  return out;
}

StochasticMeanPayoff mean_payoff_stochastic(const MarkovChain& c, const std::function<double(const RVec&)>& w) {
  StochasticMeanPayoff out;
  out.points = evaluation_points(c);
  double s = 0;
  for (auto& p : out.points.points) s += w(p);
  out.value = s / out.points.l;
  return out;
}

}  // namespace ldsw::stochastic
