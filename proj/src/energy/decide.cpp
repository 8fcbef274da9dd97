#include <sstream>

#include "ldsw/energy/energy.hpp"
#include "ldsw/exactnum/errors.hpp"

namespace ldsw::energy {

namespace {

std::optional<AlgNum> rotation_eigenvalue(const QMatrix& M) {
  for (auto& [r, mult] : poly_roots(charpoly(M)))
    if (!r.is_real() && r.approx_im() > 0) return r;
  return std::nullopt;
}

std::string str(unsigned long n) { return std::to_string(n); }

}  // namespace

EnergyVerdict decide_energy_3d(const EnergyInstance& inst) {
  validate(inst);
  if (inst.M.rows() > 3) throw Error(ErrorCode::DimensionTooHigh, "decision procedure covers dimension <= 3");
  EnergyVerdict v;
  if (inst.w.is_constant() && inst.delta == 1) {
    // slack B + c (n + 1)
    Rational c = inst.w.is_zero() ? Rational(0) : inst.w.monomials()[0].coeff;
    if (c >= 0) {
      v.status = inst.budget + c >= 0 ? Status::Satisfied : Status::Violated;
      if (!v.satisfied()) v.witness = 0;
    } else {
      v.status = Status::Violated;
      Integer n = floor_q(inst.budget / -c);
      v.witness = n < 0 ? 0 : n.get_ui();
    }
    v.certificate = "constant weight";
    v.horizon = v.witness ? *v.witness : 0;
    return v;
  }
  lrs::Lrs u = slack_sequence(inst);
  if (lrs::is_zero(u)) {
    v.status = Status::Satisfied;
    v.certificate = "slack is identically zero";
    return v;
  }
  lrs::NondegenerateSplit split = lrs::nondegenerate_split(u);
  unsigned long R = split.R;
  std::optional<AlgNum> g;
  if (auto lam = rotation_eigenvalue(inst.M)) g = alg_pow(*lam, (long)R);
  int P = std::max(1, inst.w.degree());
  v.thresholds.push_back({"R", str(R)});

  std::vector<SignAnalysis> parts;
  for (auto& s : split.subsequences) {
    if (lrs::is_zero(s)) {
      parts.push_back({SignKind::NonnegFrom, 0, "zero"});
      continue;
    }
    lrs::ExpPolyForm f = lrs::exp_poly(s);
    try {
      parts.push_back(eventual_sign(f, g, P));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesisViolated && e.code() != ErrorCode::PrecisionExhausted) throw;
      parts.push_back({SignKind::Inconclusive, 0, e.what()});
    }
  }
  std::ostringstream cert;
  bool inconclusive = false, often = false;
  std::optional<unsigned long> neg_bound;
  unsigned long H = 0;
  for (size_t j = 0; j < parts.size(); ++j) {
    auto& a = parts[j];
    cert << (j ? "; " : "") << "r" << j << ": " << a.certificate;
    switch (a.kind) {
      case SignKind::NonnegFrom:
        v.thresholds.push_back({"N_" + str(j), str(a.N)});
        H = std::max(H, a.N * R + j);
        break;
      case SignKind::NegativeFrom: {
        v.thresholds.push_back({"N_" + str(j), str(a.N)});
        unsigned long b = a.N * R + j;
        neg_bound = neg_bound ? std::min(*neg_bound, b) : b;
        break;
      }
      case SignKind::NegativeOften:
        often = true;
        break;
      case SignKind::Inconclusive:
        inconclusive = true;
        break;
    }
  }
  v.certificate = cert.str();
  if (neg_bound) {
    unsigned long h = std::min(*neg_bound, kDecisionHorizonCap);
    v.status = Status::Violated;
    v.witness = prefix_check(inst, h);
    v.horizon = h;
    if (!v.witness && *neg_bound <= kDecisionHorizonCap)
      throw Error(ErrorCode::InternalInconsistency, "eventually negative slack without a prefix witness");
    return v;
  }
  if (often) {
    v.status = Status::Violated;
    for (unsigned long h = 1024;; h = std::min(2 * h, kDecisionHorizonCap)) {
      v.horizon = h;
      if ((v.witness = prefix_check(inst, h)) || h == kDecisionHorizonCap) break;
    }
    return v;
  }
  if (inconclusive) {
    unsigned long h = 100000;
    v.horizon = h;
    if ((v.witness = prefix_check(inst, h))) v.status = Status::Violated;
    return v;
  }
  H += R;
  v.thresholds.push_back({"H", str(H)});
  if (H > kDecisionHorizonCap) {
    v.horizon = 100000;
    if ((v.witness = prefix_check(inst, v.horizon))) v.status = Status::Violated;
    v.certificate += "; threshold beyond the horizon cap";
    return v;
  }
  v.horizon = H;
  v.witness = prefix_check(inst, H);
  v.status = v.witness ? Status::Violated : Status::Satisfied;
  return v;
}

EnergyInstance gen_positivity_reduction(const stochastic::MarkovChain& chain) {
  stochastic::validate(chain);
  int d = chain.P.rows();
  EnergyInstance inst;
  inst.M = QMatrix(2 * d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inst.M(i, j) = inst.M(d + i, d + j) = chain.P(i, j);
  RVec Mq = chain.P * chain.iota;
  inst.q.assign(2 * d, 0);
  for (int i = 0; i < d; ++i) {
    inst.q[i] = chain.iota[i] / 2;
    inst.q[d + i] = Mq[i] / 2;
  }
  std::vector<int> e1(2 * d, 0), ed(2 * d, 0);
  e1[0] = 1;
  ed[d] = 1;
  inst.w = PolyWeight(2 * d, {{2, ed}, {-2, e1}});
  inst.budget = chain.iota[0] - Rational(1, 2);
  return inst;
}

EnergyInstance gen_diophantine_instance(const Rational& a, const Rational& b, const Rational& r) {
  EnergyInstance inst;
  inst.M = QMatrix::from_rows({{a, -b, 1, 0}, {b, a, 0, 1}, {0, 0, a, -b}, {0, 0, b, a}});
  inst.q = {0, 0, 0, 1};
  auto x = [](int i) {
    std::vector<int> e(4, 0);
    e[i] = 1;
    return e;
  };
  inst.w = PolyWeight(4, {{-r * a - b, x(3 - 1)},
                          {r * b - a, x(4 - 1)},
                          {a - (a * a - b * b), x(2 - 1)},
                          {b - 2 * a * b, x(1 - 1)},
                          {r, x(3 - 1)},
                          {1, std::vector<int>(4, 0)}});
  return inst;
}

}  // namespace ldsw::energy
