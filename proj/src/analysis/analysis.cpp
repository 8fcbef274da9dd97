#include "ldsw/analysis/analysis.hpp"

#include "ldsw/exactnum/algexpr.hpp"
#include "ldsw/exactnum/errors.hpp"

namespace ldsw::analysis {

using lrs::ExpTerm;
using lrs::Lrs;

namespace {

// growth of the top part is a single positive real root, so |u_n| -> infinity
std::string growth_kind(const std::vector<const ExpTerm*>& top) {
  if (top.size() == 1 && top[0]->root.is_real() && sign_real(top[0]->root) > 0) return "diverges";
  return "oscillates";
}

}  // namespace

LimitVerdict limit_over_n(const Lrs& s0) {
  Lrs s = lrs::minimize(s0);
  if (lrs::is_zero(s)) return LimitVerdict::of(0);
  lrs::ExpPolyForm f = lrs::exp_poly(s);
  auto& ts = f.terms();
  if (ts.empty()) return LimitVerdict::of(0);  // eventually zero

  // largest modulus, compared exactly against 1
  std::vector<const ExpTerm*> outside, unit;
  for (auto& t : ts) {
    int c = compare_modulus(t.root, 1);
    if (c > 0) outside.push_back(&t);
    if (c == 0) unit.push_back(&t);
  }
  if (!outside.empty()) {
    // dominant modulus among the roots outside the disc, then top degree
    std::vector<const ExpTerm*> top{outside[0]};
    for (size_t i = 1; i < outside.size(); ++i) {
      int c = compare_moduli(outside[i]->root, top[0]->root);
      if (c > 0) top = {outside[i]};
      else if (c == 0) top.push_back(outside[i]);
    }
    int deg = 0;
    for (auto* t : top) deg = std::max(deg, t->degree);
    std::vector<const ExpTerm*> lead;
    for (auto* t : top)
      if (t->degree == deg) lead.push_back(t);
    return LimitVerdict::none(growth_kind(lead));
  }
  if (unit.empty()) return LimitVerdict::of(0);
  int l = 0;
  for (auto* t : unit) l = std::max(l, t->degree);
  if (l == 0) return LimitVerdict::of(0);
  std::vector<const ExpTerm*> level;
  for (auto* t : unit)
    if (t->degree == l) level.push_back(t);
  bool single_one = level.size() == 1 && level[0]->root.is_rational() && level[0]->root.rational() == 1;
  if (!single_one) return LimitVerdict::none("oscillates");
  if (l >= 2) return LimitVerdict::none("diverges");
  AlgNum c = level[0]->coeff(1);
  if (!c.is_rational()) throw Error(ErrorCode::InternalInconsistency, "limit coefficient is not rational");
  if (c.rational() == 0) throw Error(ErrorCode::InternalInconsistency, "top coefficient vanishes");
  return LimitVerdict::of(c.rational());
}

LimitVerdict limit(const Lrs& s) { return limit_over_n(lrs::mul(Lrs::index(), s)); }

LimitVerdict mean_payoff(const QMatrix& M, const RVec& q, const PolyWeight& w) {
  return limit_over_n(lrs::partial_sums(lrs::weight_sequence(M, q, w)));
}

LimitVerdict total_reward(const QMatrix& M, const RVec& q, const PolyWeight& w) {
  return limit(lrs::partial_sums(lrs::weight_sequence(M, q, w)));
}

LimitVerdict discounted_reward(const QMatrix& M, const RVec& q, const PolyWeight& w, const Rational& delta) {
  if (delta <= 0 || delta >= 1) throw Error(ErrorCode::InvalidDiscount, "discount must lie strictly between 0 and 1");
  Lrs ws = lrs::mul(Lrs::geometric(delta), lrs::weight_sequence(M, q, w));
  return limit(lrs::partial_sums(ws));
}

}  // namespace ldsw::analysis
