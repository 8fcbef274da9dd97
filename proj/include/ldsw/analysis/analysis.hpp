#pragma once

#include <string>

#include "ldsw/lrs/lrs.hpp"

namespace ldsw::analysis {

struct LimitVerdict {
  enum class Tag { DoesNotExist, Exists };
  Tag tag = Tag::DoesNotExist;
  Rational value;           // meaningful when tag == Exists
  std::string diagnostic;   // "diverges" or "oscillates" when the limit does not exist

  bool exists() const { return tag == Tag::Exists; }
  static LimitVerdict of(const Rational& v) { return {Tag::Exists, v, ""}; }
  static LimitVerdict none(std::string why) { return {Tag::DoesNotExist, 0, std::move(why)}; }
};

// lim u_n / n
LimitVerdict limit_over_n(const lrs::Lrs& s);
// lim u_n
LimitVerdict limit(const lrs::Lrs& s);

LimitVerdict mean_payoff(const QMatrix& M, const RVec& q, const PolyWeight& w);
LimitVerdict total_reward(const QMatrix& M, const RVec& q, const PolyWeight& w);
LimitVerdict discounted_reward(const QMatrix& M, const RVec& q, const PolyWeight& w, const Rational& delta);

}  // namespace ldsw::analysis
