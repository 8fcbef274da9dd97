#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldsw/exactnum/algnum.hpp"
#include "ldsw/exactnum/matrix.hpp"
#include "ldsw/lrs/lrs.hpp"
#include "ldsw/lrs/weight.hpp"
#include "ldsw/stochastic/stochastic.hpp"

namespace ldsw::energy {

// Weights delta^n w(M^n q); the constraint is sum_{k<=n} w_k >= -budget for every n.
struct EnergyInstance {
  QMatrix M;
  RVec q;
  PolyWeight w;
  Rational budget = 0;
  Rational delta = 1;
};

// throws DimensionMismatch, InvalidParameters (delta outside (0, 1])
void validate(const EnergyInstance& inst);
// n -> budget + sum_{k<=n} delta^k w(M^k q)
lrs::Lrs slack_sequence(const EnergyInstance& inst);
// exact sum_{k<=n} delta^k w(M^k q)
Rational partial_sum(const EnergyInstance& inst, unsigned long n);

// smallest n <= horizon with the partial sum below -budget
std::optional<unsigned long> prefix_check(const EnergyInstance& inst, unsigned long horizon);

struct BakerBound {
  int m = 0;
  long D = 0;
  Rational A, Bp;
  Rational value;  // rational lower bound of -(16 m D)^(2(m+2)) (log A)^m log Bp
};
// throws InvalidParameters
BakerBound baker_lower_bound(int m, long D, const Rational& A, const Rational& Bp);

struct BakerThreshold {
  unsigned long N = 1;
  Integer C;  // |alpha^n - beta| > n^-C for n > N
  long D = 0;
  Rational A;
};
// alpha unit modulus and not a root of unity, beta nonzero; throws PreconditionViolated
BakerThreshold baker_threshold(const AlgNum& alpha, const AlgNum& beta);

enum class CircleSign { Negative, Zero, Positive };
// sign of min over |z| = 1 of sum_k b[k] z^(k - K), b of odd length 2K + 1 with b[2K - k] = conj(b[k]).
// throws NotRealValued; PrecisionExhausted when the coefficients leave Q(i) and the minimum is 0
CircleSign min_on_circle(const std::vector<AlgNum>& b);
// certified lower bound of the minimum, for a positive minimum
double min_on_circle_lower(const std::vector<AlgNum>& b);

enum class SignKind {
  NonnegFrom,     // u_n >= 0 for n >= N
  NegativeFrom,   // u_n < 0 for n >= N
  NegativeOften,  // u_n < 0 for infinitely many n
  Inconclusive,
};

struct SignAnalysis {
  SignKind kind = SignKind::Inconclusive;
  unsigned long N = 0;
  std::string certificate;
};

// eventual sign of a real LRS that is non-degenerate; generator is lambda with every non-real root
// equal to a positive real times a power of lambda / |lambda|
SignAnalysis eventual_sign(const lrs::ExpPolyForm& f, const std::optional<AlgNum>& generator, int max_power);

enum class SignDecision { AlwaysNonneg, NegativeAt, NegInfinitelyOften, Inconclusive };
struct RestrictedSign {
  SignDecision decision = SignDecision::Inconclusive;
  unsigned long N = 0;             // threshold from the sign analysis
  std::optional<unsigned long> n;  // first negative index for NegativeAt
  std::string certificate;
};
// u_n = sum c_i Lambda_i^n, each Lambda_i a positive real times a power of gamma / |gamma|;
// throws HypothesisViolated
RestrictedSign restricted_sign_decision(const std::vector<std::pair<AlgNum, AlgNum>>& terms, const AlgNum& gamma);

enum class Status { Satisfied, Violated, Inconclusive };
struct EnergyVerdict {
  Status status = Status::Inconclusive;
  std::optional<unsigned long> witness;
  std::string certificate;
  std::vector<std::pair<std::string, std::string>> thresholds;
  unsigned long horizon = 0;  // prefix checked exactly
  bool satisfied() const { return status == Status::Satisfied; }
};

// largest finite horizon the decision will check before giving up
constexpr unsigned long kDecisionHorizonCap = 20000000;

// throws DimensionTooHigh for d > 3
EnergyVerdict decide_energy_3d(const EnergyInstance& inst);

// doubled chain, t = (q/2, Mq/2), w = 2(x_{d+1} - x_1), and budget e_1.q - 1/2:
// the constraint at n reads e_1^T M^{n+1} q >= 1/2
EnergyInstance gen_positivity_reduction(const stochastic::MarkovChain& chain);
// partial sums equal r Im(lambda^{n+1}) - (n+1) Re(lambda^{n+1}) + n + 1 for lambda = a + bi; budget 0
EnergyInstance gen_diophantine_instance(const Rational& a, const Rational& b, const Rational& r);

}  // namespace ldsw::energy
