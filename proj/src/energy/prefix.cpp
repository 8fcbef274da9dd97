#include <cmath>
#include <limits>

#include "ldsw/energy/energy.hpp"
#include "ldsw/exactnum/errors.hpp"
#include "ldsw/exactnum/interval.hpp"

namespace ldsw::energy {

void validate(const EnergyInstance& inst) {
  int d = inst.M.rows();
  if (inst.M.cols() != d || (int)inst.q.size() != d) throw Error(ErrorCode::DimensionMismatch, "matrix and vector sizes");
  if (inst.w.arity() != d) throw Error(ErrorCode::DimensionMismatch, "weight arity differs from the dimension");
  if (inst.delta <= 0 || inst.delta > 1) throw Error(ErrorCode::InvalidParameters, "discount must lie in (0, 1]");
}

lrs::Lrs slack_sequence(const EnergyInstance& inst) {
  validate(inst);
  lrs::Lrs ws = lrs::weight_sequence(inst.M, inst.q, inst.w);
  if (inst.delta != 1) ws = lrs::mul(lrs::Lrs::geometric(inst.delta), ws);
  return lrs::minimize(lrs::add(lrs::partial_sums(ws), lrs::Lrs::constant(inst.budget)));
}

Rational partial_sum(const EnergyInstance& inst, unsigned long n) {
  return lrs::term_fast(slack_sequence(inst), n) - inst.budget;
}

namespace {

constexpr double kU = std::numeric_limits<double>::epsilon() / 2;
constexpr double kTiny = 0x1p-960;

// midpoint-radius double with exact rounding errors folded into the radius
struct MR {
  double m = 0, r = 0;
};

MR from_q(const Rational& q, const MR*) {
  double m = q.get_d();
  if (!std::isfinite(m)) return {m, INFINITY};
  if (Rational(m) == q) return {m, 0};
  return {m, std::fabs(m) * 4 * kU + kTiny};
}

MR operator+(MR a, MR b) {
  double s = a.m + b.m, bb = s - a.m;
  double e = (a.m - (s - bb)) + (b.m - bb);
  double r = a.r + b.r + std::fabs(e);
  return {s, r == 0 ? 0 : r * (1 + 4 * kU)};
}

MR operator*(MR a, MR b) {
  double p = a.m * b.m;
  double e = std::fma(a.m, b.m, -p);
  double r = std::fabs(a.m) * b.r + a.r * std::fabs(b.m) + a.r * b.r + std::fabs(e);
  if (std::fabs(p) < 0x1p-900 && a.m != 0 && b.m != 0) r += kTiny;
  return {p, r == 0 ? 0 : r * (1 + 8 * kU)};
}

// 1: certainly >= 0, -1: certainly < 0, 0: undecided
int sign_class(const MR& a) {
  if (a.m >= a.r) return 1;
  if (a.r < -a.m) return -1;
  return 0;
}
bool finite(const MR& a) { return std::isfinite(a.m) && std::isfinite(a.r) && std::fabs(a.m) < 1e300; }

struct IV {
  Interval v{160};
};

IV from_q(const Rational& q, const IV*) { return {Interval::from_q(q, 160)}; }
IV operator+(const IV& a, const IV& b) { return {a.v + b.v}; }
IV operator*(const IV& a, const IV& b) { return {a.v * b.v}; }
int sign_class(const IV& a) {
  if (a.v.nonnegative()) return 1;
  if (a.v.negative()) return -1;
  return 0;
}
bool finite(const IV& a) { return mpfr_number_p(a.v.lo()) && mpfr_number_p(a.v.hi()); }

struct Scan {
  std::optional<unsigned long> witness;
  bool overflow = false;
  std::optional<unsigned long> exact_from;
};

class Exact {
 public:
  explicit Exact(const EnergyInstance& inst) : inst_(inst) {}
  // budget + partial sum at n
  Rational slack(unsigned long n) {
    if (!u_) u_ = slack_sequence(inst_);
    return lrs::term_fast(*u_, n);
  }

 private:
  const EnergyInstance& inst_;
  std::optional<lrs::Lrs> u_;
};

template <class T>
struct WeightT {
  std::vector<T> coeff;
  std::vector<std::vector<int>> exps;
  T zero;

  explicit WeightT(const PolyWeight& w) {
    const T* tag = nullptr;
    zero = from_q(0, tag);
    for (auto& m : w.monomials()) {
      coeff.push_back(from_q(m.coeff, tag));
      exps.push_back(m.exps);
    }
  }
  T operator()(const std::vector<T>& x) const {
    T s = zero;
    for (size_t m = 0; m < coeff.size(); ++m) {
      T t = coeff[m];
      for (size_t i = 0; i < x.size(); ++i)
        for (int e = 0; e < exps[m][i]; ++e) t = t * x[i];
      s = s + t;
    }
    return s;
  }
};

template <class T>
Scan scan(const EnergyInstance& inst, unsigned long horizon, Exact& ex) {
  const T* tag = nullptr;
  int d = inst.M.rows();
  std::vector<T> M(d * d), x(d), y(d);
  for (int i = 0; i < d; ++i) {
    x[i] = from_q(inst.q[i], tag);
    for (int j = 0; j < d; ++j) M[i * d + j] = from_q(inst.M(i, j), tag);
  }
  // stepwise iterates suffer from wrapping, so every kReseed steps x is recomputed as (M^kReseed)^k q
  // by binary powering, where the radius grows only polynomially in k
  constexpr unsigned long kReseed = 32;
  QMatrix MBq = inst.M.pow(kReseed);
  std::vector<T> MB(d * d), q0(d);
  for (int i = 0; i < d; ++i) {
    q0[i] = from_q(inst.q[i], tag);
    for (int j = 0; j < d; ++j) MB[i * d + j] = from_q(MBq(i, j), tag);
  }
  auto matmul = [d, tag](const std::vector<T>& A, const std::vector<T>& B) {
    std::vector<T> C(d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        T acc = from_q(0, tag);
        for (int k = 0; k < d; ++k) acc = acc + A[i * d + k] * B[k * d + j];
        C[i * d + j] = acc;
      }
    return C;
  };
  auto reseed = [&](unsigned long k) {
    std::vector<T> R, B = MB;
    bool have = false;
    for (; k; k >>= 1) {
      if (k & 1) {
        R = have ? matmul(R, B) : B;
        have = true;
      }
      if (k > 1) B = matmul(B, B);
    }
    for (int i = 0; i < d; ++i) {
      T acc = from_q(0, tag);
      for (int j = 0; j < d; ++j) acc = acc + R[i * d + j] * q0[j];
      x[i] = acc;
    }
  };
  T delta = from_q(inst.delta, tag), dn = from_q(1, tag), sum = from_q(inst.budget, tag);
  bool discounted = inst.delta != 1;
  WeightT<T> weight(inst.w);
  const T zero = from_q(0, tag);
  int undecided = 0;
  Scan out;
  for (unsigned long n = 0; n <= horizon; ++n) {
    T wv = weight(x);
    sum = sum + (discounted ? dn * wv : wv);
    if (!finite(sum)) {
      out.overflow = true;
      return out;
    }
    int s = sign_class(sum);
    if (s < 0) {
      out.witness = n;
      return out;
    }
    if (s == 0) {
      if (ex.slack(n) < 0) {
        out.witness = n;
        return out;
      }
      if (++undecided > 256) {
        out.exact_from = n + 1;
        return out;
      }
    }
    for (int i = 0; i < d; ++i) {
      T acc = zero;
      for (int j = 0; j < d; ++j) acc = acc + M[i * d + j] * x[j];
      y[i] = acc;
    }
    std::swap(x, y);
    if ((n + 1) % kReseed == 0) reseed((n + 1) / kReseed);
    if (discounted) dn = dn * delta;
  }
  return out;
}

std::optional<unsigned long> exact_scan(const EnergyInstance& inst, unsigned long from, unsigned long horizon,
                                        Exact& ex) {
  if (from > horizon) return std::nullopt;
  RVec x = inst.M.pow(from) * inst.q;
  Rational dn = pow_q(inst.delta, (long)from);
  Rational sum = from == 0 ? inst.budget : ex.slack(from - 1);
  for (unsigned long n = from; n <= horizon; ++n) {
    sum += dn * inst.w.eval(x);
    if (sum < 0) return n;
    x = inst.M * x;
    dn *= inst.delta;
  }
  return std::nullopt;
}

}  // namespace

std::optional<unsigned long> prefix_check(const EnergyInstance& inst, unsigned long horizon) {
  validate(inst);
  if (inst.w.is_zero()) {
    if (inst.budget < 0) return 0;
    return std::nullopt;
  }
  Exact ex(inst);
  Scan s = scan<MR>(inst, horizon, ex);
  if (s.overflow) s = scan<IV>(inst, horizon, ex);
  if (s.witness) return s.witness;
  if (s.exact_from) return exact_scan(inst, *s.exact_from, horizon, ex);
  if (s.overflow) throw Error(ErrorCode::PrecisionExhausted, "prefix scan overflow");
  return std::nullopt;
}

}  // namespace ldsw::energy
