#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldsw/exactnum/algnum.hpp"
#include "ldsw/exactnum/matrix.hpp"
#include "ldsw/lrs/weight.hpp"

namespace ldsw::torus {

struct Boundedness {
  bool bounded = true;
  int coordinate = -1;  // violating coordinate, -1 when bounded
  std::optional<AlgNum> root;
  int degree = 0;
  std::string witness;
};
Boundedness is_bounded(const QMatrix& M, const RVec& q);

struct RelationBasis {
  std::vector<std::vector<long>> generators;  // Hermite normal form rows
  long search_bound = 0;
};

// 64 unless LDSW_SEARCH_BOUND is set
long default_search_bound();
// lattice of v with prod gamma_i^v_i = 1 among |v|_inf <= bound; throws RelationSearchInconclusive
RelationBasis relation_basis(const std::vector<AlgNum>& gammas, long bound = 0);
bool satisfies_relation(const std::vector<AlgNum>& gammas, const std::vector<long>& v);

// base^power * prod_j z_j^e_j with z_j^-1 read as conj(z_j)
struct TorusMonomial {
  AlgNum base;
  long power = 0;
  std::vector<long> exps;
};

// lambda_i^{nR+r} = rho_i^{nR+r} p[i][r](sigma(n theta))
struct DenseSubsequenceData {
  long R = 1;
  int m = 0;
  std::vector<AlgNum> gamma;  // independent unit-modulus generators
  std::vector<AlgNum> rho;    // per input, positive real
  std::vector<std::vector<TorusMonomial>> p;  // [i][r]
  long search_bound = 0;
};
DenseSubsequenceData dense_subsequence_data(const std::vector<AlgNum>& lambdas, long bound = 0);
// certified check of the defining identity for n <= nmax; returns the first failure
std::optional<std::string> audit_identity(const DenseSubsequenceData& ds, const std::vector<AlgNum>& lambdas,
                                          long nmax = 50);

// one summand of a coordinate map: coeff * base^power * e^{2 pi i <exps, x>}
struct PhaseMonomial {
  AlgNum coeff;
  AlgNum base;
  long power = 0;
  std::vector<long> exps;
  std::complex<double> value;  // coeff * base^power rounded
};

struct TorusIntegrand {
  int d = 0;
  int m = 0;
  long R = 1;
  std::vector<AlgNum> gamma;
  // maps[r][i] is coordinate i of q_r, real valued on the torus
  std::vector<std::vector<std::vector<PhaseMonomial>>> maps;
  std::optional<PolyWeight> poly;
  std::function<double(const std::vector<double>&)> weight;
  double decay_radius = 0;  // largest discarded modulus, 0 when nothing was dropped

  // q_r(sigma(x)) in doubles
  std::vector<double> point(long r, const std::vector<double>& x) const;
  // certified enclosure of q_r(sigma(x))
  std::vector<CInterval> point_enclosure(long r, const std::vector<Rational>& x, long bits = 64) const;
  double operator()(const std::vector<double>& x) const;
  // |q_r^(i)| <= coordinate_bound()[i] on the whole torus
  std::vector<double> coordinate_bound() const;
  // sup over r, i of sum |coeff| * 2 pi |exps_k|, per axis k
  std::vector<double> coordinate_slope() const;
};

// throws NotBounded, RelationSearchInconclusive
TorusIntegrand integrand(const QMatrix& M, const RVec& q, const PolyWeight& w, long bound = 0);
// weight with |w(y) - w(y')| <= L |y - y'|_inf supplied at integration time
TorusIntegrand integrand(const QMatrix& M, const RVec& q, std::function<double(const std::vector<double>&)> w,
                         long bound = 0);

struct IntegralEnclosure {
  double lo = 0, hi = 0;
  double mid() const { return (lo + hi) / 2; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  long grid = 0;  // points per axis
  double lipschitz = 0;
};
// Lipschitz constant of f in the 1-norm on [0,1)^m, derived for polynomial weights
double lipschitz_bound(const TorusIntegrand& f);
// width <= 2 eps; weight_lipschitz is ignored for polynomial weights
IntegralEnclosure approximate_integral(const TorusIntegrand& f, double eps, double weight_lipschitz = 0);

struct ShapeSample {
  std::vector<Interval> x;  // real parts, certified
  long residue = 0;
};
std::vector<ShapeSample> limit_shape_sample(const QMatrix& M, const RVec& q, long count, long bound = 0);

}  // namespace ldsw::torus
