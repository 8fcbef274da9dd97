#include "ldsw/exactnum/rational.hpp"

#include <cmath>

#include "ldsw/exactnum/errors.hpp"

namespace ldsw {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroSequence: return "ZeroSequence";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::InvalidDiscount: return "InvalidDiscount";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::SpectralPreconditionViolated: return "SpectralPreconditionViolated";
    case ErrorCode::NotBounded: return "NotBounded";
    case ErrorCode::RelationSearchInconclusive: return "RelationSearchInconclusive";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotRealValued: return "NotRealValued";
    case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IncompatibleMethod: return "IncompatibleMethod";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
  }
  return "Unknown";
}

std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string format_rational_full(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

static bool valid_int(const std::string& s, bool allow_sign) {
  size_t i = 0;
  if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw Error(ErrorCode::ParseError, "not a rational: \"" + s + "\"");
  if (num[0] == '+') num = num.substr(1);
  Integer d(den);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator: \"" + s + "\"");
  Rational r{Integer(num), d};
  r.canonicalize();
  return r;
}

Integer floor_q(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil_q(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational abs_q(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Rational pow_q(const Rational& r, long e) {
  if (e < 0) {
    if (r == 0) throw Error(ErrorCode::DivisionByZero, "0^negative");
    return pow_q(Rational(1) / r, -e);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), r.get_num_mpz_t(), (unsigned long)e);
  mpz_pow_ui(out.get_den_mpz_t(), r.get_den_mpz_t(), (unsigned long)e);
  out.canonicalize();
  return out;
}

Integer pow_z(const Integer& b, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

Integer lcm_z(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

long ilog2(const Integer& x) { return (long)mpz_sizeinbase(x.get_mpz_t(), 2) - 1; }

double log2_upper(const Rational& r) {
  return double(ilog2(r.get_num()) + 1) - double(ilog2(r.get_den()));
}

}  // namespace ldsw
