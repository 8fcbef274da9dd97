#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "ldsw/energy/energy.hpp"
#include "ldsw/exactnum/algnum.hpp"
#include "ldsw/exactnum/matrix.hpp"
#include "ldsw/lrs/weight.hpp"
#include "ldsw/torus/torus.hpp"

namespace ldsw::io {

using Json = nlohmann::json;

enum class SystemKind { General, Stochastic };

struct SystemFile {
  QMatrix matrix;
  RVec initial;
  PolyWeight weight;
  std::optional<Rational> discount;
  std::optional<Rational> budget;
  SystemKind kind = SystemKind::General;

  bool operator==(const SystemFile& o) const;
};

// throws ParseError with line and column for malformed JSON, DimensionMismatch for bad shapes
SystemFile parse_system(const std::string& text);
// two-space indented JSON, sorted keys, trailing newline
std::string emit_system(const SystemFile& f);

Json rational_json(const Rational& q);
Rational json_rational(const Json& j, const std::string& where);

// {"poly": integer coefficients low to high, "re", "im"}
Json algnum_json(const AlgNum& a);
Json integrand_json(const torus::TorusIntegrand& f);
Json verdict_json(const energy::EnergyVerdict& v);

}  // namespace ldsw::io
