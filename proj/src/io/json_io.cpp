#include "ldsw/io/json_io.hpp"

#include "ldsw/exactnum/errors.hpp"

namespace ldsw::io {

bool SystemFile::operator==(const SystemFile& o) const {
  if (matrix.rows() != o.matrix.rows() || matrix.cols() != o.matrix.cols()) return false;
  for (int i = 0; i < matrix.rows(); ++i)
    for (int j = 0; j < matrix.cols(); ++j)
      if (matrix(i, j) != o.matrix(i, j)) return false;
  if (initial != o.initial || discount != o.discount || budget != o.budget || kind != o.kind) return false;
  if (weight.arity() != o.weight.arity() || weight.monomials().size() != o.weight.monomials().size()) return false;
  for (size_t k = 0; k < weight.monomials().size(); ++k) {
    auto &a = weight.monomials()[k], &b = o.weight.monomials()[k];
    if (a.coeff != b.coeff || a.exps != b.exps) return false;
  }
  return true;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::pair<size_t, size_t> line_col(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

Json rational_json(const Rational& q) { return format_rational(q); }

Rational json_rational(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  fail(where + ": expected a rational string \"p/q\"");
}

SystemFile parse_system(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    fail("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  SystemFile f;
  const Json& rows = field(j, "matrix");
  if (!rows.is_array() || rows.empty()) fail("matrix must be a nonempty array of rows");
  int d = (int)rows.size();
  f.matrix = QMatrix(d, d);
  for (int i = 0; i < d; ++i) {
    if (!rows[i].is_array() || (int)rows[i].size() != d)
      throw Error(ErrorCode::DimensionMismatch, "matrix row " + std::to_string(i) + " must have " + std::to_string(d) + " entries");
    for (int k = 0; k < d; ++k) f.matrix(i, k) = json_rational(rows[i][k], "matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  const Json& init = field(j, "initial");
  if (!init.is_array() || (int)init.size() != d) throw Error(ErrorCode::DimensionMismatch, "initial must have " + std::to_string(d) + " entries");
  for (int i = 0; i < d; ++i) f.initial.push_back(json_rational(init[i], "initial[" + std::to_string(i) + "]"));
  std::vector<Monomial> ms;
  const Json& w = field(j, "weight");
  if (!w.is_array()) fail("weight must be an array of monomials");
  for (size_t k = 0; k < w.size(); ++k) {
    std::string where = "weight[" + std::to_string(k) + "]";
    if (!w[k].is_object()) fail(where + " must be an object");
    Monomial m{json_rational(field(w[k], "coeff"), where + ".coeff"), {}};
    const Json& e = field(w[k], "exponents");
    if (!e.is_array() || (int)e.size() != d) throw Error(ErrorCode::DimensionMismatch, where + ".exponents must have " + std::to_string(d) + " entries");
    for (auto& x : e) {
      if (!x.is_number_integer() || x.get<long>() < 0) fail(where + ".exponents must be natural numbers");
      m.exps.push_back(x.get<int>());
    }
    ms.push_back(std::move(m));
  }
  f.weight = PolyWeight(d, ms);
  if (j.contains("discount")) f.discount = json_rational(j["discount"], "discount");
  if (j.contains("budget")) f.budget = json_rational(j["budget"], "budget");
  if (j.contains("kind")) {
    const Json& k = j["kind"];
    if (k == "general") f.kind = SystemKind::General;
    else if (k == "stochastic") f.kind = SystemKind::Stochastic;
    else fail("kind must be \"general\" or \"stochastic\"");
  }
  return f;
}

std::string emit_system(const SystemFile& f) {
  Json j;
  Json rows = Json::array();
  for (int i = 0; i < f.matrix.rows(); ++i) {
    Json r = Json::array();
    for (int k = 0; k < f.matrix.cols(); ++k) r.push_back(rational_json(f.matrix(i, k)));
    rows.push_back(r);
  }
  j["matrix"] = rows;
  Json init = Json::array();
  for (auto& x : f.initial) init.push_back(rational_json(x));
  j["initial"] = init;
  Json w = Json::array();
  for (auto& m : f.weight.monomials()) w.push_back({{"coeff", rational_json(m.coeff)}, {"exponents", m.exps}});
  j["weight"] = w;
  if (f.discount) j["discount"] = rational_json(*f.discount);
  if (f.budget) j["budget"] = rational_json(*f.budget);
  j["kind"] = f.kind == SystemKind::Stochastic ? "stochastic" : "general";
  return j.dump(2) + "\n";
}

Json algnum_json(const AlgNum& a) {
  Json p = Json::array();
  for (auto& c : minimal_polynomial(a).c) p.push_back(c.get_str());
  return {{"poly", p}, {"re", a.approx_re()}, {"im", a.approx_im()}};
}

Json integrand_json(const torus::TorusIntegrand& f) {
  Json j;
  j["dimension"] = f.d;
  j["m"] = f.m;
  j["R"] = f.R;
  Json g = Json::array();
  for (auto& x : f.gamma) g.push_back(algnum_json(x));
  j["gamma"] = g;
  Json maps = Json::array();
  for (auto& per_r : f.maps) {
    Json coords = Json::array();
    for (auto& terms : per_r) {
      Json ts = Json::array();
      for (auto& t : terms)
        ts.push_back({{"coeff", algnum_json(t.coeff)},
                      {"base", algnum_json(t.base)},
                      {"power", t.power},
                      {"exponents", t.exps},
                      {"value", {t.value.real(), t.value.imag()}}});
      coords.push_back(ts);
    }
    maps.push_back(coords);
  }
  j["maps"] = maps;
  j["decay_radius"] = f.decay_radius;
  return j;
}

Json verdict_json(const energy::EnergyVerdict& v) {
  Json j;
  switch (v.status) {
    case energy::Status::Satisfied: j["status"] = "satisfied"; break;
    case energy::Status::Violated: j["status"] = "violated"; break;
    case energy::Status::Inconclusive: j["status"] = "inconclusive"; break;
  }
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  j["certificate"] = v.certificate;
  Json t = Json::object();
  for (auto& [k, x] : v.thresholds) t[k] = x;
  j["thresholds"] = t;
  j["horizon"] = v.horizon;
  return j;
}

}  // namespace ldsw::io
