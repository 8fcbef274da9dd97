#include "ldsw/cli/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ldsw/analysis/analysis.hpp"
#include "ldsw/energy/energy.hpp"
#include "ldsw/exactnum/errors.hpp"
#include "ldsw/io/json_io.hpp"
#include "ldsw/stochastic/stochastic.hpp"
#include "ldsw/torus/torus.hpp"

namespace ldsw::cli {

using io::Json;

namespace {

struct Options {
  std::string file;
  std::string method = "exact";
  std::string eps = "1/1000";
  std::string delta, budget, out;
  unsigned long horizon = 100000;
  long search_bound = 0;
  std::string lambda = "3/5+4/5i", r = "0";
};

io::SystemFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return io::parse_system(ss.str());
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + o.out);
  f << text;
}

void print(const Json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

int limit_result(const char* method, const analysis::LimitVerdict& v, std::ostream& out) {
  Json j{{"method", method}, {"exists", v.exists()}};
  if (v.exists()) j["value"] = format_rational_full(v.value);
  else j["diagnostic"] = v.diagnostic;
  print(j, out);
  return v.exists() ? kComputed : kNegative;
}

std::string modulus_class(const AlgNum& a) {
  int c = compare_modulus(a, 1);
  return c < 0 ? "<1" : c == 0 ? "=1" : ">1";
}

int cmd_classify(const Options& o, std::ostream& out) {
  io::SystemFile f = load(o.file);
  Json j;
  j["dimension"] = f.matrix.rows();
  Json eig = Json::array();
  for (auto& [root, mult] : poly_roots(charpoly(f.matrix))) {
    Json e = io::algnum_json(root);
    e["value"] = root.to_string();
    e["multiplicity"] = mult;
    e["modulus"] = modulus_class(root);
    auto ord = root.is_zero() ? std::nullopt : root_of_unity_order(root);
    e["root_of_unity"] = ord ? Json(*ord) : Json(nullptr);
    eig.push_back(e);
  }
  j["eigenvalues"] = eig;
  torus::Boundedness b = torus::is_bounded(f.matrix, f.initial);
  j["bounded"] = b.bounded;
  if (!b.bounded) j["unbounded_witness"] = b.witness;
  bool stoch = true;
  try {
    stochastic::validate(stochastic::MarkovChain{f.matrix, f.initial});
  } catch (const Error&) {
    stoch = false;
  }
  j["stochastic"] = stoch;
  if (stoch) {
    stochastic::ChainStructure cs = stochastic::analyze(f.matrix);
    Json bs = Json::array();
    for (size_t k = 0; k < cs.sccs.size(); ++k)
      if (cs.bottom[k]) bs.push_back(cs.sccs[k]);
    j["chain"] = {{"irreducible", cs.irreducible}, {"aperiodic", cs.aperiodic}, {"period", cs.period}, {"bscc", bs}};
  }
  print(j, out);
  return kComputed;
}

int cmd_meanpayoff(const Options& o, std::ostream& out) {
  io::SystemFile f = load(o.file);
  if (o.method == "exact") return limit_result("exact", analysis::mean_payoff(f.matrix, f.initial, f.weight), out);
  if (o.method == "stochastic") {
    if (f.kind != io::SystemKind::Stochastic)
      throw Error(ErrorCode::IncompatibleMethod, "stochastic method needs a file of kind \"stochastic\"");
    auto r = stochastic::mean_payoff_stochastic({f.matrix, f.initial}, f.weight);
    print(Json{{"method", "stochastic"}, {"exists", true}, {"value", format_rational_full(*r.exact)}, {"period", r.points.l}}, out);
    return kComputed;
  }
  if (o.method == "integral") {
    Rational eps = parse_rational(o.eps);
    if (eps <= 0) throw Error(ErrorCode::InvalidParameters, "--eps must be positive");
    torus::TorusIntegrand t = torus::integrand(f.matrix, f.initial, f.weight, o.search_bound);
    torus::IntegralEnclosure e = torus::approximate_integral(t, eps.get_d());
    print(Json{{"method", "integral"}, {"lo", e.lo}, {"hi", e.hi}, {"grid", e.grid}, {"m", t.m}, {"R", t.R}}, out);
    return kComputed;
  }
  throw Error(ErrorCode::IncompatibleMethod, "unknown method " + o.method);
}

int cmd_total(const Options& o, std::ostream& out) {
  io::SystemFile f = load(o.file);
  return limit_result("total", analysis::total_reward(f.matrix, f.initial, f.weight), out);
}

int cmd_discounted(const Options& o, std::ostream& out) {
  io::SystemFile f = load(o.file);
  std::optional<Rational> delta = f.discount;
  if (!o.delta.empty()) delta = parse_rational(o.delta);
  if (!delta) throw Error(ErrorCode::InvalidDiscount, "no discount given (--delta or the file's \"discount\")");
  return limit_result("discounted", analysis::discounted_reward(f.matrix, f.initial, f.weight, *delta), out);
}

int cmd_energy(const Options& o, std::ostream& out, std::ostream& err) {
  io::SystemFile f = load(o.file);
  energy::EnergyInstance inst{f.matrix, f.initial, f.weight, f.budget.value_or(0), f.discount.value_or(1)};
  if (!o.budget.empty()) inst.budget = parse_rational(o.budget);
  if (!o.delta.empty()) inst.delta = parse_rational(o.delta);
  energy::validate(inst);
  if (inst.M.rows() > 3) {
    auto w = energy::prefix_check(inst, o.horizon);
    Json j{{"status", w ? "violated" : "inconclusive"}, {"witness", w ? Json(*w) : Json(nullptr)}, {"horizon", o.horizon}};
    if (!w) {
      j["message"] = "dimension > 3: falsification only";
      err << "dimension > 3: falsification only\n";
    }
    print(j, out);
    return w ? kNegative : kInconclusive;
  }
  energy::EnergyVerdict v = energy::decide_energy_3d(inst);
  print(io::verdict_json(v), out);
  switch (v.status) {
    case energy::Status::Satisfied: return kComputed;
    case energy::Status::Violated: return kNegative;
    default: return kInconclusive;
  }
}

int cmd_integrand(const Options& o, std::ostream& out) {
  io::SystemFile f = load(o.file);
  torus::TorusIntegrand t = torus::integrand(f.matrix, f.initial, f.weight, o.search_bound);
  emit(io::integrand_json(t).dump(2) + "\n", o, out);
  return kComputed;
}

// "a+bi", "a-bi", "bi", "a"
std::pair<Rational, Rational> parse_gaussian(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty --lambda");
  if (s.back() != 'i') return {parse_rational(s), 0};
  s.pop_back();
  size_t k = s.find_last_of("+-");
  std::string re = k == std::string::npos || k == 0 ? "0" : s.substr(0, k);
  std::string im = k == std::string::npos ? s : s.substr(k == 0 ? 0 : k);
  if (im == "+" || im == "" ) im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im = im.substr(1);
  return {parse_rational(re), parse_rational(im)};
}

int cmd_genhard(const std::string& which, const Options& o, std::ostream& out) {
  energy::EnergyInstance inst;
  if (which == "positivity") {
    io::SystemFile f = load(o.file);
    inst = energy::gen_positivity_reduction({f.matrix, f.initial});
  } else {
    auto [a, b] = parse_gaussian(o.lambda);
    if (a == 0 && b == 0) throw Error(ErrorCode::InvalidParameters, "lambda must be nonzero");
    inst = energy::gen_diophantine_instance(a, b, parse_rational(o.r));
  }
  io::SystemFile g{inst.M, inst.q, inst.w, std::nullopt, inst.budget,
                   which == "positivity" ? io::SystemKind::Stochastic : io::SystemKind::General};
  emit(io::emit_system(g), o, out);
  return kComputed;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::RelationSearchInconclusive:
    case ErrorCode::DimensionTooHigh:
    case ErrorCode::PrecisionExhausted:
      return kInconclusive;
    default:
      return kInputError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean payoff, total reward and energy analysis of linear dynamical systems", "ldsw"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--search-bound", o.search_bound, "relation search bound (default 64 or LDSW_SEARCH_BOUND)")
      ->check(CLI::PositiveNumber);

  auto file_cmd = [&](const char* name, const char* desc) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option("file", o.file, "system file (JSON)")->required();
    return c;
  };
  CLI::App* classify = file_cmd("classify", "eigenvalues, boundedness and chain structure");
  CLI::App* mp = file_cmd("meanpayoff", "mean payoff of the orbit");
  mp->add_option("--method", o.method, "exact, integral or stochastic")->check(CLI::IsMember({"exact", "integral", "stochastic"}));
  mp->add_option("--eps", o.eps, "half-width for the integral method (rational)");
  CLI::App* total = file_cmd("total", "total reward");
  CLI::App* disc = file_cmd("discounted", "discounted reward");
  disc->add_option("--delta", o.delta, "discount factor (rational)");
  CLI::App* en = file_cmd("energy", "energy constraint with a budget");
  en->add_option("--budget", o.budget, "budget B (rational)");
  en->add_option("--delta", o.delta, "discount factor (rational)");
  en->add_option("--horizon", o.horizon, "prefix horizon for falsification");
  CLI::App* ig = file_cmd("integrand", "torus integrand of the limit shape");
  ig->add_option("--out", o.out, "output file");
  CLI::App* gh = app.add_subcommand("genhard", "hard energy instances");
  gh->require_subcommand(1);
  CLI::App* pos = gh->add_subcommand("positivity", "reduction from a Markov chain");
  pos->add_option("file", o.file, "chain file")->required();
  pos->add_option("--out", o.out, "output file");
  CLI::App* dio = gh->add_subcommand("diophantine", "dimension 4 instance for lambda and r");
  dio->add_option("--lambda", o.lambda, "a+bi with rational a, b");
  dio->add_option("--r", o.r, "rational r");
  dio->add_option("--out", o.out, "output file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kComputed;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  try {
    if (*classify) return cmd_classify(o, out);
    if (*mp) return cmd_meanpayoff(o, out);
    if (*total) return cmd_total(o, out);
    if (*disc) return cmd_discounted(o, out);
    if (*en) return cmd_energy(o, out, err);
    if (*ig) return cmd_integrand(o, out);
    if (*pos) return cmd_genhard("positivity", o, out);
    if (*dio) return cmd_genhard("diophantine", o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return kInputError;
}

}  // namespace ldsw::cli
