// cuntz: exact computations in ordered-semigroup models.
//
// Every subcommand prints a text report by default or a JSON document with
// --format json; exit code 0 means all requested checks passed, 1 means a
// check failed, 2 means the configuration was unusable.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cuntz/axioms.hpp"
#include "cuntz/dense.hpp"
#include "cuntz/grothendieck.hpp"
#include "cuntz/limits.hpp"
#include "cuntz/lsc.hpp"
#include "cuntz/models.hpp"
#include "cuntz/registry.hpp"
#include "cuntz/spectral.hpp"
#include "cuntz/states.hpp"
#include "cuntz/wtilde.hpp"
#include "json.hpp"

namespace {

using namespace cuntz;
using nlohmann::json;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::uint64_t budget = 200;
  std::size_t horizon = 64;
  bool timings = false;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("invalid json in '" + path + "': " + e.what());
  }
}

// One uniform output document per command.
struct Report {
  std::string command;
  json config = json::object();
  json verdicts = json::array();
  json witnesses = json::array();
  std::vector<std::string> lines;
  bool failed = false;

  void verdict(const std::string& name, bool pass, const std::string& witness = "") {
    verdicts.push_back(json{{"check", name}, {"pass", pass}});
    if (!pass) {
      failed = true;
      if (!witness.empty()) witnesses.push_back(json{{"check", name}, {"witness", witness}});
    }
    lines.push_back(name + ": " + (pass ? "pass" : ("fail" + (witness.empty() ? "" : " (" + witness + ")"))));
  }

  void info(const std::string& line) { lines.push_back(line); }

  int finish(const Options& opt, double elapsedMs) const {
    if (opt.format == "json") {
      json doc{{"command", command},
               {"config", config},
               {"verdicts", verdicts},
               {"witnesses", witnesses},
               {"pass", !failed}};
      if (opt.timings) doc["elapsed_ms"] = elapsedMs;
      std::cout << doc.dump(2) << "\n";
    } else {
      for (const auto& l : lines) std::cout << l << "\n";
      if (opt.timings) std::cout << "elapsed: " << elapsedMs << " ms\n";
    }
    return failed ? 1 : 0;
  }
};

void addAxiomEntries(Report& rep, const AxiomReport& ar) {
  for (const auto& e : ar.entries)
    rep.verdict(ar.model + "/" + e.axiom, e.verdict != "fail", e.witness);
}

ModelPtr modelFromFlags(const std::string& name, const std::string& file) {
  if (!name.empty() && !file.empty())
    throw ConfigError("give either --model or --model-file, not both");
  if (!name.empty()) {
    try {
      return modelByName(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (file.empty()) throw ConfigError("a model is required (--model or --model-file)");
  json j = loadJsonFile(file);
  try {
    if (j.contains("model") && j["model"].is_string())
      return modelByName(j["model"].get<std::string>());
    if (j.contains("monoid"))
      return std::make_shared<MonoidCuModel>(j.value("name", std::string("monoid")),
                                             FgCommMonoid::fromJson(j["monoid"]));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad model spec: ") + e.what());
  }
  throw ConfigError("model spec needs a 'model' name or a 'monoid' object");
}

CuSystem systemFromSpec(const json& j) {
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "uhf") {
      std::uint64_t k = j.at("k").get<std::uint64_t>();
      return uhfSystem(k);
    }
    if (kind == "af") {
      std::vector<std::vector<std::uint64_t>> mult;
      for (const auto& row : j.at("mult")) {
        std::vector<std::uint64_t> r;
        for (const auto& v : row) r.push_back(v.get<std::uint64_t>());
        mult.push_back(std::move(r));
      }
      return afSystem(mult, j.value("name", std::string()));
    }
    throw ConfigError("unknown system kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad system spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::uint64_t> parseDims(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty()) throw ConfigError("empty entry in dimension list '" + s + "'");
    out.push_back(std::stoull(piece));
  }
  if (out.empty()) throw ConfigError("empty dimension list");
  return out;
}

std::vector<Rat> parseRatList(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string piece;
  while (std::getline(ss, piece, ',')) out.push_back(ratFromString(piece));
  if (out.empty()) throw ConfigError("empty rational list");
  return out;
}

Rat parseRatFlag(const std::string& s, const std::string& flag) {
  try {
    return ratFromString(s);
  } catch (const std::invalid_argument&) {
    throw ConfigError("flag " + flag + " needs an exact rational, got '" + s + "'");
  }
}

// --tolerance key=value, repeatable.
void applyTolerances(const std::vector<std::string>& kvs, KrOptions& opt) {
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("tolerance '" + kv + "' is not key=value");
    std::string key = kv.substr(0, eq);
    double val = 0;
    try {
      val = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("tolerance '" + kv + "' has a non-numeric value");
    }
    if (val <= 0) throw ConfigError("tolerance '" + kv + "' must be positive");
    if (key == "output")
      opt.outputTolerance = val;
    else if (key == "rank")
      opt.rankTolerance = val;
    else
      throw ConfigError("unknown tolerance key '" + key + "' (output, rank)");
  }
}

int cmdCheckAxioms(const Options& opt, const std::string& model, const std::string& modelFile,
                   double startMs, const std::chrono::steady_clock::time_point& t0) {
  (void)startMs;
  ModelPtr m = modelFromFlags(model, modelFile);
  Report rep;
  rep.command = "check-axioms";
  rep.config = {{"model", m->name()}, {"budget", opt.budget}, {"seed", opt.seed}};
  auto ax = checkCuAxioms(*m, opt.budget, opt.seed);
  addAxiomEntries(rep, ax);
  auto ord = checkOrderTheory(*m, opt.budget, opt.seed);
  addAxiomEntries(rep, ord);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

CuMorphism namedMorphism(const std::string& name, const std::string& modelFlag) {
  if (name == "double") {
    ModelPtr m = modelFromFlags(modelFlag.empty() ? "extnat" : modelFlag, "");
    return CuMorphism{"double on " + m->name(), m, m,
                      [m](const Elem& x) -> std::optional<Elem> { return m->add(x, x); }};
  }
  if (name == "embed-goodearl") {
    auto wt = functorF(goodearlElliott());
    auto map = goodearlToRecovered(*wt);
    return CuMorphism{"goodearl -> wtilde(goodearl)", goodearlModel(), wt,
                      [map](const Elem& x) -> std::optional<Elem> { return map(x); }};
  }
  if (name == "embed-rotation") {
    auto wt = functorF(rotationElliott());
    auto map = rotationToRecovered(*wt);
    return CuMorphism{"rotation -> wtilde(rotation)", rotationModel(), wt,
                      [map](const Elem& x) -> std::optional<Elem> { return map(x); }};
  }
  throw ConfigError("unknown morphism '" + name +
                    "' (double, embed-goodearl, embed-rotation)");
}

int cmdCheckMorphism(const Options& opt, const std::string& name, const std::string& model,
                     const std::chrono::steady_clock::time_point& t0) {
  CuMorphism f = namedMorphism(name, model);
  Report rep;
  rep.command = "check-morphism";
  rep.config = {{"morphism", f.name}, {"budget", opt.budget}, {"seed", opt.seed}};
  auto mr = checkCuMorphism(f, opt.budget, opt.seed);
  for (const auto& e : mr.entries) rep.verdict(e.axiom, e.verdict != "fail", e.witness);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdCompare(const Options& opt, const std::string& model, const std::string& xs,
               const std::string& ys, const std::chrono::steady_clock::time_point& t0) {
  ModelPtr m = modelFromFlags(model, "");
  Elem x, y;
  try {
    x = m->parseElem(xs);
    y = m->parseElem(ys);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  bool le = m->leq(x, y);
  bool wb = m->wayBelow(x, y);
  Report rep;
  rep.command = "compare";
  rep.config = {{"model", m->name()}, {"x", m->printElem(x)}, {"y", m->printElem(y)}};
  std::ostringstream os;
  os << m->printElem(x) << " <= " << m->printElem(y) << ": " << (le ? "true" : "false")
     << "; " << m->printElem(x) << " << " << m->printElem(y) << ": "
     << (wb ? "true" : "false");
  rep.info(os.str());
  rep.verdicts.push_back(json{{"check", "leq"}, {"value", le}});
  rep.verdicts.push_back(json{{"check", "wayBelow"}, {"value", wb}});
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

SpectralElement parseSpectral(const std::string& lit) {
  try {
    return SpectralElement::parse(lit);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int cmdEpsCut(const Options& opt, const std::string& lit, const std::string& epsStr,
              const std::chrono::steady_clock::time_point& t0) {
  SpectralElement a = parseSpectral(lit);
  Rat eps = parseRatFlag(epsStr, "--eps");
  if (eps < 0) throw ConfigError("--eps must be nonnegative");
  SpectralElement cut = epsCut(a, eps);
  Report rep;
  rep.command = "eps-cut";
  rep.config = {{"element", a.str()}, {"eps", ratToString(eps)}};
  rep.info("input: " + a.str());
  rep.info("cut:   " + cut.str());
  std::string cls;
  for (const auto& r : cuntzClass(cut)) cls += (cls.empty() ? "" : ", ") + r.str();
  rep.info("class: (" + cls + ")");
  rep.verdicts.push_back(json{{"check", "cut"}, {"value", cut.toJson()}});
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdDTau(const Options& opt, const std::string& lit, const std::string& dims,
            const std::string& weights, const std::chrono::steady_clock::time_point& t0) {
  SpectralElement a = parseSpectral(lit);
  auto dv = parseDims(dims);
  Report rep;
  rep.command = "dtau";
  rep.config = {{"element", a.str()}, {"dims", dims}};
  std::vector<TraceSpec> traces;
  if (weights.empty()) {
    traces = TraceSpec::vertexTraces(dv);
  } else {
    try {
      traces.emplace_back(parseRatList(weights), dv);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  try {
    for (std::size_t i = 0; i < traces.size(); ++i) {
      Rat v = dTau(traces[i], a);
      rep.info("trace " + std::to_string(i) + ": d_tau = " + ratToString(v));
      rep.verdicts.push_back(json{{"check", "dtau" + std::to_string(i)},
                                  {"value", ratToString(v)}});
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdKrContract(const Options& opt, const std::string& aFile, const std::string& bFile,
                  const std::string& epsStr, const std::vector<std::string>& tolerances,
                  bool longDouble, const std::chrono::steady_clock::time_point& t0) {
  DenseElement a, b;
  try {
    a = DenseElement::fromJson(loadJsonFile(aFile));
    b = DenseElement::fromJson(loadJsonFile(bFile));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad dense element: ") + e.what());
  }
  Rat eps = parseRatFlag(epsStr, "--eps");
  if (eps <= 0) throw ConfigError("--eps must be positive");
  KrOptions kopt;
  kopt.longDouble = longDouble;
  applyTolerances(tolerances, kopt);
  Report rep;
  rep.command = "kr-contract";
  rep.config = {{"a", aFile}, {"b", bFile}, {"eps", ratToString(eps)},
                {"outputTolerance", kopt.outputTolerance}};
  try {
    KrResult res = krContraction(a, b, eps, kopt);
    rep.info("r = " + std::to_string(res.r) + ", eps1 = " + std::to_string(res.eps1));
    rep.info("residual = " + std::to_string(res.residual) +
             ", |d| = " + std::to_string(res.dNorm) +
             ", iterations = " + std::to_string(res.iterations));
    rep.verdict("residual within tolerance", res.residual <= kopt.outputTolerance);
    rep.verdict("contraction norm", res.dNorm <= 1.0 + kopt.outputTolerance);
    rep.verdicts.push_back(json{{"check", "residual"}, {"value", res.residual}});
    rep.verdicts.push_back(json{{"check", "dNorm"}, {"value", res.dNorm}});
  } catch (const ConvergenceError& e) {
    rep.verdict("convergence", false, e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdGroth(const Options& opt, const std::string& monoidFile, const std::string& model,
             const std::chrono::steady_clock::time_point& t0) {
  Report rep;
  rep.command = "groth";
  if (!monoidFile.empty()) {
    json j = loadJsonFile(monoidFile);
    FgCommMonoid m = [&] {
      try {
        return FgCommMonoid::fromJson(j.contains("monoid") ? j["monoid"] : j);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }();
    auto g = grothGroup(m);
    rep.config = {{"monoid", monoidFile}};
    rep.info(g.summary());
    rep.verdicts.push_back(json{{"check", "group"}, {"value", g.toJson()}});
  } else {
    ModelPtr m = modelFromFlags(model.empty() ? "extnat" : model, "");
    rep.config = {{"model", m->name()}, {"budget", opt.budget}, {"seed", opt.seed}};
    auto k = k0StarCheck(*m, opt.budget, opt.seed);
    rep.info(k.summary());
    for (const auto& e : k.entries)
      rep.verdict(m->name() + "/" + e.axiom, e.verdict != "fail", e.witness);
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdStates(const Options& opt, const std::string& monoidFile, const std::string& fixture,
              const std::string& unitStr, const std::chrono::steady_clock::time_point& t0) {
  FgCommMonoid m = [&]() -> FgCommMonoid {
    if (!fixture.empty()) {
      if (fixture == "perforated") return perforatedFixtureMonoid();
      throw ConfigError("unknown fixture '" + fixture + "' (perforated)");
    }
    if (monoidFile.empty()) throw ConfigError("states needs --monoid or --fixture");
    json j = loadJsonFile(monoidFile);
    try {
      return FgCommMonoid::fromJson(j.contains("monoid") ? j["monoid"] : j);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  std::string unit = unitStr;
  if (unit.empty()) {
    if (fixture.empty()) throw ConfigError("states needs --unit");
    unit = "(2, 2)";
  }
  MonElem u = [&] {
    try {
      return MonElem::parse(unit, m.dim());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  Report rep;
  rep.command = "states";
  rep.config = {{"unit", u.str()}};
  try {
    auto st = findStates(m, u);
    rep.info(st.summary());
    rep.verdicts.push_back(json{{"check", "states"}, {"value", st.toJson()}});
    rep.verdict("state space nonempty", !st.empty);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdDetector(const Options& opt, const std::string& which, const std::string& model,
                const std::string& unitStr, const std::chrono::steady_clock::time_point& t0) {
  ModelPtr m = modelFromFlags(model, "");
  Report rep;
  rep.command = which;
  rep.config = {{"model", m->name()}, {"budget", opt.budget}};
  DetectorReport dr;
  if (which == "almost-unperforated") {
    dr = checkAlmostUnperforated(*m, opt.budget);
  } else if (which == "weak-divisibility") {
    dr = checkWeakDivisibility(*m, opt.budget);
  } else {
    Elem u;
    try {
      u = m->parseElem(unitStr.empty() ? "1" : unitStr);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    dr = checkRordamLemma(*m, u, opt.budget);
  }
  rep.info(dr.summary());
  rep.verdict(dr.detector, dr.pass(), dr.witness);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdLimit(const Options& opt, const std::string& systemFile,
             const std::chrono::steady_clock::time_point& t0) {
  CuSystem sys = systemFromSpec(loadJsonFile(systemFile));
  auto lim = buildLimit(sys, opt.horizon);
  Report rep;
  rep.command = "limit";
  rep.config = {{"system", sys.name()}, {"horizon", opt.horizon},
                {"budget", opt.budget}, {"seed", opt.seed}};
  auto ax = checkCuAxioms(*lim, opt.budget, opt.seed);
  addAxiomEntries(rep, ax);
  // A few canonical germ comparisons at different stages.
  auto b0 = sys.stage(0)->basis(4);
  for (std::size_t i = 0; i + 1 < b0.size(); ++i) {
    Elem g0 = lim->germ(0, b0[i]);
    Elem g1 = lim->germ(1, sys.step(0, b0[i]));
    rep.verdict("germ (0,x) = (1,phi(x)) for basis " + std::to_string(i),
                lim->equal(g0, g1));
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdContinuity(const Options& opt, const std::string& systemFile, std::uint64_t pairs,
                  const std::chrono::steady_clock::time_point& t0) {
  json j = loadJsonFile(systemFile);
  CuSystem sys = systemFromSpec(j);
  GermOrder oracle;
  std::string kind = j.value("kind", std::string());
  if (kind == "uhf") {
    oracle = scalingOracle(j.at("k").get<std::uint64_t>());
  } else if (kind == "af") {
    auto mult = j.at("mult");
    if (mult == json::array({json::array({1, 1}), json::array({1, 0})}))
      oracle = goldenOracle();
  }
  if (!oracle) throw ConfigError("no ground-truth order known for this system");
  Report rep;
  rep.command = "continuity";
  rep.config = {{"system", sys.name()}, {"pairs", pairs}, {"horizon", opt.horizon},
                {"seed", opt.seed}};
  auto cr = functorContinuityCheck(sys, oracle, pairs, opt.horizon, opt.seed);
  rep.info(cr.summary());
  rep.verdict("continuity", cr.pass(), cr.witness);
  rep.verdicts.push_back(json{{"check", "report"}, {"value", cr.toJson()}});
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdRecover(const Options& opt, const std::string& data, std::uint64_t pairs,
               const std::chrono::steady_clock::time_point& t0) {
  ElliottData ed;
  ModelPtr src;
  std::function<std::function<Elem(const Elem&)>(const WTildeModel&)> mapOf;
  if (data == "goodearl") {
    ed = goodearlElliott();
    src = goodearlModel();
    mapOf = [](const WTildeModel& t) { return goodearlToRecovered(t); };
  } else if (data == "rotation") {
    ed = rotationElliott();
    src = rotationModel();
    mapOf = [](const WTildeModel& t) { return rotationToRecovered(t); };
  } else {
    throw ConfigError("unknown recovery data '" + data + "' (goodearl, rotation)");
  }
  auto wt = functorF(std::move(ed));
  Report rep;
  rep.command = "recover";
  rep.config = {{"data", data}, {"pairs", pairs}, {"seed", opt.seed},
                {"budget", opt.budget}};
  auto ax = checkCuAxioms(*wt, opt.budget, opt.seed);
  addAxiomEntries(rep, ax);
  auto er = embeddingCheck(*src, *wt, mapOf(*wt), pairs, opt.seed);
  rep.info(er.summary());
  rep.verdict("canonical embedding", er.pass(), er.witness);
  rep.verdicts.push_back(json{{"check", "embedding"}, {"value", er.toJson()}});
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

int cmdDemo(const Options& opt, const std::string& which,
            const std::chrono::steady_clock::time_point& t0) {
  Report rep;
  rep.command = "demo";
  rep.config = {{"name", which}};
  if (which == "goodearl") {
    auto g = goodearlModel();
    Elem o1 = GoodearlInterval::open(Rat(1));
    Elem c1 = GoodearlInterval::closed(Rat(1), Int(0));
    Elem lhs = g->add(o1, o1);
    Elem rhs = g->add(o1, c1);
    rep.info("interval monoid with a half-open generator:");
    rep.info("  a = " + g->printElem(o1) + "   b = " + g->printElem(c1));
    rep.info("  a + a = " + g->printElem(lhs));
    rep.info("  a + b = " + g->printElem(rhs));
    rep.verdict("sums agree", g->equal(lhs, rhs));
    rep.verdict("summands differ", !g->equal(o1, c1));
    rep.info("non-cancellation: a + a = a + b with a != b, so addition");
    rep.info("does not cancel; the open interval absorbs the top point.");
  } else if (which == "rotation") {
    rep.info("projection classes are pairs (p, q) with p + q*theta >= 0,");
    rep.info("theta = sqrt(2) - 1, compared through their exact values:");
    Elem x = RotElem::proj(Int(3), Int(-7));
    Elem y = RotElem::proj(Int(0), Int(1));
    auto r = rotationModel();
    rep.info("  value(3, -7) = " + rotationValue(Int(3), Int(-7)).str());
    rep.info("  value(0, 1)  = " + rotationValue(Int(0), Int(1)).str());
    rep.verdict("(0,1) <= (3,-7)", r->leq(y, x));
    rep.verdict("value positivity of (3,-7)", rotationValue(Int(3), Int(-7)).sign() > 0);
  } else if (which == "whk") {
    auto w = whkModel();
    Elem one = Interval::principal({1});
    Elem infty = Interval{{ExtNat::infinity()}};
    rep.info("intervals in the extended naturals: [0, n] and [0, inf)");
    rep.verdict("1 way below itself", w->wayBelow(one, one));
    rep.verdict("inf not way below itself", !w->wayBelow(infty, infty));
    rep.verdict("1 way below inf", w->wayBelow(one, infty));
  } else if (which == "laff") {
    LAffPL tent = LAffPL::maxOf(2, {AffLine{{QuadExt(Rat(1)), QuadExt(Rat(3))}},
                                    AffLine{{QuadExt(Rat(3)), QuadExt(Rat(1))}}});
    rep.info("strictly positive convex piecewise-linear functions on a segment:");
    rep.info("  f = " + tent.str() + ", min f = " + tent.minValue().str());
    auto approx = surjApprox(tent, 3);
    for (std::size_t i = 0; i < approx.size(); ++i)
      rep.info("  f_" + std::to_string(i + 1) + " = " + approx[i].str());
    bool climbs = approx[0].strictlyBelow(approx[1]) && approx[1].strictlyBelow(approx[2]);
    rep.verdict("approximants climb strictly", climbs);
    rep.verdict("approximants stay under f", approx[2].strictlyBelow(tent));
  } else {
    throw ConfigError("unknown demo '" + which + "' (goodearl, rotation, whk, laff)");
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.finish(opt, ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in ordered-semigroup models"};
  app.require_subcommand(1);

  Options opt;
  std::string model, modelFile, morphName, elemX, elemY, elemLit, epsStr, dims, weights;
  std::string aFile, bFile, monoidFile, fixture, unitStr, systemFile, recoverData, demoName;
  std::vector<std::string> tolerances;
  std::uint64_t pairs = 100;
  bool longDouble = false;

  auto addCommon = [&](CLI::App* c) {
    c->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    c->add_option("--seed", opt.seed, "PRNG seed");
    c->add_option("--budget", opt.budget, "sampling budget");
    c->add_flag("--timings", opt.timings, "print elapsed wall time");
  };

  auto* cAx = app.add_subcommand("check-axioms", "verify the order axioms on a model");
  cAx->add_option("--model", model, "registered model name");
  cAx->add_option("--model-file", modelFile, "json model spec");
  addCommon(cAx);

  auto* cMor = app.add_subcommand("check-morphism", "verify the morphism laws");
  cMor->add_option("--name", morphName, "double, embed-goodearl, embed-rotation")
      ->required();
  cMor->add_option("--model", model, "model for the doubling morphism");
  addCommon(cMor);

  auto* cCmp = app.add_subcommand("compare", "compare two elements of a model");
  cCmp->add_option("--model", model, "registered model name")->required();
  cCmp->add_option("x", elemX, "first element")->required();
  cCmp->add_option("y", elemY, "second element")->required();
  addCommon(cCmp);

  auto* cCut = app.add_subcommand("eps-cut", "spectral cutdown (a - eps)_+");
  cCut->add_option("--element", elemLit, "spectral literal, e.g. [n=3: (1,1)(1/2,2)]")
      ->required();
  cCut->add_option("--eps", epsStr, "exact rational eps")->required();
  addCommon(cCut);

  auto* cTau = app.add_subcommand("dtau", "rank under a tracial weight");
  cTau->add_option("--element", elemLit, "spectral literal")->required();
  cTau->add_option("--dims", dims, "block dimensions, e.g. 2,3")->required();
  cTau->add_option("--weights", weights, "trace weights (default: each vertex trace)");
  addCommon(cTau);

  auto* cKr = app.add_subcommand("kr-contract", "contraction witness for a <~ b");
  cKr->add_option("--a", aFile, "json file for a")->required();
  cKr->add_option("--b", bFile, "json file for b")->required();
  cKr->add_option("--eps", epsStr, "exact rational eps")->required();
  cKr->add_option("--tolerance", tolerances, "key=value (output, rank)");
  cKr->add_flag("--long-double", longDouble, "use the wider fixed-precision path");
  addCommon(cKr);

  auto* cGr = app.add_subcommand("groth", "group completion / compact-order check");
  cGr->add_option("--monoid", monoidFile, "json monoid spec");
  cGr->add_option("--model", model, "model for the projection-class check");
  addCommon(cGr);

  auto* cSt = app.add_subcommand("states", "extreme normalized states at a unit");
  cSt->add_option("--monoid", monoidFile, "json monoid spec");
  cSt->add_option("--fixture", fixture, "built-in monoid (perforated)");
  cSt->add_option("--unit", unitStr, "order unit, e.g. (2, 3); fixtures default to (2, 2)");
  addCommon(cSt);

  auto* cAu = app.add_subcommand("almost-unperforated", "(n+1)x <= ny forces x <= y");
  cAu->add_option("--model", model, "registered model name")->required();
  addCommon(cAu);

  auto* cWd = app.add_subcommand("weak-divisibility", "ny <= x <= (n+1)y solvable");
  cWd->add_option("--model", model, "registered model name")->required();
  addCommon(cWd);

  auto* cRl = app.add_subcommand("rordam", "strict state dominance forces comparison");
  cRl->add_option("--model", model, "registered model name")->required();
  cRl->add_option("--unit", unitStr, "normalizing unit (default '1')");
  addCommon(cRl);

  auto* cLim = app.add_subcommand("limit", "build an inductive limit and verify it");
  cLim->add_option("--system", systemFile, "json system spec")->required();
  cLim->add_option("--horizon", opt.horizon, "largest stage consulted");
  addCommon(cLim);

  auto* cCont = app.add_subcommand("continuity", "germ order against the ground truth");
  cCont->add_option("--system", systemFile, "json system spec")->required();
  cCont->add_option("--pairs", pairs, "sampled germ pairs");
  cCont->add_option("--horizon", opt.horizon, "largest stage consulted");
  addCommon(cCont);

  auto* cRec = app.add_subcommand("recover", "rebuild a model from its invariant data");
  cRec->add_option("--data", recoverData, "goodearl or rotation")->required();
  cRec->add_option("--pairs", pairs, "sampled element pairs");
  addCommon(cRec);

  auto* cDemo = app.add_subcommand("demo", "worked examples");
  cDemo->add_option("name", demoName, "goodearl, rotation, whk, laff")->required();
  addCommon(cDemo);

  CLI11_PARSE(app, argc, argv);

  auto t0 = std::chrono::steady_clock::now();
  try {
    if (app.got_subcommand(cAx)) return cmdCheckAxioms(opt, model, modelFile, 0, t0);
    if (app.got_subcommand(cMor)) return cmdCheckMorphism(opt, morphName, model, t0);
    if (app.got_subcommand(cCmp)) return cmdCompare(opt, model, elemX, elemY, t0);
    if (app.got_subcommand(cCut)) return cmdEpsCut(opt, elemLit, epsStr, t0);
    if (app.got_subcommand(cTau)) return cmdDTau(opt, elemLit, dims, weights, t0);
    if (app.got_subcommand(cKr))
      return cmdKrContract(opt, aFile, bFile, epsStr, tolerances, longDouble, t0);
    if (app.got_subcommand(cGr)) return cmdGroth(opt, monoidFile, model, t0);
    if (app.got_subcommand(cSt)) return cmdStates(opt, monoidFile, fixture, unitStr, t0);
    if (app.got_subcommand(cAu)) return cmdDetector(opt, "almost-unperforated", model, "", t0);
    if (app.got_subcommand(cWd)) return cmdDetector(opt, "weak-divisibility", model, "", t0);
    if (app.got_subcommand(cRl)) return cmdDetector(opt, "rordam", model, unitStr, t0);
    if (app.got_subcommand(cLim)) return cmdLimit(opt, systemFile, t0);
    if (app.got_subcommand(cCont)) return cmdContinuity(opt, systemFile, pairs, t0);
    if (app.got_subcommand(cRec)) return cmdRecover(opt, recoverData, pairs, t0);
    if (app.got_subcommand(cDemo)) return cmdDemo(opt, demoName, t0);
  } catch (const ConfigError& e) {
    std::cout << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << "config error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
