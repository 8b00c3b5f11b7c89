#include "cuntz/states.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cuntz {

namespace {

// Row-reduce in place over Q; returns the pivot columns. lastColIsRhs limits
// pivot selection to the coefficient columns of an augmented matrix.
std::vector<std::size_t> rref(std::vector<std::vector<Rat>>& m, bool lastColIsRhs) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size() - (lastColIsRhs ? 1 : 0);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = m.size();
    for (std::size_t i = r; i < m.size(); ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    Rat inv = m[r][c];
    for (auto& x : m[r]) x /= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Unique solution of A x = b, or nullopt (inconsistent or underdetermined).
std::optional<std::vector<Rat>> solveUnique(const std::vector<std::vector<Rat>>& a,
                                            const std::vector<Rat>& b) {
  if (a.empty()) return std::nullopt;
  const std::size_t n = a[0].size();
  std::vector<std::vector<Rat>> aug(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  auto pivots = rref(aug, true);
  for (const auto& row : aug) {
    bool zeroRow = std::all_of(row.begin(), row.end() - 1, [](const Rat& x) { return x == 0; });
    if (zeroRow && row.back() != 0) return std::nullopt;
  }
  if (pivots.size() < n) return std::nullopt;
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i].back();
  return x;
}

// Any solution of A x = b with free variables set to 0, or nullopt.
std::optional<std::vector<Rat>> solveAny(const std::vector<std::vector<Rat>>& a,
                                         const std::vector<Rat>& b, std::size_t n) {
  std::vector<std::vector<Rat>> aug(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  auto pivots = rref(aug, true);
  for (const auto& row : aug) {
    bool zeroRow = std::all_of(row.begin(), row.end() - 1, [](const Rat& x) { return x == 0; });
    if (zeroRow && row.back() != 0) return std::nullopt;
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i].back();
  return x;
}

// Null-space basis of the linear map x -> A x (free variables parametrize).
std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> a, std::size_t n) {
  if (a.empty()) a.push_back(std::vector<Rat>(n, Rat(0)));
  auto pivots = rref(a, false);
  std::vector<bool> isPivot(n, false);
  for (auto c : pivots) isPivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (isPivot[f]) continue;
    std::vector<Rat> v(n);
    v[f] = Rat(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool satisfies(const std::vector<Rat>& x, const LinConstraint& c) {
  Rat lhs(0);
  for (std::size_t i = 0; i < x.size(); ++i) lhs += c.coeffs[i] * x[i];
  return c.kind == ConstraintKind::Eq ? lhs == c.rhs : lhs >= c.rhs;
}

}  // namespace

std::vector<std::vector<Rat>> enumerateVertices(const std::vector<LinConstraint>& constraints,
                                                std::size_t nvars) {
  std::vector<const LinConstraint*> eqs, ineqs;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != nvars)
      throw std::invalid_argument("constraint arity mismatch");
    (c.kind == ConstraintKind::Eq ? eqs : ineqs).push_back(&c);
  }
  std::vector<std::vector<Rat>> eqAug;
  for (const auto* c : eqs) {
    auto row = c->coeffs;
    row.push_back(c->rhs);
    eqAug.push_back(std::move(row));
  }
  std::size_t rankEq = 0;
  if (!eqAug.empty()) {
    auto copy = eqAug;
    rankEq = rref(copy, true).size();
    for (const auto& row : copy) {
      bool zeroRow = std::all_of(row.begin(), row.end() - 1, [](const Rat& x) { return x == 0; });
      if (zeroRow && row.back() != 0) return {};  // inconsistent equalities
    }
  }
  const std::size_t k = nvars - rankEq;
  if (ineqs.size() < k) return {};

  // combination count guard
  {
    double comb = 1;
    for (std::size_t i = 0; i < k; ++i) comb *= double(ineqs.size() - i) / double(i + 1);
    if (comb > 2e6) throw std::domain_error("vertex enumeration: too many active-set combinations");
  }

  std::vector<std::vector<Rat>> vertices;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  bool more = true;
  while (more) {
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (const auto* c : eqs) { a.push_back(c->coeffs); b.push_back(c->rhs); }
    for (auto i : idx) { a.push_back(ineqs[i]->coeffs); b.push_back(ineqs[i]->rhs); }
    if (a.empty()) { a.push_back(std::vector<Rat>(nvars, Rat(0))); b.push_back(Rat(0)); }
    if (auto x = solveUnique(a, b)) {
      bool feasible = true;
      for (const auto& c : constraints)
        if (!satisfies(*x, c)) { feasible = false; break; }
      if (feasible && std::find(vertices.begin(), vertices.end(), *x) == vertices.end())
        vertices.push_back(std::move(*x));
    }
    if (k == 0) break;
    // next k-combination of {0..ineqs.size()-1}
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == ineqs.size() - k + (i - 1)) --i;
    if (i == 0) { more = false; break; }
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

Rat StateVector::eval(const std::vector<Int>& v) const {
  if (v.size() != lambda.size()) throw std::invalid_argument("state eval: dimension mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < v.size(); ++i) s += lambda[i] * Rat(v[i]);
  return s;
}

std::string StateVector::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < genValues.size(); ++i)
    s += (i ? ", " : "") + ratToString(genValues[i]);
  return s + "]";
}

nlohmann::json StatePolytopeReport::toJson() const {
  nlohmann::json j;
  j["monoid"] = monoid;
  j["unit"] = unit;
  j["empty"] = empty;
  j["dimension"] = dimension;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : vertices) {
    nlohmann::json jv;
    jv["generatorValues"] = nlohmann::json::array();
    for (const auto& r : v.genValues) jv["generatorValues"].push_back(ratToString(r));
    jv["functional"] = nlohmann::json::array();
    for (const auto& r : v.lambda) jv["functional"].push_back(ratToString(r));
    j["vertices"].push_back(jv);
  }
  j["constraints"] = constraintLabels;
  return j;
}

std::string StatePolytopeReport::summary() const {
  if (empty) return monoid + " at " + unit + ": no states";
  std::string s = monoid + " at " + unit + ": " + std::to_string(vertices.size()) +
                  " extreme state(s), dimension " + std::to_string(dimension) + ":";
  for (const auto& v : vertices) s += " " + v.str();
  return s;
}

StatePolytopeReport findStates(const FgCommMonoid& m, const MonElem& u) {
  if (m.hasInf())
    throw std::domain_error("states: monoid with absorbing infinity has no normalized states");
  auto comboU = m.memberCombo(u);
  if (!comboU) throw std::domain_error("states: unit is not certified inside the monoid");

  const auto& gens = m.generators();
  const std::size_t n = gens.size(), d = m.dim();
  std::vector<LinConstraint> cs;

  // lattice relations: s extends to the generated group, so it kills the
  // kernel of the generator matrix
  std::vector<std::vector<Rat>> genMatT(d, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) genMatT[j][i] = Rat(gens[i][j]);
  for (auto& rel : nullspace(genMatT, n))
    cs.push_back({std::move(rel), Rat(0), ConstraintKind::Eq, "lattice relation"});

  {
    std::vector<Rat> coef(n);
    for (std::size_t i = 0; i < n; ++i) coef[i] = Rat((*comboU)[i]);
    cs.push_back({std::move(coef), Rat(1), ConstraintKind::Eq, "normalization s(u) = 1"});
  }

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> coef(n, Rat(0));
    coef[i] = Rat(1);
    cs.push_back({coef, Rat(0), ConstraintKind::Ge, "s(g" + std::to_string(i) + ") >= 0"});
    std::optional<std::uint64_t> bound;
    for (std::uint64_t nn = 1; nn <= 64; ++nn) {
      if (m.leq(MonElem::vec(gens[i]), m.scale(nn, u)) == Tri::True) { bound = nn; break; }
    }
    if (!bound)
      throw std::domain_error("states: unit is not certified as an order unit (generator " +
                              std::to_string(i) + " escapes 64 copies)");
    for (auto& c : coef) c = -c;
    cs.push_back({std::move(coef), -Rat(Int(*bound)), ConstraintKind::Ge,
                  "s(g" + std::to_string(i) + ") <= " + std::to_string(*bound)});
  }

  // non-algebraic orders carry monotonicity beyond positivity; sample it
  // (outer approximation: every true state satisfies these, maybe more)
  if (m.orderKind() != MonOrderKind::Algebraic) {
    auto pool = m.samples(12);
    std::size_t added = 0;
    for (const auto& x : pool) {
      for (const auto& y : pool) {
        if (added >= 48) break;
        if (x == y || x.inf || y.inf) continue;
        if (m.leq(x, y) != Tri::True) continue;
        auto cx = m.memberCombo(x), cy = m.memberCombo(y);
        if (!cx || !cy) continue;
        std::vector<Rat> coef(n);
        bool trivial = true;
        for (std::size_t i = 0; i < n; ++i) {
          coef[i] = Rat((*cy)[i]) - Rat((*cx)[i]);
          if (coef[i] != 0) trivial = false;
        }
        if (trivial) continue;
        cs.push_back({std::move(coef), Rat(0), ConstraintKind::Ge,
                      "monotone: s(" + x.str() + ") <= s(" + y.str() + ")"});
        ++added;
      }
    }
  }

  StatePolytopeReport rep;
  rep.monoid = "monoid(dim " + std::to_string(d) + ", " + std::to_string(n) + " generators)";
  rep.unit = u.str();
  for (const auto& c : cs) rep.constraintLabels.push_back(c.label);

  auto vertices = enumerateVertices(cs, n);
  rep.empty = vertices.empty();
  for (const auto& v : vertices) {
    for (const auto& c : cs)
      if (!satisfies(v, c)) throw std::logic_error("states: vertex fails exact recheck");
    StateVector sv;
    sv.genValues = v;
    std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(d));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) rows[i][j] = Rat(gens[i][j]);
    auto lam = solveAny(rows, v, d);
    if (!lam) throw std::logic_error("states: vertex does not extend to the lattice");
    sv.lambda = std::move(*lam);
    rep.vertices.push_back(std::move(sv));
  }

  if (!rep.vertices.empty()) {
    std::vector<std::vector<Rat>> diffs;
    for (std::size_t i = 1; i < rep.vertices.size(); ++i) {
      std::vector<Rat> row(n);
      for (std::size_t j = 0; j < n; ++j)
        row[j] = rep.vertices[i].genValues[j] - rep.vertices[0].genValues[j];
      diffs.push_back(std::move(row));
    }
    rep.dimension = diffs.empty() ? 0 : rref(diffs, false).size();
  }
  return rep;
}

Rat regularize(const DimFn& d, const SpectralElement& a) {
  // assumes d factors through the comparison class; classes of (a - eps)_+
  // change only as eps crosses eigenvalues, so finitely many cuts realize all
  std::vector<Rat> eigs;
  for (const auto& b : a.blocks)
    for (const auto& [v, mult] : b.eigs) eigs.push_back(v);
  std::sort(eigs.begin(), eigs.end());
  eigs.erase(std::unique(eigs.begin(), eigs.end()), eigs.end());
  if (eigs.empty()) return d(a);
  std::vector<Rat> cuts{eigs.front() / 2};
  for (std::size_t i = 0; i + 1 < eigs.size(); ++i) cuts.push_back((eigs[i] + eigs[i + 1]) / 2);
  cuts.push_back(eigs.back() + 1);
  Rat best = d(epsCut(a, cuts[0]));
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    Rat v = d(epsCut(a, cuts[i]));
    if (best < v) best = v;
  }
  return best;
}

ExtNat regularizeLsc(const LscDimFn& d, const StepLsc& f, std::uint64_t horizon) {
  if (horizon == 0) throw std::invalid_argument("regularize: horizon must be positive");
  ExtNat best = d(canonicalApprox(f, 1));
  for (std::uint64_t k = 2; k <= horizon; ++k) {
    ExtNat v = d(canonicalApprox(f, k));
    if (best < v) best = v;
  }
  return best;
}

nlohmann::json DetectorReport::toJson() const {
  nlohmann::json j;
  j["detector"] = detector;
  j["model"] = model;
  j["verdict"] = verdict;
  j["witness"] = witness;
  j["checks"] = checks;
  j["skipped"] = skipped;
  return j;
}

std::string DetectorReport::summary() const {
  std::string s = detector + " on " + model + ": " + verdict + " (" + std::to_string(checks) +
                  " checks, " + std::to_string(skipped) + " skipped)";
  if (!witness.empty()) s += " witness: " + witness;
  return s;
}

DetectorReport checkAlmostUnperforated(const CuModel& m, std::uint64_t budget) {
  DetectorReport rep{"almost-unperforated", m.name(), "pass", "", 0, 0};
  auto pool = m.basis(std::max<std::uint64_t>(6, budget / 8));
  std::uint64_t done = 0;
  for (const auto& x : pool) {
    for (const auto& y : pool) {
      for (std::uint64_t n = 1; n <= 4 && done < budget * 4; ++n) {
        ++done;
        if (!m.leq(m.scale(n + 1, x), m.scale(n, y))) { ++rep.skipped; continue; }
        ++rep.checks;
        if (!m.leq(x, y) && rep.verdict != "fail") {
          rep.verdict = "fail";
          rep.witness = "x = " + m.printElem(x) + ", y = " + m.printElem(y) +
                        ", n = " + std::to_string(n) + ": (n+1)x <= ny but not x <= y";
        }
      }
    }
  }
  return rep;
}

DetectorReport checkWeakDivisibility(const CuModel& m, std::uint64_t budget) {
  DetectorReport rep{"weak-divisibility", m.name(), "pass", "", 0, 0};
  auto pool = m.basis(std::max<std::uint64_t>(6, budget / 8));
  Elem zero = m.zero();
  for (const auto& x : pool) {
    auto cls = m.classify(x);
    bool eligible = cls == CuModel::Classification::PurelyPositive ||
                    (cls == CuModel::Classification::Unknown && !m.equal(x, zero));
    if (!eligible) { ++rep.skipped; continue; }
    for (std::uint64_t n = 1; n <= 3; ++n) {
      std::vector<Elem> candidates = pool;
      for (auto& c : m.divisibilityCandidates(x, n)) candidates.push_back(std::move(c));
      bool found = false;
      for (const auto& y : candidates) {
        if (m.leq(m.scale(n, y), x) && m.leq(x, m.scale(n + 1, y))) { found = true; break; }
      }
      ++rep.checks;
      if (!found && rep.verdict != "fail") {
        rep.verdict = "fail";
        rep.witness = "x = " + m.printElem(x) + ", n = " + std::to_string(n) +
                      ": no y with ny <= x <= (n+1)y among candidates";
      }
    }
  }
  return rep;
}

DetectorReport checkRordamLemma(const CuModel& m, const Elem& u, std::uint64_t budget) {
  DetectorReport rep{"strict-state-comparison", m.name(), "pass", "", 0, 0};
  auto evs = m.stateEvaluators();
  std::vector<CuModel::StateEval> kept;
  for (auto& ev : evs) {
    auto su = ev.eval(u);
    if (su && !su->isInf() && ExtNonnegScalar(Rat(0)) < *su) kept.push_back(std::move(ev));
  }
  if (kept.empty()) {
    rep.verdict = "not-applicable";
    rep.witness = evs.empty() ? "model exposes no state evaluators"
                              : "no evaluator is normalizable at the unit";
    return rep;
  }
  auto pool = m.basis(std::max<std::uint64_t>(6, budget / 8));
  for (const auto& x : pool) {
    for (const auto& y : pool) {
      bool premise = true, decided = true;
      for (const auto& ev : kept) {
        auto sx = ev.eval(x), sy = ev.eval(y);
        if (!sx || !sy) { decided = false; break; }
        if (!(*sx < *sy)) { premise = false; break; }
      }
      if (!decided) { ++rep.skipped; continue; }
      if (!premise) { ++rep.skipped; continue; }
      ++rep.checks;
      if (!m.leq(x, y) && rep.verdict != "fail") {
        rep.verdict = "fail";
        rep.witness = "x = " + m.printElem(x) + ", y = " + m.printElem(y) +
                      ": strictly below at every state but not comparable";
      }
    }
  }
  return rep;
}

bool strictComparisonCheck(const SpectralElement& a, const SpectralElement& b,
                           const std::vector<TraceSpec>& vertices,
                           bool bPurelyPositiveSurrogate) {
  for (const auto& tau : vertices) {
    Rat da = dTau(tau, a), db = dTau(tau, b);
    if (bPurelyPositiveSurrogate ? !(da < db) : !(da <= db)) return false;
  }
  return true;
}

}  // namespace cuntz
