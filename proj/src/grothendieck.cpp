#include "cuntz/grothendieck.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cuntz {

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Int> addVec(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::vector<Int> subVec(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Int floorDiv(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

struct EntryAcc {
  CheckEntry e;
  explicit EntryAcc(std::string axiom) { e.axiom = std::move(axiom); e.verdict = "pass"; }
  void ok() { ++e.checks; }
  void skip() { ++e.skipped; }
  void fail(const std::string& w) {
    ++e.checks;
    if (e.verdict != "fail") { e.verdict = "fail"; e.witness = w; }
  }
};

}  // namespace

std::string MonElem::str() const {
  if (inf) return "inf";
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

MonElem MonElem::parse(const std::string& text, std::size_t dim) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "inf") return infinity();
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  std::vector<Int> v;
  std::string cur;
  std::istringstream is(t);
  while (std::getline(is, cur, ',')) {
    try {
      v.emplace_back(cur);
    } catch (const std::exception&) {
      throw std::invalid_argument("monoid element: bad integer '" + cur + "'");
    }
  }
  if (v.size() != dim)
    throw std::invalid_argument("monoid element: expected " + std::to_string(dim) +
                                " coordinates, got " + std::to_string(v.size()));
  return vec(std::move(v));
}

FgCommMonoid::FgCommMonoid(std::size_t dim, std::vector<std::vector<Int>> generators, bool withInf,
                           MonOrderKind order, std::vector<std::vector<Int>> functionals, Int gap,
                           std::uint64_t memberBound)
    : dim_(dim),
      gens_(std::move(generators)),
      withInf_(withInf),
      order_(order),
      functionals_(std::move(functionals)),
      gap_(std::move(gap)),
      memberBound_(memberBound) {
  if (dim_ == 0) throw std::invalid_argument("monoid: ambient dimension must be positive");
  if (gens_.empty()) throw std::invalid_argument("monoid: need at least one generator");
  for (const auto& g : gens_)
    if (g.size() != dim_) throw std::invalid_argument("monoid: generator dimension mismatch");
  gensNonneg_ = true;
  for (const auto& g : gens_)
    for (const auto& c : g)
      if (c < 0) gensNonneg_ = false;
  if (order_ == MonOrderKind::FunctionalGap) {
    if (functionals_.empty())
      throw std::invalid_argument("monoid: functional order needs at least one functional");
    for (const auto& f : functionals_)
      if (f.size() != dim_) throw std::invalid_argument("monoid: functional dimension mismatch");
    if (gap_ < 0) throw std::invalid_argument("monoid: gap must be nonnegative");
    for (const auto& g : gens_)
      for (const auto& f : functionals_)
        if (dot(f, g) < gap_)
          throw std::invalid_argument(
              "monoid: generator below the gap would break the algebraic-order extension");
  } else if (!functionals_.empty()) {
    throw std::invalid_argument("monoid: functionals only apply to the functional-gap order");
  }
  if (order_ == MonOrderKind::Coordinatewise && !gensNonneg_)
    throw std::invalid_argument(
        "monoid: coordinatewise order extends the algebraic order only for nonnegative generators");
}

namespace {
void validateElem(const MonElem& e, std::size_t dim, bool withInf) {
  if (e.inf) {
    if (!withInf) throw std::invalid_argument("monoid element uses infinity but the monoid has none");
    return;
  }
  if (e.v.size() != dim) throw std::invalid_argument("monoid element dimension mismatch");
}
}  // namespace

MonElem FgCommMonoid::add(const MonElem& a, const MonElem& b) const {
  validateElem(a, dim_, withInf_);
  validateElem(b, dim_, withInf_);
  if (a.inf || b.inf) return MonElem::infinity();
  return MonElem::vec(addVec(a.v, b.v));
}

MonElem FgCommMonoid::scale(std::uint64_t k, const MonElem& a) const {
  validateElem(a, dim_, withInf_);
  if (k == 0) return zero();
  if (a.inf) return MonElem::infinity();
  std::vector<Int> r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) r[i] = a.v[i] * Int(k);
  return MonElem::vec(std::move(r));
}

std::optional<std::vector<Int>> FgCommMonoid::memberCombo(const MonElem& x) const {
  if (x.inf) return std::nullopt;
  if (x.v.size() != dim_) throw std::invalid_argument("monoid element dimension mismatch");
  std::vector<Int> zeroCombo(gens_.size(), Int(0));
  bool isZero = std::all_of(x.v.begin(), x.v.end(), [](const Int& c) { return c == 0; });
  if (isZero) return zeroCombo;

  if (gensNonneg_) {
    for (const auto& c : x.v)
      if (c < 0) return std::nullopt;
    // complete search: intermediate sums stay inside the target box
    std::map<std::vector<Int>, std::pair<std::vector<Int>, std::size_t>> parent;
    std::deque<std::vector<Int>> queue;
    std::vector<Int> start(dim_, Int(0));
    parent[start] = {start, gens_.size()};
    queue.push_back(start);
    while (!queue.empty()) {
      std::vector<Int> cur = queue.front();
      queue.pop_front();
      for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        std::vector<Int> nxt = addVec(cur, gens_[gi]);
        bool inBox = true;
        for (std::size_t i = 0; i < dim_; ++i)
          if (nxt[i] > x.v[i]) { inBox = false; break; }
        if (!inBox || parent.count(nxt)) continue;
        parent[nxt] = {cur, gi};
        if (nxt == x.v) {
          std::vector<Int> combo(gens_.size(), Int(0));
          std::vector<Int> at = nxt;
          while (at != start) {
            auto& pr = parent[at];
            combo[pr.second] += 1;
            at = pr.first;
          }
          return combo;
        }
        queue.push_back(nxt);
      }
    }
    return std::nullopt;
  }

  // mixed-sign generators: bounded coefficient search
  std::vector<Int> combo(gens_.size(), Int(0));
  std::function<bool(std::size_t, std::vector<Int>, std::uint64_t)> dfs =
      [&](std::size_t gi, std::vector<Int> rem, std::uint64_t left) -> bool {
    if (gi + 1 == gens_.size()) {
      // rem must be t * gens_[gi] for an integer 0 <= t <= left
      const auto& g = gens_[gi];
      std::optional<Int> t;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (g[i] == 0) {
          if (rem[i] != 0) return false;
        } else {
          if (rem[i] % g[i] != 0) return false;
          Int ti = rem[i] / g[i];
          if (ti < 0) return false;
          if (!t) t = ti;
          else if (*t != ti) return false;
        }
      }
      Int tv = t ? *t : Int(0);
      if (tv > Int(left)) return false;
      combo[gi] = tv;
      return true;
    }
    for (Int c = 0; c <= Int(left); ++c) {
      combo[gi] = c;
      std::vector<Int> r = rem;
      for (std::size_t i = 0; i < dim_; ++i) r[i] -= c * gens_[gi][i];
      if (dfs(gi + 1, std::move(r), left - static_cast<std::uint64_t>(c))) return true;
    }
    return false;
  };
  if (dfs(0, x.v, memberBound_)) return combo;
  return std::nullopt;
}

Tri FgCommMonoid::contains(const MonElem& x) const {
  if (x.inf) return withInf_ ? Tri::True : Tri::False;
  if (memberCombo(x)) return Tri::True;
  return gensNonneg_ ? Tri::False : Tri::Unknown;
}

Tri FgCommMonoid::leq(const MonElem& x, const MonElem& y) const {
  validateElem(x, dim_, withInf_);
  validateElem(y, dim_, withInf_);
  if (y.inf) return Tri::True;
  if (x.inf) return Tri::False;
  switch (order_) {
    case MonOrderKind::Algebraic:
      return contains(MonElem::vec(subVec(y.v, x.v)));
    case MonOrderKind::Coordinatewise:
      for (std::size_t i = 0; i < dim_; ++i)
        if (x.v[i] > y.v[i]) return Tri::False;
      return Tri::True;
    case MonOrderKind::FunctionalGap: {
      if (x == y) return Tri::True;
      for (const auto& f : functionals_)
        if (dot(f, x.v) + gap_ > dot(f, y.v)) return Tri::False;
      return Tri::True;
    }
  }
  return Tri::Unknown;
}

std::vector<MonElem> FgCommMonoid::samples(std::size_t count) const {
  std::vector<MonElem> out;
  std::vector<std::vector<Int>> seen;
  auto push = [&](const std::vector<Int>& v) {
    if (out.size() >= count) return;
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) return;
    seen.push_back(v);
    out.push_back(MonElem::vec(v));
  };
  push(std::vector<Int>(dim_, Int(0)));
  for (const auto& g : gens_) push(g);
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i; j < gens_.size(); ++j) push(addVec(gens_[i], gens_[j]));
  for (const auto& g : gens_) {
    std::vector<Int> t(dim_);
    for (std::size_t i = 0; i < dim_; ++i) t[i] = 3 * g[i];
    push(t);
  }
  if (withInf_ && out.size() < count) out.push_back(MonElem::infinity());
  return out;
}

nlohmann::json FgCommMonoid::toJson() const {
  nlohmann::json j;
  j["dim"] = dim_;
  j["generators"] = nlohmann::json::array();
  for (const auto& g : gens_) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : g) row.push_back(c.str());
    j["generators"].push_back(row);
  }
  j["inf"] = withInf_;
  switch (order_) {
    case MonOrderKind::Algebraic: j["order"] = "algebraic"; break;
    case MonOrderKind::Coordinatewise: j["order"] = "coordinatewise"; break;
    case MonOrderKind::FunctionalGap: {
      nlohmann::json o;
      o["kind"] = "functional-gap";
      o["functionals"] = nlohmann::json::array();
      for (const auto& f : functionals_) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : f) row.push_back(c.str());
        o["functionals"].push_back(row);
      }
      o["gap"] = gap_.str();
      j["order"] = o;
      break;
    }
  }
  j["memberBound"] = memberBound_;
  return j;
}

namespace {
std::vector<Int> jsonIntRow(const nlohmann::json& row, const char* what) {
  if (!row.is_array()) throw std::invalid_argument(std::string("monoid json: ") + what + " must be an array");
  std::vector<Int> v;
  for (const auto& c : row) {
    if (c.is_number_integer()) {
      v.emplace_back(c.get<long long>());
    } else if (c.is_string()) {
      try {
        v.emplace_back(c.get<std::string>());
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string("monoid json: bad integer in ") + what);
      }
    } else {
      throw std::invalid_argument(std::string("monoid json: bad entry in ") + what);
    }
  }
  return v;
}
}  // namespace

FgCommMonoid FgCommMonoid::fromJson(const nlohmann::json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_unsigned())
    throw std::invalid_argument("monoid json: missing positive 'dim'");
  std::size_t dim = j["dim"].get<std::size_t>();
  if (!j.contains("generators") || !j["generators"].is_array())
    throw std::invalid_argument("monoid json: missing 'generators' array");
  std::vector<std::vector<Int>> gens;
  for (const auto& row : j["generators"]) gens.push_back(jsonIntRow(row, "generators"));
  bool withInf = j.value("inf", false);
  std::uint64_t bound = j.value("memberBound", std::uint64_t{32});
  MonOrderKind kind = MonOrderKind::Algebraic;
  std::vector<std::vector<Int>> functionals;
  Int gap = 0;
  if (j.contains("order")) {
    const auto& o = j["order"];
    if (o.is_string()) {
      std::string s = o.get<std::string>();
      if (s == "algebraic") kind = MonOrderKind::Algebraic;
      else if (s == "coordinatewise") kind = MonOrderKind::Coordinatewise;
      else throw std::invalid_argument("monoid json: unknown order '" + s + "'");
    } else if (o.is_object() && o.value("kind", "") == "functional-gap") {
      kind = MonOrderKind::FunctionalGap;
      if (!o.contains("functionals") || !o["functionals"].is_array())
        throw std::invalid_argument("monoid json: functional-gap order needs 'functionals'");
      for (const auto& row : o["functionals"]) functionals.push_back(jsonIntRow(row, "functionals"));
      if (o.contains("gap")) {
        if (o["gap"].is_number_integer()) gap = Int(o["gap"].get<long long>());
        else gap = Int(o["gap"].get<std::string>());
      }
    } else {
      throw std::invalid_argument("monoid json: malformed 'order'");
    }
  }
  return FgCommMonoid(dim, std::move(gens), withInf, kind, std::move(functionals), gap, bound);
}

std::vector<std::vector<Int>> hermiteBasis(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return {};
  const std::size_t d = rows[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivotCols;
  for (std::size_t col = 0; col < d && r < rows.size(); ++col) {
    while (true) {
      std::size_t piv = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 &&
            (piv == rows.size() || abs(rows[i][col]) < abs(rows[piv][col])))
          piv = i;
      if (piv == rows.size()) break;
      std::swap(rows[piv], rows[r]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q = rows[i][col] / rows[r][col];
        for (std::size_t k = col; k < d; ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][col] != 0) cleared = false;
      }
      if (cleared) {
        if (rows[r][col] < 0)
          for (std::size_t k = col; k < d; ++k) rows[r][k] = -rows[r][k];
        pivotCols.push_back(col);
        ++r;
        break;
      }
    }
  }
  rows.resize(r);
  // reduce entries above each pivot for a canonical form
  for (std::size_t i = r; i-- > 0;) {
    const Int& p = rows[i][pivotCols[i]];
    for (std::size_t j = 0; j < i; ++j) {
      Int q = floorDiv(rows[j][pivotCols[i]], p);
      if (q == 0) continue;
      for (std::size_t k = 0; k < d; ++k) rows[j][k] -= q * rows[i][k];
    }
  }
  return rows;
}

GrothGroup grothGroup(const FgCommMonoid& m) {
  GrothGroup g;
  if (m.hasInf()) {
    g.collapsed = true;  // x + inf = y + inf: the congruence identifies everything
    return g;
  }
  g.latticeBasis = hermiteBasis(m.generators());
  g.rank = g.latticeBasis.size();
  return g;  // a submonoid of Z^d is cancellative, so its group is free
}

nlohmann::json GrothGroup::toJson() const {
  nlohmann::json j;
  j["collapsed"] = collapsed;
  j["rank"] = rank;
  j["invariantFactors"] = nlohmann::json::array();
  for (const auto& f : invariantFactors) j["invariantFactors"].push_back(f.str());
  j["latticeBasis"] = nlohmann::json::array();
  for (const auto& row : latticeBasis) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(c.str());
    j["latticeBasis"].push_back(r);
  }
  return j;
}

std::string GrothGroup::summary() const {
  if (collapsed) return "G = 0 (absorbing infinity collapses the congruence)";
  std::string s = "G free of rank " + std::to_string(rank);
  if (!invariantFactors.empty()) {
    s += ", torsion factors:";
    for (const auto& f : invariantFactors) s += " " + f.str();
  }
  return s;
}

Tri conesLeq(const FgCommMonoid& m, const GroupElem& x, const GroupElem& y, ConeKind which) {
  if (m.hasInf()) return Tri::True;
  for (const MonElem* e : {&x.pos, &x.neg, &y.pos, &y.neg})
    if (e->inf) throw std::invalid_argument("cone comparison requires finite representatives");
  if (which == ConeKind::Plus) {
    std::vector<Int> w = subVec(addVec(y.pos.v, x.neg.v), addVec(y.neg.v, x.pos.v));
    return m.contains(MonElem::vec(std::move(w)));
  }
  MonElem lhs = m.add(x.pos, y.neg);
  MonElem rhs = m.add(x.neg, y.pos);
  bool sawUnknown = false;
  std::vector<MonElem> witnesses{m.zero()};
  for (auto& s : m.samples(12)) witnesses.push_back(std::move(s));
  for (const auto& e : witnesses) {
    if (e.inf) continue;
    Tri t = m.leq(m.add(lhs, e), m.add(rhs, e));
    if (t == Tri::True) return Tri::True;
    if (t == Tri::Unknown) sawUnknown = true;
  }
  return sawUnknown ? Tri::Unknown : Tri::False;
}

FgCommMonoid perforatedFixtureMonoid() {
  std::vector<std::vector<Int>> gens = {
      {Int(1), Int(1)}, {Int(2), Int(0)}, {Int(0), Int(2)}, {Int(3), Int(0)}, {Int(0), Int(3)}};
  return FgCommMonoid(2, std::move(gens), false, MonOrderKind::FunctionalGap,
                      {{Int(1), Int(1)}}, Int(2));
}

bool K0StarReport::pass() const {
  for (const auto& e : entries)
    if (e.verdict == "fail") return false;
  return true;
}

nlohmann::json K0StarReport::toJson() const {
  nlohmann::json j;
  j["model"] = model;
  j["applicable"] = applicable;
  j["c"] = cUsed;
  j["budget"] = budget;
  j["seed"] = seed;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je;
    je["check"] = e.axiom;
    je["verdict"] = e.verdict;
    je["witness"] = e.witness;
    je["checks"] = e.checks;
    je["skipped"] = e.skipped;
    j["entries"].push_back(je);
  }
  j["pass"] = pass();
  return j;
}

std::string K0StarReport::summary() const {
  if (!applicable) return model + ": not applicable (no purely positive classes)";
  std::string s = model + " (c = " + cUsed + "):";
  for (const auto& e : entries) {
    s += " " + e.axiom + "=" + e.verdict;
    if (e.verdict == "fail") s += " [" + e.witness + "]";
  }
  return s;
}

K0StarReport k0StarCheck(const CuModel& m, std::uint64_t budget, std::uint64_t seed) {
  K0StarReport rep;
  rep.model = m.name();
  rep.budget = budget;
  rep.seed = seed;
  auto pool = m.basis(std::max<std::uint64_t>(8, budget / 16));
  std::vector<Elem> pures, all;
  for (const auto& x : pool) {
    all.push_back(x);
    if (m.classify(x) == CuModel::Classification::PurelyPositive) pures.push_back(x);
  }
  if (pures.empty()) return rep;
  rep.applicable = true;
  const Elem& c = pures.front();
  rep.cUsed = m.printElem(c);
  std::mt19937_64 rng(seed);
  auto pick = [&]() -> const Elem& { return all[rng() % all.size()]; };
  std::vector<Elem> zs{m.zero()};
  for (const auto& p : pures) zs.push_back(p);
  zs.push_back(m.add(c, c));

  EntryAcc additive("alpha-additive");
  EntryAcc order("alpha-order-preserving");
  EntryAcc injective("alpha-injective");
  std::uint64_t rounds = std::max<std::uint64_t>(8, budget / 4);
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const Elem& x = pick();
    const Elem& y = pick();
    // alpha(x) + alpha(y) = alpha(x+y): both sides reduce to x+y+3c
    Elem lhs = m.add(m.add(m.add(x, c), m.add(y, c)), c);
    Elem rhs = m.add(m.add(m.add(x, y), c), m.add(c, c));
    if (m.equal(lhs, rhs))
      additive.ok();
    else
      additive.fail("x = " + m.printElem(x) + ", y = " + m.printElem(y));

    if (m.leq(x, y)) {
      // alpha(y) - alpha(x) should lie in the image cone: find w, z with
      // y + c + z ~ x + c + w + z
      bool found = false;
      std::vector<Elem> ws{m.zero()};
      for (const auto& p : pures) ws.push_back(p);
      for (const auto& w : ws) {
        for (const auto& z : zs) {
          if (m.equal(m.add(m.add(y, c), z), m.add(m.add(m.add(x, c), w), z))) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found)
        order.ok();
      else
        order.skip();
    }

    // injectivity by certificate propagation: an alpha-equality witness z
    // yields the class-equality witness c + z in the full semigroup
    for (const auto& z : zs) {
      if (m.equal(m.add(m.add(x, c), z), m.add(m.add(y, c), z))) {
        if (m.equal(m.add(x, m.add(c, z)), m.add(y, m.add(c, z))))
          injective.ok();
        else
          injective.fail("x = " + m.printElem(x) + ", y = " + m.printElem(y) +
                         ", z = " + m.printElem(z));
        break;
      }
    }
  }
  rep.entries = {additive.e, order.e, injective.e};
  return rep;
}

MonoidCuModel::MonoidCuModel(std::string name, FgCommMonoid monoid)
    : name_(std::move(name)), monoid_(std::move(monoid)) {}

const MonElem& MonoidCuModel::get(const Elem& x) { return std::any_cast<const MonElem&>(x); }

Elem MonoidCuModel::add(const Elem& x, const Elem& y) const {
  return monoid_.add(get(x), get(y));
}

bool MonoidCuModel::leq(const Elem& x, const Elem& y) const {
  return monoid_.leq(get(x), get(y)) == Tri::True;
}

bool MonoidCuModel::wayBelow(const Elem& x, const Elem& y) const {
  return !get(x).inf && leq(x, y);
}

std::vector<Elem> MonoidCuModel::basis(std::size_t count) const {
  std::vector<Elem> out;
  for (auto& s : monoid_.samples(count)) out.push_back(std::move(s));
  return out;
}

std::vector<Elem> MonoidCuModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  const MonElem& e = get(x);
  std::vector<Elem> out;
  if (!e.inf) {
    out.assign(len, x);
    return out;
  }
  const auto& g = monoid_.generators().front();
  // The staircase to inf doubles so its tail clears every finite sample.
  for (std::size_t i = 1; i <= len; ++i) {
    std::vector<Int> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) v[k] = g[k] * (Int(1) << (i + 1));
    out.push_back(MonElem::vec(std::move(v)));
  }
  return out;
}

std::string MonoidCuModel::printElem(const Elem& x) const { return get(x).str(); }

Elem MonoidCuModel::parseElem(const std::string& text) const {
  MonElem e = MonElem::parse(text, monoid_.dim());
  if (e.inf && !monoid_.hasInf())
    throw std::invalid_argument("monoid element uses infinity but the monoid has none");
  return e;
}

std::optional<Elem> MonoidCuModel::joinCandidate(const Elem& x, const Elem& y) const {
  if (get(x).inf || get(y).inf) return Elem(MonElem::infinity());
  return add(x, y);
}

}  // namespace cuntz
