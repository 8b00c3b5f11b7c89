#include "cuntz/models.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cuntz {

// ---- ExtNatModel ------------------------------------------------------------

const ExtNat& ExtNatModel::get(const Elem& x) { return std::any_cast<const ExtNat&>(x); }

Elem ExtNatModel::add(const Elem& x, const Elem& y) const { return get(x) + get(y); }
bool ExtNatModel::leq(const Elem& x, const Elem& y) const { return get(x) <= get(y); }
bool ExtNatModel::wayBelow(const Elem& x, const Elem& y) const {
  return extnatWayBelow(get(x), get(y));
}

std::vector<Elem> ExtNatModel::basis(std::size_t count) const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i + 1 < count; ++i) out.push_back(ExtNat(i));
  out.push_back(ExtNat::infinity());
  return out;
}

// Probe an increasing ExtNat sequence along a geometric schedule; stabilized
// probes give the supremum, runaway growth gives inf.
static std::optional<ExtNat> probeExtNatSup(const IncreasingSeq& s,
                                            const ExtNat& (*get)(const Elem&)) {
  std::size_t base = s.prefix.size();
  ExtNat last = get(s.at(base));
  int stable = 0;
  for (std::size_t step = 1; step <= 4096; step *= 2) {
    ExtNat v = get(s.at(base + step));
    if (v == last) {
      if (++stable >= 3) return v;
    } else {
      stable = 0;
      last = v;
      if (!v.isInf() && v.finite() > 1000000) return ExtNat::infinity();
      if (v.isInf()) return v;
    }
  }
  return std::nullopt;
}

std::optional<Elem> ExtNatModel::supOfIncreasing(const IncreasingSeq& s) const {
  if (auto e = CuModel::supOfIncreasing(s)) return e;
  if (auto v = probeExtNatSup(s, &ExtNatModel::get)) return *v;
  return std::nullopt;
}

std::vector<Elem> ExtNatModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  std::vector<Elem> out;
  const ExtNat& v = get(x);
  // The staircase to inf doubles so its tail clears every finite sample.
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(v.isInf() ? Elem(ExtNat(std::uint64_t(1) << std::min<std::size_t>(i + 1, 62)))
                            : Elem(v));
  return out;
}

std::vector<IncreasingSeq> ExtNatModel::increasingSamples(std::mt19937_64& rng,
                                                          std::size_t count) const {
  auto out = CuModel::increasingSamples(rng, count - count / 3);
  for (std::size_t i = 0; i < count / 3; ++i) {
    std::uint64_t a = rng() % 5, b = 1 + rng() % 3;
    IncreasingSeq s;
    if (i % 2 == 0) {  // unbounded ramp a + b*i
      s.gen = [a, b](std::size_t k) { return Elem(ExtNat(a + b * k)); };
      s.declaredSup = Elem(ExtNat::infinity());
    } else {  // capped ramp min(a + i, cap)
      std::uint64_t cap = a + 3 + rng() % 6;
      s.gen = [a, cap](std::size_t k) { return Elem(ExtNat(std::min(a + k, cap))); };
      s.declaredSup = Elem(ExtNat(cap));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string ExtNatModel::printElem(const Elem& x) const { return get(x).str(); }
Elem ExtNatModel::parseElem(const std::string& text) const { return ExtNat::parse(text); }

static ExtNonnegScalar extNatValue(const ExtNat& v) {
  if (v.isInf()) return ExtNonnegScalar::infinity();
  return ExtNonnegScalar(Rat(Int(v.finite())));
}

std::vector<CuModel::StateEval> ExtNatModel::stateEvaluators() const {
  return {{"count", [](const Elem& x) -> std::optional<ExtNonnegScalar> {
             return extNatValue(get(x));
           }}};
}

// ---- TwoPointModel ----------------------------------------------------------

static bool tp(const Elem& x) { return std::any_cast<bool>(x); }

Elem TwoPointModel::add(const Elem& x, const Elem& y) const { return tp(x) || tp(y); }
bool TwoPointModel::leq(const Elem& x, const Elem& y) const { return !tp(x) || tp(y); }
// Both elements are compact: sequences below 0 or inf reach them.
bool TwoPointModel::wayBelow(const Elem& x, const Elem& y) const { return leq(x, y); }
std::vector<Elem> TwoPointModel::basis(std::size_t) const { return {Elem(false), Elem(true)}; }
std::vector<Elem> TwoPointModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  return std::vector<Elem>(len, x);
}
std::string TwoPointModel::printElem(const Elem& x) const { return tp(x) ? "inf" : "0"; }
Elem TwoPointModel::parseElem(const std::string& text) const {
  if (text == "0") return false;
  if (text == "inf") return true;
  throw std::invalid_argument("twopoint element must be 0 or inf");
}

std::vector<CuModel::StateEval> TwoPointModel::stateEvaluators() const {
  return {{"indicator", [](const Elem& x) -> std::optional<ExtNonnegScalar> {
             return tp(x) ? ExtNonnegScalar::infinity() : ExtNonnegScalar(Rat(0));
           }}};
}

// ---- CalkinModel ------------------------------------------------------------

const CalkinElem& CalkinModel::get(const Elem& x) {
  return std::any_cast<const CalkinElem&>(x);
}

Elem CalkinModel::add(const Elem& xe, const Elem& ye) const {
  const CalkinElem &x = get(xe), &y = get(ye);
  if (x.kind == CalkinElem::InfPrime || y.kind == CalkinElem::InfPrime)
    return CalkinElem{CalkinElem::InfPrime, 0};
  if (x.kind == CalkinElem::Inf || y.kind == CalkinElem::Inf)
    return CalkinElem{CalkinElem::Inf, 0};
  return CalkinElem{CalkinElem::Finite, x.n + y.n};
}

bool CalkinModel::leq(const Elem& xe, const Elem& ye) const {
  const CalkinElem &x = get(xe), &y = get(ye);
  if (y.kind == CalkinElem::InfPrime) return true;
  if (x.kind == CalkinElem::InfPrime) return false;
  if (y.kind == CalkinElem::Inf) return true;
  if (x.kind == CalkinElem::Inf) return false;
  return x.n <= y.n;
}

bool CalkinModel::wayBelow(const Elem& xe, const Elem& ye) const {
  const CalkinElem &x = get(xe), &y = get(ye);
  // inf' is only reached by sequences that eventually equal inf', so
  // everything is way below inf'. Below inf or a finite element, only finite
  // elements are compact enough.
  if (y.kind == CalkinElem::InfPrime) return true;
  if (x.kind != CalkinElem::Finite) return false;
  return leq(xe, ye);
}

std::vector<Elem> CalkinModel::basis(std::size_t count) const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i + 2 < count; ++i) out.push_back(CalkinElem{CalkinElem::Finite, i});
  out.push_back(CalkinElem{CalkinElem::Inf, 0});
  out.push_back(CalkinElem{CalkinElem::InfPrime, 0});
  return out;
}

std::optional<Elem> CalkinModel::supOfIncreasing(const IncreasingSeq& s) const {
  if (auto e = CuModel::supOfIncreasing(s)) return e;
  // Unbounded runs of finite values sup to inf (the least upper bound; inf'
  // is only the sup of sequences that hit it).
  std::size_t base = s.prefix.size();
  CalkinElem last = get(s.at(base));
  int stable = 0;
  for (std::size_t step = 1; step <= 4096; step *= 2) {
    CalkinElem v = get(s.at(base + step));
    if (v.kind == CalkinElem::InfPrime) return Elem(v);  // top: nothing above it
    if (v.kind == last.kind && v.n == last.n) {
      if (++stable >= 3) return Elem(v);
    } else {
      stable = 0;
      last = v;
      if (v.kind == CalkinElem::Finite && v.n > 1000000)
        return Elem(CalkinElem{CalkinElem::Inf, 0});
    }
  }
  return std::nullopt;
}

std::vector<Elem> CalkinModel::rapidSequenceFor(const Elem& xe, std::size_t len) const {
  const CalkinElem& x = get(xe);
  std::vector<Elem> out;
  for (std::size_t i = 0; i < len; ++i) {
    if (x.kind == CalkinElem::Inf)
      out.push_back(
          CalkinElem{CalkinElem::Finite, std::uint64_t(1) << std::min<std::size_t>(i + 1, 62)});
    else
      out.push_back(x);
  }
  return out;
}

std::vector<IncreasingSeq> CalkinModel::increasingSamples(std::mt19937_64& rng,
                                                          std::size_t count) const {
  auto out = CuModel::increasingSamples(rng, count - count / 4);
  for (std::size_t i = 0; i < count / 4; ++i) {
    std::uint64_t a = rng() % 4;
    IncreasingSeq s;
    s.gen = [a](std::size_t k) { return Elem(CalkinElem{CalkinElem::Finite, a + k}); };
    s.declaredSup = Elem(CalkinElem{CalkinElem::Inf, 0});
    out.push_back(std::move(s));
  }
  return out;
}

std::string CalkinModel::printElem(const Elem& xe) const {
  const CalkinElem& x = get(xe);
  switch (x.kind) {
    case CalkinElem::Finite: return std::to_string(x.n);
    case CalkinElem::Inf: return "inf";
    default: return "inf'";
  }
}

Elem CalkinModel::parseElem(const std::string& text) const {
  if (text == "inf") return CalkinElem{CalkinElem::Inf, 0};
  if (text == "inf'") return CalkinElem{CalkinElem::InfPrime, 0};
  return CalkinElem{CalkinElem::Finite, ExtNat::parse(text).finite()};
}

std::vector<CuModel::StateEval> CalkinModel::stateEvaluators() const {
  return {{"count", [](const Elem& xe) -> std::optional<ExtNonnegScalar> {
             const CalkinElem& x = get(xe);
             if (x.kind == CalkinElem::Finite) return ExtNonnegScalar(Rat(Int(x.n)));
             return ExtNonnegScalar::infinity();
           }}};
}

// ---- SubsemigroupModel ------------------------------------------------------

static constexpr std::size_t kMemberBound = 4096;

SubsemigroupModel::SubsemigroupModel(std::vector<std::uint64_t> gens) : gens_(std::move(gens)) {
  if (gens_.empty()) throw std::invalid_argument("subsemigroup needs generators");
  member_.assign(kMemberBound + 1, false);
  member_[0] = true;
  for (std::size_t v = 1; v <= kMemberBound; ++v)
    for (std::uint64_t g : gens_)
      if (g <= v && g > 0 && member_[v - g]) {
        member_[v] = true;
        break;
      }
}

std::string SubsemigroupModel::name() const {
  std::string s = "subsemigroup<";
  for (std::size_t i = 0; i < gens_.size(); ++i)
    s += (i ? "," : "") + std::to_string(gens_[i]);
  return s + ">+inf";
}

bool SubsemigroupModel::isMember(std::uint64_t v) const {
  if (v <= kMemberBound) return member_[v];
  // Beyond the table everything past the Frobenius bound of the generators is
  // a member as long as gcd is 1; fall back to a conservative check.
  std::uint64_t g = std::accumulate(gens_.begin(), gens_.end(), std::uint64_t{0},
                                    [](std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); });
  return g != 0 && v % g == 0;
}

Elem SubsemigroupModel::add(const Elem& x, const Elem& y) const {
  return ExtNatModel::get(x) + ExtNatModel::get(y);
}
bool SubsemigroupModel::leq(const Elem& x, const Elem& y) const {
  return ExtNatModel::get(x) <= ExtNatModel::get(y);
}
bool SubsemigroupModel::wayBelow(const Elem& x, const Elem& y) const {
  return extnatWayBelow(ExtNatModel::get(x), ExtNatModel::get(y));
}

std::vector<Elem> SubsemigroupModel::basis(std::size_t count) const {
  std::vector<Elem> out;
  for (std::uint64_t v = 0; v <= kMemberBound && out.size() + 1 < count; ++v)
    if (member_[v]) out.push_back(ExtNat(v));
  out.push_back(ExtNat::infinity());
  return out;
}

std::optional<Elem> SubsemigroupModel::supOfIncreasing(const IncreasingSeq& s) const {
  if (auto e = CuModel::supOfIncreasing(s)) return e;
  if (auto v = probeExtNatSup(s, &ExtNatModel::get)) return *v;
  return std::nullopt;
}

std::vector<Elem> SubsemigroupModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  const ExtNat& v = ExtNatModel::get(x);
  std::vector<Elem> out;
  std::uint64_t g = gens_.front();
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(v.isInf()
                      ? Elem(ExtNat(g * (std::uint64_t(1) << std::min<std::size_t>(i + 2, 56))))
                      : Elem(v));
  return out;
}

std::vector<IncreasingSeq> SubsemigroupModel::increasingSamples(std::mt19937_64& rng,
                                                               std::size_t count) const {
  auto out = CuModel::increasingSamples(rng, count - count / 4);
  std::uint64_t g = gens_.front();
  for (std::size_t i = 0; i < count / 4; ++i) {
    std::uint64_t a = (rng() % 3) * g;
    IncreasingSeq s;
    s.gen = [a, g](std::size_t k) { return Elem(ExtNat(a + g * k)); };
    s.declaredSup = Elem(ExtNat::infinity());
    out.push_back(std::move(s));
  }
  return out;
}

std::string SubsemigroupModel::printElem(const Elem& x) const {
  return ExtNatModel::get(x).str();
}

Elem SubsemigroupModel::parseElem(const std::string& text) const {
  ExtNat v = ExtNat::parse(text);
  if (!v.isInf() && !isMember(v.finite()))
    throw std::invalid_argument(text + " is not a member of " + name());
  return v;
}

// ---- ExtNatTupleModel -------------------------------------------------------

ExtNatTupleModel::ExtNatTupleModel(std::size_t k, std::string label)
    : k_(k), label_(std::move(label)) {
  if (k_ == 0) throw std::invalid_argument("tuple model needs arity >= 1");
}

std::string ExtNatTupleModel::name() const {
  return label_.empty() ? "extnat^" + std::to_string(k_) : label_;
}

const std::vector<ExtNat>& ExtNatTupleModel::get(const Elem& x) {
  return std::any_cast<const std::vector<ExtNat>&>(x);
}

Elem ExtNatTupleModel::zero() const { return std::vector<ExtNat>(k_, ExtNat(0)); }

Elem ExtNatTupleModel::add(const Elem& xe, const Elem& ye) const {
  const auto &x = get(xe), &y = get(ye);
  std::vector<ExtNat> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = x[i] + y[i];
  return out;
}

bool ExtNatTupleModel::leq(const Elem& xe, const Elem& ye) const {
  const auto &x = get(xe), &y = get(ye);
  for (std::size_t i = 0; i < k_; ++i)
    if (!(x[i] <= y[i])) return false;
  return true;
}

bool ExtNatTupleModel::wayBelow(const Elem& xe, const Elem& ye) const {
  const auto &x = get(xe), &y = get(ye);
  for (std::size_t i = 0; i < k_; ++i)
    if (!extnatWayBelow(x[i], y[i])) return false;
  return true;
}

std::vector<Elem> ExtNatTupleModel::basis(std::size_t count) const {
  // Mixed-radix enumeration over {0,1,2,inf} per coordinate.
  const ExtNat digits[4] = {ExtNat(0), ExtNat(1), ExtNat(2), ExtNat::infinity()};
  std::vector<Elem> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k_ && total < count * 4; ++i) total *= 4;
  for (std::size_t code = 0; code < total && out.size() < count; ++code) {
    std::vector<ExtNat> v(k_, ExtNat(0));
    std::size_t c = code;
    for (std::size_t i = 0; i < k_; ++i) {
      v[i] = digits[c % 4];
      c /= 4;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Elem> ExtNatTupleModel::supOfIncreasing(const IncreasingSeq& s) const {
  if (auto e = CuModel::supOfIncreasing(s)) return e;
  // Probe coordinatewise.
  std::size_t base = s.prefix.size();
  std::vector<ExtNat> last = get(s.at(base));
  std::vector<int> stable(k_, 0);
  for (std::size_t step = 1; step <= 4096; step *= 2) {
    std::vector<ExtNat> v = get(s.at(base + step));
    bool allStable = true;
    for (std::size_t i = 0; i < k_; ++i) {
      if (v[i] == last[i]) {
        ++stable[i];
      } else {
        stable[i] = 0;
        last[i] = v[i];
        if (!v[i].isInf() && v[i].finite() > 1000000) {
          last[i] = ExtNat::infinity();
          stable[i] = 3;
        }
      }
      if (stable[i] < 3 && !last[i].isInf()) allStable = false;
    }
    if (allStable) return Elem(last);
  }
  return std::nullopt;
}

std::vector<Elem> ExtNatTupleModel::rapidSequenceFor(const Elem& xe, std::size_t len) const {
  const auto& x = get(xe);
  std::vector<Elem> out;
  for (std::size_t j = 0; j < len; ++j) {
    std::vector<ExtNat> v(k_);
    for (std::size_t i = 0; i < k_; ++i)
      v[i] = x[i].isInf() ? ExtNat(std::uint64_t(1) << std::min<std::size_t>(j + 1, 62)) : x[i];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<IncreasingSeq> ExtNatTupleModel::increasingSamples(std::mt19937_64& rng,
                                                               std::size_t count) const {
  auto out = CuModel::increasingSamples(rng, count - count / 4);
  for (std::size_t i = 0; i < count / 4; ++i) {
    std::vector<std::uint64_t> slope(k_), start(k_);
    std::vector<ExtNat> sup(k_);
    for (std::size_t j = 0; j < k_; ++j) {
      slope[j] = rng() % 2;
      start[j] = rng() % 4;
      sup[j] = slope[j] ? ExtNat::infinity() : ExtNat(start[j]);
    }
    IncreasingSeq s;
    std::size_t k = k_;
    s.gen = [slope, start, k](std::size_t step) {
      std::vector<ExtNat> v(k);
      for (std::size_t j = 0; j < k; ++j) v[j] = ExtNat(start[j] + slope[j] * step);
      return Elem(v);
    };
    s.declaredSup = Elem(sup);
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<Elem> ExtNatTupleModel::joinCandidate(const Elem& xe, const Elem& ye) const {
  const auto &x = get(xe), &y = get(ye);
  std::vector<ExtNat> out(k_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = x[i] <= y[i] ? y[i] : x[i];
  return Elem(out);
}

std::vector<CuModel::StateEval> ExtNatTupleModel::stateEvaluators() const {
  std::vector<StateEval> out;
  for (std::size_t i = 0; i < k_; ++i)
    out.push_back({"coord" + std::to_string(i),
                   [i](const Elem& xe) -> std::optional<ExtNonnegScalar> {
                     return extNatValue(get(xe)[i]);
                   }});
  return out;
}

std::string ExtNatTupleModel::printElem(const Elem& xe) const {
  const auto& x = get(xe);
  std::string s = "(";
  for (std::size_t i = 0; i < k_; ++i) s += (i ? "," : "") + x[i].str();
  return s + ")";
}

Elem ExtNatTupleModel::parseElem(const std::string& text) const {
  std::string t = text;
  if (!t.empty() && t.front() == '(') t = t.substr(1, t.size() - (t.back() == ')' ? 2 : 1));
  std::vector<ExtNat> v;
  std::stringstream ss(t);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(ExtNat::parse(tok));
  if (v.size() != k_)
    throw std::invalid_argument("expected " + std::to_string(k_) + " coordinates");
  return v;
}

std::vector<ExtNat> ExtNatTupleModel::matApply(
    const std::vector<std::vector<std::uint64_t>>& m, const std::vector<ExtNat>& v) {
  std::vector<ExtNat> out(m.size(), ExtNat(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = out[i] + v[j].times(m[i][j]);
  }
  return out;
}

}  // namespace cuntz
