#include "cuntz/lsc.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cuntz {

namespace {

Slot canonicalLo(Slot s) { return s.side < 0 ? Slot{s.v, 0} : s; }
Slot canonicalHi(Slot s) { return s.side > 0 ? Slot{s.v, 0} : s; }

ExtNat minE(const ExtNat& a, const ExtNat& b) { return a <= b ? a : b; }
ExtNat maxE(const ExtNat& a, const ExtNat& b) { return a <= b ? b : a; }

ExtNat adjacentMin(const std::vector<ExtNat>& ivals, std::size_t i) {
  if (i == 0) return ivals.front();
  if (i == ivals.size()) return ivals.back();
  return minE(ivals[i - 1], ivals[i]);
}

std::vector<Rat> mergedCuts(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> m;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

// Both functions resampled on the union of their breakpoints. Open intervals
// between consecutive merged cuts contain no breakpoint of either function, so
// the midpoint value is the interval value.
struct Refined {
  std::vector<Rat> cuts;
  std::vector<ExtNat> fi, fp, gi, gp;
};

Refined refine(const StepLsc& f, const StepLsc& g) {
  Refined r;
  r.cuts = mergedCuts(f.cuts, g.cuts);
  for (std::size_t j = 0; j + 1 < r.cuts.size(); ++j) {
    Rat mid = (r.cuts[j] + r.cuts[j + 1]) / 2;
    r.fi.push_back(f.at(mid));
    r.gi.push_back(g.at(mid));
  }
  for (const auto& c : r.cuts) {
    r.fp.push_back(f.at(c));
    r.gp.push_back(g.at(c));
  }
  return r;
}

// Rebuild a step function from nested relatively open level sets
// S_1 >= S_2 >= ...: value at a point is the largest n whose S_n contains it.
StepLsc fromLevelSets(const std::vector<IntervalSet>& levels) {
  std::set<Rat> cutset{Rat(0), Rat(1)};
  for (const auto& s : levels)
    for (const auto& p : s.parts) {
      cutset.insert(p.lo.v);
      cutset.insert(p.hi.v);
    }
  std::vector<Rat> cuts(cutset.begin(), cutset.end());
  auto valueAt = [&](const Rat& x) {
    std::uint64_t v = 0;
    for (std::size_t n = 0; n < levels.size(); ++n)
      if (levels[n].containsPoint(x)) v = n + 1;
    return ExtNat(v);
  };
  std::vector<ExtNat> ivals;
  std::vector<std::optional<ExtNat>> pvals;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
    ivals.push_back(valueAt((cuts[j] + cuts[j + 1]) / 2));
  for (const auto& c : cuts) pvals.push_back(valueAt(c));
  return StepLsc::make(std::move(cuts), std::move(ivals), std::move(pvals));
}

}  // namespace

IntervalSet IntervalSet::closedInterval(const Rat& a, const Rat& b) {
  IntervalSet s;
  s.addPart(Slot{a, 0}, Slot{b, 0});
  s.normalize();
  return s;
}

IntervalSet IntervalSet::openInterval(const Rat& a, const Rat& b) {
  IntervalSet s;
  s.addPart(Slot{a, +1}, Slot{b, -1});
  s.normalize();
  return s;
}

IntervalSet IntervalSet::point(const Rat& a) {
  IntervalSet s;
  s.addPart(Slot{a, 0}, Slot{a, 0});
  s.normalize();
  return s;
}

void IntervalSet::addPart(Slot lo, Slot hi) {
  lo = canonicalLo(lo);
  hi = canonicalHi(hi);
  if (hi < lo) return;
  parts.push_back({lo, hi});
}

void IntervalSet::normalize() {
  std::vector<Part> ps;
  for (const auto& p : parts) {
    Slot lo = canonicalLo(p.lo), hi = canonicalHi(p.hi);
    if (!(hi < lo)) ps.push_back({lo, hi});
  }
  std::sort(ps.begin(), ps.end(), [](const Part& a, const Part& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  parts.clear();
  for (const auto& p : ps) {
    if (!parts.empty() && (p.lo < parts.back().hi.succ() || p.lo == parts.back().hi.succ())) {
      if (parts.back().hi < p.hi) parts.back().hi = p.hi;
    } else {
      parts.push_back(p);
    }
  }
}

IntervalSet IntervalSet::closure() const {
  IntervalSet out;
  for (const auto& p : parts) out.addPart(Slot{p.lo.v, 0}, Slot{p.hi.v, 0});
  out.normalize();
  return out;
}

IntervalSet IntervalSet::interiorIn01() const {
  // Normalized parts are separated by nonempty gaps, so the interior of the
  // union is the union of the part interiors.
  IntervalSet out;
  for (const auto& p : parts) {
    Slot lo = p.lo, hi = p.hi;
    if (lo.side == 0 && lo.v != 0) lo = Slot{lo.v, +1};
    if (hi.side == 0 && hi.v != 1) hi = Slot{hi.v, -1};
    out.addPart(lo, hi);
  }
  out.normalize();
  return out;
}

bool IntervalSet::containsSet(const IntervalSet& other) const {
  // A connected subset of a normalized union lies inside a single part.
  for (const auto& o : other.parts) {
    bool covered = false;
    for (const auto& p : parts)
      if (p.lo <= o.lo && o.hi <= p.hi) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool IntervalSet::containsPoint(const Rat& x) const {
  Slot s{x, 0};
  for (const auto& p : parts)
    if (p.lo <= s && s <= p.hi) return true;
  return false;
}

IntervalSet IntervalSet::shrinkOpen(const Rat& delta) const {
  if (delta <= 0) throw std::invalid_argument("shrinkOpen: delta must be positive");
  IntervalSet out;
  for (const auto& p : parts) {
    Slot lo = p.lo, hi = p.hi;
    if (!(lo.v == 0 && lo.side == 0)) lo = Slot{lo.v + delta, +1};
    if (!(hi.v == 1 && hi.side == 0)) hi = Slot{hi.v - delta, -1};
    out.addPart(lo, hi);
  }
  out.normalize();
  return out;
}

std::string IntervalSet::str() const {
  if (parts.empty()) return "{}";
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += " u ";
    if (p.lo == p.hi) {
      s += "{" + ratToString(p.lo.v) + "}";
      continue;
    }
    s += (p.lo.side == 0 ? "[" : "(") + ratToString(p.lo.v) + ", " + ratToString(p.hi.v) +
         (p.hi.side == 0 ? "]" : ")");
  }
  return s;
}

StepLsc StepLsc::make(std::vector<Rat> cuts, std::vector<ExtNat> ivals,
                      std::vector<std::optional<ExtNat>> pvals) {
  if (cuts.size() < 2) throw std::invalid_argument("lsc: need at least the cuts 0 and 1");
  if (cuts.front() != 0 || cuts.back() != 1)
    throw std::invalid_argument("lsc: cuts must start at 0 and end at 1");
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (!(cuts[i] < cuts[i + 1]))
      throw std::invalid_argument("lsc: cuts must be strictly increasing");
  if (ivals.size() + 1 != cuts.size())
    throw std::invalid_argument("lsc: need exactly one interval value per gap");
  if (!pvals.empty() && pvals.size() != cuts.size())
    throw std::invalid_argument("lsc: need one point value per cut when given");
  StepLsc f;
  f.cuts = std::move(cuts);
  f.ivals = std::move(ivals);
  f.pvals.reserve(f.cuts.size());
  for (std::size_t i = 0; i < f.cuts.size(); ++i) {
    ExtNat cap = adjacentMin(f.ivals, i);
    if (i < pvals.size() && pvals[i]) {
      if (!(*pvals[i] <= cap))
        throw std::invalid_argument(
            "lsc: point value above the adjacent minimum breaks lower semicontinuity");
      f.pvals.push_back(*pvals[i]);
    } else {
      f.pvals.push_back(cap);
    }
  }
  f.canonicalize();
  return f;
}

StepLsc StepLsc::constant(const ExtNat& v) {
  return make({Rat(0), Rat(1)}, {v});
}

ExtNat StepLsc::at(const Rat& x) const {
  if (x < 0 || x > 1) throw std::out_of_range("lsc: point outside [0,1]");
  auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
  if (it != cuts.end() && *it == x) return pvals[static_cast<std::size_t>(it - cuts.begin())];
  return ivals[static_cast<std::size_t>(it - cuts.begin()) - 1];
}

ExtNat StepLsc::maxFiniteValue() const {
  std::uint64_t m = 0;
  for (const auto& v : ivals)
    if (!v.isInf()) m = std::max(m, v.finite());
  for (const auto& v : pvals)
    if (!v.isInf()) m = std::max(m, v.finite());
  return ExtNat(m);
}

bool StepLsc::hasInf() const {
  auto isInf = [](const ExtNat& v) { return v.isInf(); };
  return std::any_of(ivals.begin(), ivals.end(), isInf) ||
         std::any_of(pvals.begin(), pvals.end(), isInf);
}

void StepLsc::canonicalize() {
  std::vector<Rat> nc{cuts.front()};
  std::vector<ExtNat> ni;
  std::vector<ExtNat> np{pvals.front()};
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (i + 1 < cuts.size() && ivals[i] == ivals[i - 1] && pvals[i] == ivals[i]) continue;
    nc.push_back(cuts[i]);
    ni.push_back(ivals[i - 1]);
    np.push_back(pvals[i]);
  }
  cuts = std::move(nc);
  ivals = std::move(ni);
  pvals = std::move(np);
}

bool operator==(const StepLsc& a, const StepLsc& b) {
  return a.cuts == b.cuts && a.ivals == b.ivals && a.pvals == b.pvals;
}

std::string StepLsc::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (i) os << " [" << ivals[i - 1].str() << "] ";
    os << ratToString(cuts[i]);
    if (pvals[i] != adjacentMin(ivals, i)) os << '{' << pvals[i].str() << '}';
  }
  return os.str();
}

StepLsc StepLsc::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  if (toks.empty() || toks.size() % 2 == 0)
    throw std::invalid_argument("lsc parse: expected 'cut [value] cut ... cut'");
  std::vector<Rat> cuts;
  std::vector<ExtNat> ivals;
  std::vector<std::optional<ExtNat>> pvals;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string& tok = toks[i];
    if (i % 2 == 0) {
      std::string cutTok = tok;
      std::optional<ExtNat> pv;
      auto brace = tok.find('{');
      if (brace != std::string::npos) {
        if (tok.back() != '}')
          throw std::invalid_argument("lsc parse: unterminated point value in '" + tok + "'");
        pv = ExtNat::parse(tok.substr(brace + 1, tok.size() - brace - 2));
        cutTok = tok.substr(0, brace);
      }
      cuts.push_back(ratFromString(cutTok));
      pvals.push_back(pv);
    } else {
      if (tok.size() < 3 || tok.front() != '[' || tok.back() != ']')
        throw std::invalid_argument("lsc parse: expected [value], got '" + tok + "'");
      ivals.push_back(ExtNat::parse(tok.substr(1, tok.size() - 2)));
    }
  }
  return make(std::move(cuts), std::move(ivals), std::move(pvals));
}

nlohmann::json StepLsc::toJson() const {
  nlohmann::json j;
  j["cuts"] = nlohmann::json::array();
  j["ivals"] = nlohmann::json::array();
  j["pvals"] = nlohmann::json::array();
  for (const auto& c : cuts) j["cuts"].push_back(ratToString(c));
  for (const auto& v : ivals) j["ivals"].push_back(v.str());
  for (const auto& v : pvals) j["pvals"].push_back(v.str());
  return j;
}

StepLsc StepLsc::fromJson(const nlohmann::json& j) {
  for (const char* key : {"cuts", "ivals", "pvals"})
    if (!j.contains(key) || !j[key].is_array())
      throw std::invalid_argument(std::string("lsc json: missing array '") + key + "'");
  std::vector<Rat> cuts;
  std::vector<ExtNat> ivals;
  std::vector<std::optional<ExtNat>> pvals;
  for (const auto& c : j["cuts"]) cuts.push_back(ratFromString(c.get<std::string>()));
  for (const auto& v : j["ivals"]) ivals.push_back(ExtNat::parse(v.get<std::string>()));
  for (const auto& v : j["pvals"]) pvals.push_back(ExtNat::parse(v.get<std::string>()));
  return make(std::move(cuts), std::move(ivals), std::move(pvals));
}

StepLsc lscAdd(const StepLsc& f, const StepLsc& g) {
  auto r = refine(f, g);
  std::vector<ExtNat> iv;
  std::vector<std::optional<ExtNat>> pv;
  for (std::size_t j = 0; j < r.fi.size(); ++j) iv.push_back(r.fi[j] + r.gi[j]);
  for (std::size_t i = 0; i < r.fp.size(); ++i) pv.push_back(r.fp[i] + r.gp[i]);
  return StepLsc::make(std::move(r.cuts), std::move(iv), std::move(pv));
}

bool lscLeq(const StepLsc& f, const StepLsc& g) {
  auto r = refine(f, g);
  for (std::size_t j = 0; j < r.fi.size(); ++j)
    if (!(r.fi[j] <= r.gi[j])) return false;
  for (std::size_t i = 0; i < r.fp.size(); ++i)
    if (!(r.fp[i] <= r.gp[i])) return false;
  return true;
}

StepLsc lscPointwiseMax(const StepLsc& f, const StepLsc& g) {
  auto r = refine(f, g);
  std::vector<ExtNat> iv;
  std::vector<std::optional<ExtNat>> pv;
  for (std::size_t j = 0; j < r.fi.size(); ++j) iv.push_back(maxE(r.fi[j], r.gi[j]));
  for (std::size_t i = 0; i < r.fp.size(); ++i) pv.push_back(maxE(r.fp[i], r.gp[i]));
  return StepLsc::make(std::move(r.cuts), std::move(iv), std::move(pv));
}

IntervalSet levelSet(const StepLsc& f, const ExtNat& n) {
  if (n == ExtNat(0)) return IntervalSet::closedInterval(Rat(0), Rat(1));
  IntervalSet out;
  for (std::size_t j = 0; j + 1 < f.cuts.size(); ++j)
    if (n <= f.ivals[j]) out.addPart(Slot{f.cuts[j], +1}, Slot{f.cuts[j + 1], -1});
  for (std::size_t i = 0; i < f.cuts.size(); ++i)
    if (n <= f.pvals[i]) out.addPart(Slot{f.cuts[i], 0}, Slot{f.cuts[i], 0});
  out.normalize();
  return out;
}

bool lscWayBelow(const StepLsc& f, const StepLsc& g) {
  // f << g forces f bounded: the canonical approximants of g are capped, and
  // f must sit below one of them.
  if (f.hasInf()) return false;
  std::uint64_t top = f.maxFiniteValue().finite();
  for (std::uint64_t n = 1; n <= top; ++n) {
    ExtNat level(n);
    if (!levelSet(g, level).interiorIn01().containsSet(levelSet(f, level).closure()))
      return false;
  }
  return true;
}

StepLsc canonicalApprox(const StepLsc& g, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("canonicalApprox: k must be positive");
  Rat delta = Rat(1) / Rat(k);
  std::uint64_t top = g.hasInf() ? k : std::min<std::uint64_t>(k, g.maxFiniteValue().finite());
  std::vector<IntervalSet> levels;
  levels.reserve(top);
  for (std::uint64_t n = 1; n <= top; ++n)
    levels.push_back(levelSet(g, ExtNat(n)).shrinkOpen(delta));
  return fromLevelSets(levels);
}

PLContinuous::PLContinuous(std::vector<Rat> xs_, std::vector<Rat> ys_)
    : xs(std::move(xs_)), ys(std::move(ys_)) {
  if (xs.size() < 2 || xs.size() != ys.size())
    throw std::invalid_argument("pl: need matching node and value lists, at least two nodes");
  if (xs.front() != 0 || xs.back() != 1)
    throw std::invalid_argument("pl: nodes must span [0,1]");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1])) throw std::invalid_argument("pl: nodes must be strictly increasing");
  for (const auto& y : ys)
    if (y < 0) throw std::invalid_argument("pl: values must be nonnegative");
}

Rat PLContinuous::at(const Rat& x) const {
  if (x < 0 || x > 1) throw std::out_of_range("pl: point outside [0,1]");
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  if (it != xs.end() && *it == x) return ys[i];
  return ys[i - 1] + (ys[i] - ys[i - 1]) * (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
}

IntervalSet PLContinuous::cozeroAbove(const Rat& eps) const {
  if (eps < 0) throw std::invalid_argument("pl: threshold must be nonnegative");
  IntervalSet out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (ys[i] > eps) out.addPart(Slot{xs[i], 0}, Slot{xs[i], 0});
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rat &a = xs[i], &b = xs[i + 1], &ya = ys[i], &yb = ys[i + 1];
    if (ya == yb) {
      if (ya > eps) out.addPart(Slot{a, +1}, Slot{b, -1});
      continue;
    }
    if (ya > eps && yb > eps) {
      out.addPart(Slot{a, +1}, Slot{b, -1});
      continue;
    }
    Rat c = a + (eps - ya) * (b - a) / (yb - ya);
    if (ya > eps) out.addPart(Slot{a, +1}, Slot{c, -1});
    else if (yb > eps) out.addPart(Slot{c, +1}, Slot{b, -1});
  }
  out.normalize();
  return out;
}

std::string PLContinuous::str() const {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += "(" + ratToString(xs[i]) + "," + ratToString(ys[i]) + ")";
  }
  return s;
}

PLContinuous plAdd(const PLContinuous& f, const PLContinuous& g) {
  auto cuts = mergedCuts(f.xs, g.xs);
  std::vector<Rat> ys;
  ys.reserve(cuts.size());
  for (const auto& x : cuts) ys.push_back(f.at(x) + g.at(x));
  return PLContinuous(std::move(cuts), std::move(ys));
}

bool suppCompare(const PLContinuous& f, const PLContinuous& g) {
  return g.support().containsSet(f.support());
}

bool isProjectionClassLsc(const StepLsc& f) {
  return f.cuts.size() == 2 && !f.ivals[0].isInf() && f.pvals[0] == f.ivals[0] &&
         f.pvals[1] == f.ivals[0];
}

bool isProjectionClassLsc(const PLContinuous& f) {
  // The only projections over a connected base are 0 and the unit, so the
  // class is a projection class iff f vanishes nowhere or everywhere.
  IntervalSet s = f.support();
  return s.empty() || s.containsSet(IntervalSet::closedInterval(Rat(0), Rat(1)));
}

const StepLsc& StepLscModel::get(const Elem& x) { return std::any_cast<const StepLsc&>(x); }

Elem StepLscModel::add(const Elem& x, const Elem& y) const { return lscAdd(get(x), get(y)); }

bool StepLscModel::leq(const Elem& x, const Elem& y) const { return lscLeq(get(x), get(y)); }

bool StepLscModel::wayBelow(const Elem& x, const Elem& y) const {
  return lscWayBelow(get(x), get(y));
}

std::vector<Elem> StepLscModel::basis(std::size_t count) const {
  const std::vector<Rat> grid{Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
  const ExtNat vals[4] = {ExtNat(0), ExtNat(1), ExtNat(2), ExtNat::infinity()};
  std::vector<Elem> out;
  std::set<std::string> seen;
  auto push = [&](const StepLsc& f) {
    if (out.size() < count && seen.insert(f.str()).second) out.push_back(f);
  };
  push(StepLsc::constant(ExtNat(0)));
  push(StepLsc::make({Rat(0), Rat(1, 2), Rat(1)}, {ExtNat(1), ExtNat(1)},
                     {std::nullopt, ExtNat(0), std::nullopt}));
  for (unsigned mask = 0; mask < 256 && out.size() < count; ++mask) {
    std::vector<ExtNat> iv;
    for (unsigned j = 0; j < 4; ++j) iv.push_back(vals[(mask >> (2 * j)) & 3u]);
    push(StepLsc::make(grid, std::move(iv)));
  }
  return out;
}

std::optional<Elem> StepLscModel::supOfIncreasing(const IncreasingSeq& s) const {
  if (auto base = CuModel::supOfIncreasing(s)) return base;
  if (!s.gen) return std::nullopt;
  StepLsc p8 = get(s.at(8)), p16 = get(s.at(16)), p32 = get(s.at(32));
  if (p8 == p16 && p16 == p32) return Elem(p32);
  if (p8.cuts != p16.cuts || p16.cuts != p32.cuts) return std::nullopt;
  // Fixed grid: each position is monotone along the sequence. Stable positions
  // keep their value; positions still growing at three successive probes are
  // extrapolated to infinity. The sequences this model emits are linear or
  // eventually constant per position, so the extrapolation is exact for them,
  // and callers verify the candidate rather than trusting it.
  auto extrap = [](const ExtNat& x, const ExtNat& y, const ExtNat& z) -> std::optional<ExtNat> {
    if (x == y && y == z) return z;
    if (x < y && y < z) return ExtNat::infinity();
    return std::nullopt;
  };
  std::vector<ExtNat> iv;
  std::vector<std::optional<ExtNat>> pv;
  for (std::size_t j = 0; j < p8.ivals.size(); ++j) {
    auto e = extrap(p8.ivals[j], p16.ivals[j], p32.ivals[j]);
    if (!e) return std::nullopt;
    iv.push_back(*e);
  }
  for (std::size_t i = 0; i < p8.pvals.size(); ++i) {
    auto e = extrap(p8.pvals[i], p16.pvals[i], p32.pvals[i]);
    if (!e) return std::nullopt;
    pv.push_back(*e);
  }
  try {
    return Elem(StepLsc::make(p32.cuts, std::move(iv), std::move(pv)));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::vector<Elem> StepLscModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  const StepLsc& f = get(x);
  std::vector<Elem> out;
  out.reserve(len);
  // Doubling k keeps the tail's value cap and mesh ahead of every sampled sum.
  for (std::size_t k = 1; k <= len; ++k)
    out.push_back(canonicalApprox(f, std::uint64_t(1) << std::min<std::size_t>(k + 2, 14)));
  return out;
}

std::vector<IncreasingSeq> StepLscModel::increasingSamples(std::mt19937_64& rng,
                                                           std::size_t count) const {
  auto pool = basis(16);
  auto pick = [&]() { return get(pool[rng() % pool.size()]); };
  std::vector<IncreasingSeq> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    switch (c % 3) {
      case 0: {  // canonical approximants, supremum the approximated element
        StepLsc x = pick();
        IncreasingSeq s;
        s.gen = [x](std::size_t i) { return Elem(canonicalApprox(x, i + 1)); };
        s.declaredSup = Elem(x);
        out.push_back(std::move(s));
        break;
      }
      case 1: {  // ramp f + i*g, supremum f with infinity wherever g is positive
        StepLsc f = pick();
        StepLsc g = pick();
        if (g == StepLsc::constant(ExtNat(0))) g = get(pool[1]);
        auto r = refine(f, g);
        IncreasingSeq s;
        s.gen = [r](std::size_t i) {
          std::vector<ExtNat> iv;
          std::vector<std::optional<ExtNat>> pv;
          for (std::size_t j = 0; j < r.fi.size(); ++j) iv.push_back(r.fi[j] + r.gi[j].times(i));
          for (std::size_t p = 0; p < r.fp.size(); ++p) pv.push_back(r.fp[p] + r.gp[p].times(i));
          return Elem(StepLsc::make(r.cuts, std::move(iv), std::move(pv)));
        };
        std::vector<ExtNat> si;
        std::vector<std::optional<ExtNat>> sp;
        for (std::size_t j = 0; j < r.fi.size(); ++j)
          si.push_back(r.gi[j] == ExtNat(0) ? r.fi[j] : ExtNat::infinity());
        for (std::size_t p = 0; p < r.fp.size(); ++p)
          sp.push_back(r.gp[p] == ExtNat(0) ? r.fp[p] : ExtNat::infinity());
        s.declaredSup = Elem(StepLsc::make(r.cuts, std::move(si), std::move(sp)));
        out.push_back(std::move(s));
        break;
      }
      default: {  // eventually constant three-step chain
        StepLsc f = pick();
        StepLsc g = pick();
        StepLsc m1 = lscAdd(f, g);
        out.push_back(IncreasingSeq::fromVector({f, m1, lscAdd(m1, g)}));
        break;
      }
    }
  }
  return out;
}

std::string StepLscModel::printElem(const Elem& x) const { return get(x).str(); }

Elem StepLscModel::parseElem(const std::string& text) const { return StepLsc::parse(text); }

std::optional<Elem> StepLscModel::joinCandidate(const Elem& x, const Elem& y) const {
  return Elem(lscPointwiseMax(get(x), get(y)));
}

CuModel::Classification StepLscModel::classify(const Elem& x) const {
  return isProjectionClassLsc(get(x)) ? Classification::ProjectionClass
                                      : Classification::PurelyPositive;
}

}  // namespace cuntz
