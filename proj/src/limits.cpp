#include "cuntz/limits.hpp"

#include <algorithm>
#include <stdexcept>

#include "cuntz/models.hpp"

namespace cuntz {

CuSystem::CuSystem(std::string name, std::function<ModelPtr(std::size_t)> stageAt,
                   std::function<Elem(std::size_t, const Elem&)> connect, bool orderEmbedding)
    : name_(std::move(name)),
      stageAt_(std::move(stageAt)),
      connect_(std::move(connect)),
      orderEmbedding_(orderEmbedding) {
  if (!stageAt_ || !connect_) throw std::invalid_argument("system: missing stage or map data");
}

Elem CuSystem::push(std::size_t i, std::size_t j, const Elem& x) const {
  if (j < i) throw std::invalid_argument("system: can only push forward");
  Elem cur = x;
  for (std::size_t k = i; k < j; ++k) cur = connect_(k, cur);
  return cur;
}

CuSystem afSystem(const std::vector<std::vector<std::uint64_t>>& mult, std::string name) {
  const std::size_t k = mult.size();
  if (k == 0) throw std::invalid_argument("system: empty multiplicity matrix");
  bool nonzero = false;
  for (const auto& row : mult) {
    if (row.size() != k) throw std::invalid_argument("system: multiplicity matrix must be square");
    for (auto e : row) nonzero = nonzero || e != 0;
  }
  if (!nonzero) throw std::invalid_argument("system: multiplicity matrix must be nonzero");
  if (name.empty()) {
    name = "af[";
    for (std::size_t i = 0; i < k; ++i) {
      if (i) name += ";";
      for (std::size_t j = 0; j < k; ++j) name += (j ? "," : "") + std::to_string(mult[i][j]);
    }
    name += "]";
  }
  auto stage = std::make_shared<ExtNatTupleModel>(k);
  bool embedding = k == 1 && mult[0][0] >= 1;
  return CuSystem(
      std::move(name), [stage](std::size_t) -> ModelPtr { return stage; },
      [mult](std::size_t, const Elem& x) -> Elem {
        return ExtNatTupleModel::matApply(mult, ExtNatTupleModel::get(x));
      },
      embedding);
}

CuSystem uhfSystem(std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("system: uhf multiplier must be at least 2");
  auto stage = std::make_shared<ExtNatModel>();
  return CuSystem(
      "uhf-" + std::to_string(k), [stage](std::size_t) -> ModelPtr { return stage; },
      [k](std::size_t, const Elem& x) -> Elem { return ExtNatModel::get(x).times(k); }, true);
}

Tri limitLeq(const CuSystem& s, const LimitElement& a, const LimitElement& b,
             std::size_t horizon) {
  std::size_t j = std::max(a.stage, b.stage);
  Elem x = s.push(a.stage, j, a.value);
  Elem y = s.push(b.stage, j, b.value);
  bool prevFixed = false;
  for (std::size_t step = 0; step <= horizon; ++step, ++j) {
    ModelPtr m = s.stage(j);
    if (m->leq(x, y)) return Tri::True;
    if (s.orderEmbedding()) return Tri::False;
    Elem nx = s.step(j, x);
    Elem ny = s.step(j, y);
    bool fixedHere = s.stage(j + 1) == m && m->equal(nx, x) && m->equal(ny, y);
    if (fixedHere && prevFixed) return Tri::False;  // germs are stationary, order settled
    prevFixed = fixedHere;
    x = std::move(nx);
    y = std::move(ny);
  }
  return Tri::Unknown;
}

LimitModel::LimitModel(CuSystem s, std::size_t horizon) : sys_(std::move(s)), horizon_(horizon) {}

std::string LimitModel::name() const { return "lim(" + sys_.name() + ")"; }

Elem LimitModel::germ(std::size_t stage, Elem value) const {
  return LimitElement{stage, std::move(value)};
}

const LimitElement& LimitModel::get(const Elem& x) {
  return std::any_cast<const LimitElement&>(x);
}

std::pair<LimitElement, LimitElement> LimitModel::align(const Elem& xe, const Elem& ye) const {
  const LimitElement &x = get(xe), &y = get(ye);
  std::size_t j = std::max(x.stage, y.stage);
  return {LimitElement{j, sys_.push(x.stage, j, x.value)},
          LimitElement{j, sys_.push(y.stage, j, y.value)}};
}

Elem LimitModel::zero() const { return germ(0, sys_.stage(0)->zero()); }

Elem LimitModel::add(const Elem& xe, const Elem& ye) const {
  auto [x, y] = align(xe, ye);
  return germ(x.stage, sys_.stage(x.stage)->add(x.value, y.value));
}

bool LimitModel::leq(const Elem& xe, const Elem& ye) const {
  return limitLeq(sys_, get(xe), get(ye), horizon_) == Tri::True;
}

bool LimitModel::wayBelow(const Elem& xe, const Elem& ye) const {
  auto [x, y] = align(xe, ye);
  std::size_t j = x.stage;
  Elem xv = x.value, yv = y.value;
  for (std::size_t step = 0; step <= horizon_; ++step, ++j) {
    if (sys_.stage(j)->wayBelow(xv, yv)) return true;
    if (sys_.orderEmbedding() && !sys_.stage(j)->leq(xv, yv)) return false;
    xv = sys_.step(j, xv);
    yv = sys_.step(j, yv);
  }
  return false;
}

std::vector<Elem> LimitModel::basis(std::size_t count) const {
  std::vector<Elem> out;
  out.push_back(zero());
  std::size_t perStage = std::max<std::size_t>(2, count / 3);
  for (std::size_t st = 0; st < 3 && out.size() < count; ++st) {
    for (auto& b : sys_.stage(st)->basis(perStage)) {
      if (out.size() >= count) break;
      out.push_back(germ(st, std::move(b)));
    }
  }
  return out;
}

std::optional<Elem> LimitModel::supOfIncreasing(const IncreasingSeq& s) const {
  if (auto base = CuModel::supOfIncreasing(s)) return base;
  LimitElement probes[3] = {get(s.at(8)), get(s.at(16)), get(s.at(32))};
  std::size_t j = std::max({probes[0].stage, probes[1].stage, probes[2].stage});
  Elem a = sys_.push(probes[0].stage, j, probes[0].value);
  Elem b = sys_.push(probes[1].stage, j, probes[1].value);
  Elem c = sys_.push(probes[2].stage, j, probes[2].value);
  ModelPtr m = sys_.stage(j);
  if (m->equal(a, b) && m->equal(b, c)) return germ(j, std::move(c));
  return std::nullopt;
}

std::vector<Elem> LimitModel::rapidSequenceFor(const Elem& xe, std::size_t len) const {
  const LimitElement& x = get(xe);
  // Subsample the stage sequence on a doubling schedule: germ values carry the
  // stage scaling, so a plain stage prefix may crawl below lower-stage
  // elements; the subsequence keeps the same sup and stays rapidly increasing.
  // Cap the inner chain at 17 entries: stage staircases double, so entry j
  // holds values up to 2^(j+1), and connecting maps multiply by ~2^44 at the
  // horizon; 2^18 * 2^44 still fits in 64 bits while the tail stays far above
  // every sampled stage element. Repeated tail entries are harmless: finite
  // germs are compact, so each term is way below itself.
  std::size_t inner =
      std::min<std::size_t>(std::size_t{1} << std::min<std::size_t>(len, 14), 17);
  auto stageSeq = sys_.stage(x.stage)->rapidSequenceFor(x.value, inner);
  if (stageSeq.empty()) return {};
  std::vector<Elem> out;
  std::size_t idx = 1;
  for (std::size_t k = 0; k < len; ++k) {
    out.push_back(germ(x.stage, stageSeq[std::min(idx, stageSeq.size()) - 1]));
    idx *= 2;
  }
  return out;
}

std::vector<IncreasingSeq> LimitModel::increasingSamples(std::mt19937_64& rng,
                                                         std::size_t count) const {
  std::vector<IncreasingSeq> out;
  auto inner = sys_.stage(0)->increasingSamples(rng, count);
  const CuSystem& sys = sys_;
  for (auto& ss : inner) {
    IncreasingSeq w;
    std::size_t plen = std::max<std::size_t>(ss.prefix.size(), 3);
    for (std::size_t j = 0; j < plen; ++j) {
      std::size_t st = j % 3;  // same germ, pushed representation
      w.prefix.push_back(Elem(LimitElement{st, sys.push(0, st, ss.at(j))}));
    }
    w.gen = [ss](std::size_t k) -> Elem { return LimitElement{0, ss.at(k)}; };
    if (ss.declaredSup) w.declaredSup = Elem(LimitElement{0, *ss.declaredSup});
    out.push_back(std::move(w));
  }
  return out;
}

std::string LimitModel::printElem(const Elem& xe) const {
  const LimitElement& x = get(xe);
  return std::to_string(x.stage) + ":" + sys_.stage(x.stage)->printElem(x.value);
}

Elem LimitModel::parseElem(const std::string& text) const {
  auto pos = text.find(':');
  if (pos == std::string::npos)
    throw std::invalid_argument("limit element must be stage:value");
  std::size_t stage = 0;
  try {
    stage = std::stoul(text.substr(0, pos));
  } catch (const std::exception&) {
    throw std::invalid_argument("limit element: bad stage '" + text.substr(0, pos) + "'");
  }
  return germ(stage, sys_.stage(stage)->parseElem(text.substr(pos + 1)));
}

CuModel::Classification LimitModel::classify(const Elem& xe) const {
  const LimitElement& x = get(xe);
  return sys_.stage(x.stage)->classify(x.value);
}

std::optional<Elem> LimitModel::joinCandidate(const Elem& xe, const Elem& ye) const {
  auto [x, y] = align(xe, ye);
  auto j = sys_.stage(x.stage)->joinCandidate(x.value, y.value);
  if (!j) return std::nullopt;
  return germ(x.stage, std::move(*j));
}

std::shared_ptr<const LimitModel> buildLimit(CuSystem s, std::size_t horizon) {
  return std::make_shared<LimitModel>(std::move(s), horizon);
}

std::function<Elem(const LimitElement&)> universalMap(const CuSystem& s, const Cocone& c,
                                                      std::size_t stagesToCheck,
                                                      std::size_t samplesPerStage) {
  if (!c.target || !c.gamma) throw std::invalid_argument("cocone: missing target or maps");
  for (std::size_t i = 0; i < stagesToCheck; ++i) {
    ModelPtr m = s.stage(i);
    for (const auto& x : m->basis(samplesPerStage)) {
      Elem direct = c.gamma(i, x);
      Elem routed = c.gamma(i + 1, s.step(i, x));
      if (!c.target->equal(direct, routed))
        throw std::invalid_argument("cocone incompatible at stage " + std::to_string(i) + ": " +
                                    m->printElem(x) + " -> " + c.target->printElem(direct) +
                                    " vs " + c.target->printElem(routed));
    }
  }
  auto gamma = c.gamma;
  return [gamma](const LimitElement& g) -> Elem { return gamma(g.stage, g.value); };
}

namespace {

struct GermValue {
  bool inf = false;
  Rat v;
};

Rat powRat(const Rat& base, std::size_t e) {
  Rat r(1);
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

QuadExt powQ(const QuadExt& base, std::size_t e) {
  QuadExt r{Rat(1)};
  for (std::size_t i = 0; i < e; ++i) r = r * base;
  return r;
}

GermValue scalingValue(std::uint64_t k, const LimitElement& g) {
  ExtNat x(0);
  if (g.value.type() == typeid(ExtNat)) {
    x = std::any_cast<ExtNat>(g.value);
  } else {
    const auto& t = ExtNatTupleModel::get(g.value);
    if (t.size() != 1) throw std::invalid_argument("scaling oracle: expected arity-1 germs");
    x = t[0];
  }
  if (x.isInf()) return {true, Rat(0)};
  return {false, Rat(Int(x.finite())) / powRat(Rat(Int(k)), g.stage)};
}

}  // namespace

GermOrder scalingOracle(std::uint64_t k) {
  return [k](const LimitElement& a, const LimitElement& b) -> bool {
    GermValue va = scalingValue(k, a), vb = scalingValue(k, b);
    if (vb.inf) return true;
    if (va.inf) return false;
    return va.v <= vb.v;
  };
}

GermOrder goldenOracle() {
  const QuadExt phi(Rat(1) / 2, Rat(1) / 2, 5);
  return [phi](const LimitElement& a, const LimitElement& b) -> bool {
    const auto& xa = ExtNatTupleModel::get(a.value);
    const auto& xb = ExtNatTupleModel::get(b.value);
    if (xa.size() != 2 || xb.size() != 2)
      throw std::invalid_argument("golden oracle: expected arity-2 germs");
    bool ia = xa[0].isInf() || xa[1].isInf();
    bool ib = xb[0].isInf() || xb[1].isInf();
    if (ib) return true;
    if (ia) return false;
    QuadExt va = QuadExt(Rat(Int(xa[0].finite()))) * phi + QuadExt(Rat(Int(xa[1].finite())));
    QuadExt vb = QuadExt(Rat(Int(xb[0].finite()))) * phi + QuadExt(Rat(Int(xb[1].finite())));
    // compare va / phi^{ia} <= vb / phi^{ib} without division
    return va * powQ(phi, b.stage) <= vb * powQ(phi, a.stage);
  };
}

nlohmann::json ContinuityReport::toJson() const {
  nlohmann::json j;
  j["system"] = system;
  j["pairs"] = pairs;
  j["confirmedTrue"] = confirmedTrue;
  j["confirmedFalse"] = confirmedFalse;
  j["unresolvedFalse"] = unresolvedFalse;
  j["unresolvedTrue"] = unresolvedTrue;
  j["contradictions"] = contradictions;
  j["witness"] = witness;
  j["pass"] = pass();
  return j;
}

std::string ContinuityReport::summary() const {
  std::string s = system + ": " + std::to_string(pairs) + " pairs, " +
                  std::to_string(confirmedTrue) + " true confirmed, " +
                  std::to_string(confirmedFalse) + " false confirmed, " +
                  std::to_string(unresolvedFalse) + " false unresolved, " +
                  std::to_string(unresolvedTrue) + " true missed, " +
                  std::to_string(contradictions) + " contradictions: " +
                  (pass() ? "pass" : "fail");
  if (!witness.empty()) s += " witness: " + witness;
  return s;
}

ContinuityReport functorContinuityCheck(const CuSystem& s, const GermOrder& oracle,
                                        std::uint64_t pairCount, std::size_t horizon,
                                        std::uint64_t seed) {
  ContinuityReport rep;
  rep.system = s.name();
  std::vector<LimitElement> pool;
  for (std::size_t st = 0; st < 4; ++st)
    for (const auto& b : s.stage(st)->basis(8)) pool.push_back(LimitElement{st, b});
  std::mt19937_64 rng(seed);
  auto show = [&s](const LimitElement& g) {
    return std::to_string(g.stage) + ":" + s.stage(g.stage)->printElem(g.value);
  };
  for (std::uint64_t t = 0; t < pairCount; ++t) {
    const LimitElement& a = pool[rng() % pool.size()];
    const LimitElement& b = pool[rng() % pool.size()];
    ++rep.pairs;
    Tri got = limitLeq(s, a, b, horizon);
    bool truth = oracle(a, b);
    if (got == Tri::Unknown) {
      if (truth) {
        ++rep.unresolvedTrue;
        if (rep.witness.empty())
          rep.witness = show(a) + " <= " + show(b) + " holds but was never reached";
      } else {
        ++rep.unresolvedFalse;
      }
      continue;
    }
    bool claimed = got == Tri::True;
    if (claimed == truth) {
      ++(truth ? rep.confirmedTrue : rep.confirmedFalse);
    } else {
      ++rep.contradictions;
      if (rep.witness.empty())
        rep.witness = show(a) + " <= " + show(b) + ": germ order says " +
                      (claimed ? "true" : "false") + ", oracle says " + (truth ? "true" : "false");
    }
  }
  return rep;
}

}  // namespace cuntz
