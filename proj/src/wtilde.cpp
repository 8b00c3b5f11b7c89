#include "cuntz/wtilde.hpp"

#include <algorithm>
#include <any>
#include <sstream>
#include <stdexcept>

namespace cuntz {

namespace {

QuadExt qRat(long long p, long long q = 1) { return QuadExt(Rat(Int(p), Int(q))); }

Rat pow2inv(std::size_t e) {
  Int den(1);
  den <<= e;
  return Rat(Int(1), den);
}

// 4^(-e); rapid chains shrink quartically so the tail gap undercuts every
// gap between distinct sampled values.
Rat pow4inv(std::size_t e) { return pow2inv(2 * e); }

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

QuadExt quadDiv(const QuadExt& x, const QuadExt& y) {
  if (y.sign() == 0) throw std::domain_error("quadDiv: division by zero");
  // 1/(a + b*sqrt(d)) = (a - b*sqrt(d)) / (a^2 - d b^2); the denominator is
  // nonzero because d is never a perfect square.
  Rat den = y.a * y.a - Rat(y.d) * y.b * y.b;
  return x * QuadExt(y.a / den, -y.b / den, y.d);
}

// ---- LAffPL ----

bool operator==(const AffLine& x, const AffLine& y) {
  if (x.vals.size() != y.vals.size()) return false;
  for (std::size_t i = 0; i < x.vals.size(); ++i)
    if (x.vals[i] != y.vals[i]) return false;
  return true;
}

std::string AffLine::str() const {
  std::string s = "<";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) s += "|";
    s += vals[i].str();
  }
  return s + ">";
}

void LAffPL::normalize() {
  if (k == 0) throw std::invalid_argument("LAffPL: simplex needs at least one vertex");
  if (lines.empty()) throw std::invalid_argument("LAffPL: needs at least one line");
  for (const auto& l : lines)
    if (l.vals.size() != k)
      throw std::invalid_argument("LAffPL: line arity does not match the simplex");
  // Drop lines vertexwise dominated by an earlier kept line (duplicates included).
  std::vector<AffLine> kept;
  for (const auto& l : lines) {
    bool dominated = false;
    for (const auto& m : kept) {
      bool below = true;
      for (std::size_t i = 0; i < k && below; ++i)
        if (!(l.vals[i] <= m.vals[i])) below = false;
      if (below) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(l);
  }
  // A later line may dominate an earlier one; sweep once more in reverse.
  std::vector<AffLine> out;
  for (std::size_t i = kept.size(); i-- > 0;) {
    bool dominated = false;
    for (const auto& m : out) {
      bool below = true;
      for (std::size_t j = 0; j < k && below; ++j)
        if (!(kept[i].vals[j] <= m.vals[j])) below = false;
      if (below) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(kept[i]);
  }
  std::reverse(out.begin(), out.end());
  lines = std::move(out);
  if (k > 2 && lines.size() > 1)
    throw std::invalid_argument("LAffPL: piecewise elements require a segment (k <= 2)");
}

LAffPL LAffPL::constant(std::size_t k, QuadExt c) {
  LAffPL f;
  f.k = k;
  f.lines.push_back(AffLine{std::vector<QuadExt>(k, c)});
  f.normalize();
  return f;
}

LAffPL LAffPL::single(AffLine line) {
  LAffPL f;
  f.k = line.vals.size();
  f.lines.push_back(std::move(line));
  f.normalize();
  return f;
}

LAffPL LAffPL::maxOf(std::size_t k, std::vector<AffLine> ls) {
  LAffPL f;
  f.k = k;
  f.lines = std::move(ls);
  f.normalize();
  return f;
}

LAffPL LAffPL::plus(const LAffPL& other) const {
  if (k != other.k) throw std::invalid_argument("LAffPL: mixed simplex arities");
  LAffPL f;
  f.k = k;
  for (const auto& a : lines)
    for (const auto& b : other.lines) {
      AffLine l;
      for (std::size_t i = 0; i < k; ++i) l.vals.push_back(a.vals[i] + b.vals[i]);
      f.lines.push_back(std::move(l));
    }
  f.normalize();
  return f;
}

LAffPL LAffPL::plusConst(const QuadExt& c) const {
  LAffPL f = *this;
  for (auto& l : f.lines)
    for (auto& v : l.vals) v = v + c;
  return f;
}

LAffPL LAffPL::scaled(const Rat& r) const {
  if (r < 0) throw std::invalid_argument("LAffPL: negative scaling");
  QuadExt q{Rat(r)};
  LAffPL f = *this;
  for (auto& l : f.lines)
    for (auto& v : l.vals) v = v * q;
  f.normalize();
  return f;
}

LAffPL LAffPL::maxWith(const LAffPL& other) const {
  if (k != other.k) throw std::invalid_argument("LAffPL: mixed simplex arities");
  LAffPL f = *this;
  f.lines.insert(f.lines.end(), other.lines.begin(), other.lines.end());
  f.normalize();
  return f;
}

QuadExt LAffPL::valueAt(std::size_t vertex) const {
  if (vertex >= k) throw std::out_of_range("LAffPL: vertex index");
  QuadExt best = lines.front().vals[vertex];
  for (const auto& l : lines)
    if (best < l.vals[vertex]) best = l.vals[vertex];
  return best;
}

namespace {

// Value of one line at segment parameter t (vertex 0 at t = 0, vertex 1 at 1).
QuadExt lineAt(const AffLine& l, const QuadExt& t) {
  return l.vals[0] + (l.vals[1] - l.vals[0]) * t;
}

QuadExt listAt(const LAffPL& f, const QuadExt& t) {
  QuadExt best = lineAt(f.lines.front(), t);
  for (const auto& l : f.lines) {
    QuadExt v = lineAt(l, t);
    if (best < v) best = v;
  }
  return best;
}

// Exact extreme-candidate parameters for a family of lines on the segment:
// the endpoints plus every interior pairwise intersection. Convex piecewise
// linear minima and affine-versus-max comparisons are decided on this set.
std::vector<QuadExt> segmentParams(const std::vector<const AffLine*>& ls) {
  std::vector<QuadExt> ts{QuadExt(Rat(0)), QuadExt(Rat(1))};
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      QuadExt d0 = ls[i]->vals[0] - ls[j]->vals[0];
      QuadExt d1 = ls[i]->vals[1] - ls[j]->vals[1];
      QuadExt den = d0 - d1;
      if (den.sign() == 0) continue;
      QuadExt t = quadDiv(d0, den);
      if (QuadExt(Rat(0)) < t && t < QuadExt(Rat(1))) {
        bool seen = false;
        for (const auto& u : ts)
          if (u == t) {
            seen = true;
            break;
          }
        if (!seen) ts.push_back(t);
      }
    }
  return ts;
}

std::vector<const AffLine*> linePtrs(const LAffPL& f) {
  std::vector<const AffLine*> ps;
  for (const auto& l : f.lines) ps.push_back(&l);
  return ps;
}

}  // namespace

QuadExt LAffPL::minValue() const {
  if (k == 1) return valueAt(0);
  if (k >= 3) {
    QuadExt best = lines.front().vals[0];
    for (std::size_t i = 1; i < k; ++i)
      if (lines.front().vals[i] < best) best = lines.front().vals[i];
    return best;
  }
  auto ts = segmentParams(linePtrs(*this));
  QuadExt best = listAt(*this, ts.front());
  for (const auto& t : ts) {
    QuadExt v = listAt(*this, t);
    if (v < best) best = v;
  }
  return best;
}

bool LAffPL::leqOn(const LAffPL& other) const {
  if (k != other.k) throw std::invalid_argument("LAffPL: mixed simplex arities");
  if (k == 1) return valueAt(0) <= other.valueAt(0);
  if (k >= 3) {
    for (std::size_t i = 0; i < k; ++i)
      if (!(lines.front().vals[i] <= other.lines.front().vals[i])) return false;
    return true;
  }
  auto ps = linePtrs(*this);
  auto qs = linePtrs(other);
  ps.insert(ps.end(), qs.begin(), qs.end());
  for (const auto& t : segmentParams(ps))
    if (!(listAt(*this, t) <= listAt(other, t))) return false;
  return true;
}

bool LAffPL::strictlyBelow(const LAffPL& other) const {
  if (k != other.k) throw std::invalid_argument("LAffPL: mixed simplex arities");
  if (k == 1) return valueAt(0) < other.valueAt(0);
  if (k >= 3) {
    for (std::size_t i = 0; i < k; ++i)
      if (!(lines.front().vals[i] < other.lines.front().vals[i])) return false;
    return true;
  }
  auto ps = linePtrs(*this);
  auto qs = linePtrs(other);
  ps.insert(ps.end(), qs.begin(), qs.end());
  for (const auto& t : segmentParams(ps))
    if (!(listAt(*this, t) < listAt(other, t))) return false;
  return true;
}

std::string LAffPL::str() const {
  if (lines.size() == 1) return lines.front().str();
  std::string s = "max(";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) s += ",";
    s += lines[i].str();
  }
  return s + ")";
}

namespace {

AffLine parseLine(const std::string& piece, std::size_t k) {
  std::string t = trimmed(piece);
  if (t.size() < 2 || t.front() != '<' || t.back() != '>')
    throw std::invalid_argument("bad line literal '" + piece + "'");
  std::string body = t.substr(1, t.size() - 2);
  AffLine l;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = body.find('|', start);
    std::string entry = body.substr(start, bar == std::string::npos ? bar : bar - start);
    l.vals.push_back(QuadExt(ratFromString(trimmed(entry))));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (l.vals.size() != k)
    throw std::invalid_argument("line literal '" + piece + "' has the wrong arity");
  return l;
}

}  // namespace

LAffPL LAffPL::parse(const std::string& text, std::size_t k) {
  std::string t = trimmed(text);
  if (t.rfind("max(", 0) == 0 && t.back() == ')') {
    std::string body = t.substr(4, t.size() - 5);
    std::vector<AffLine> ls;
    std::size_t start = 0;
    bool inAngle = false;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] == '<') inAngle = true;
      if (i < body.size() && body[i] == '>') inAngle = false;
      if (i == body.size() || (body[i] == ',' && !inAngle)) {
        ls.push_back(parseLine(body.substr(start, i - start), k));
        start = i + 1;
      }
    }
    return maxOf(k, std::move(ls));
  }
  if (!t.empty() && t.front() == '<') return single(parseLine(t, k));
  if (k == 1) return constant(1, QuadExt(ratFromString(t)));
  throw std::invalid_argument("bad function literal '" + text + "'");
}

std::vector<LAffPL> surjApprox(const LAffPL& f, std::size_t count) {
  QuadExt delta = f.minValue();
  if (delta.sign() <= 0)
    throw std::domain_error("surjApprox: target must be strictly positive");
  std::vector<LAffPL> out;
  for (std::size_t n = 1; n <= count; ++n) {
    QuadExt shift = delta * QuadExt(Rat(Int(1), Int(2) * Int(static_cast<long long>(n))));
    out.push_back(f.plusConst(QuadExt(Rat(0)) - shift));
  }
  return out;
}

// ---- recovered model ----

const WTElem& WTildeModel::get(const Elem& x) { return std::any_cast<const WTElem&>(x); }

WTildeModel::WTildeModel(ElliottData data) : data_(std::move(data)) {
  if (!data_.vPart) throw std::invalid_argument("recovery data needs a projection monoid");
  if (!data_.pairing) throw std::invalid_argument("recovery data needs a pairing");
  if (data_.traceVertices == 0)
    throw std::invalid_argument("recovery data needs at least one trace vertex");
  if (data_.name.empty()) data_.name = "wtilde(" + data_.vPart->name() + ")";
}

Elem WTildeModel::makeProj(Elem v) const {
  WTElem e;
  e.kind = WTElem::Kind::Proj;
  e.proj = std::move(v);
  return e;
}

Elem WTildeModel::makeFun(LAffPL f) const {
  if (f.k != data_.traceVertices)
    throw std::invalid_argument("function arity does not match the trace simplex");
  if (f.minValue().sign() <= 0)
    throw std::invalid_argument("function part must be strictly positive");
  WTElem e;
  e.kind = WTElem::Kind::Fun;
  e.fun = std::move(f);
  return e;
}

Elem WTildeModel::makeInf() const {
  WTElem e;
  e.kind = WTElem::Kind::Inf;
  return e;
}

LAffPL WTildeModel::image(const Elem& x) const {
  const WTElem& e = get(x);
  if (e.kind != WTElem::Kind::Proj)
    throw std::invalid_argument("image: projection part only");
  auto vals = data_.pairing(e.proj);
  if (vals.size() != data_.traceVertices)
    throw std::logic_error("pairing arity does not match the trace simplex");
  return LAffPL::single(AffLine{std::move(vals)});
}

Elem WTildeModel::zero() const { return makeProj(data_.vPart->zero()); }

Elem WTildeModel::add(const Elem& x, const Elem& y) const {
  const WTElem& a = get(x);
  const WTElem& b = get(y);
  using K = WTElem::Kind;
  if (a.kind == K::Inf || b.kind == K::Inf) return makeInf();
  if (a.kind == K::Proj && b.kind == K::Proj)
    return makeProj(data_.vPart->add(a.proj, b.proj));
  if (a.kind == K::Fun && b.kind == K::Fun) return makeFun(a.fun.plus(b.fun));
  const Elem& p = a.kind == K::Proj ? x : y;
  const LAffPL& f = a.kind == K::Fun ? a.fun : b.fun;
  return makeFun(f.plus(image(p)));
}

bool WTildeModel::leq(const Elem& x, const Elem& y) const {
  const WTElem& a = get(x);
  const WTElem& b = get(y);
  using K = WTElem::Kind;
  if (b.kind == K::Inf) return true;
  if (a.kind == K::Inf) return false;
  if (a.kind == K::Proj && b.kind == K::Proj) return data_.vPart->leq(a.proj, b.proj);
  if (a.kind == K::Fun && b.kind == K::Fun) return a.fun.leqOn(b.fun);
  if (a.kind == K::Fun) return a.fun.leqOn(image(y));
  // Projection below a function: strict pointwise dominance is required; the
  // boundary case of equality somewhere fails.
  return image(x).strictlyBelow(b.fun);
}

bool WTildeModel::wayBelow(const Elem& x, const Elem& y) const {
  const WTElem& a = get(x);
  const WTElem& b = get(y);
  using K = WTElem::Kind;
  if (b.kind == K::Inf) return a.kind != K::Inf;
  if (a.kind == K::Inf) return false;
  if (b.kind == K::Proj) return leq(x, y);  // projection targets are compact
  if (a.kind == K::Proj) return image(x).strictlyBelow(b.fun);
  return a.fun.strictlyBelow(b.fun);
}

std::vector<Elem> WTildeModel::basis(std::size_t count) const {
  std::vector<Elem> out;
  out.push_back(zero());
  out.push_back(makeInf());
  const std::size_t k = data_.traceVertices;
  out.push_back(makeFun(LAffPL::constant(k, qRat(1))));
  out.push_back(makeFun(LAffPL::constant(k, qRat(1, 2))));
  out.push_back(makeFun(LAffPL::constant(k, qRat(2))));
  if (k == 2) {
    out.push_back(makeFun(LAffPL::single(AffLine{{qRat(1), qRat(2)}})));
    out.push_back(makeFun(LAffPL::single(AffLine{{qRat(2), qRat(1)}})));
    out.push_back(makeFun(
        LAffPL::maxOf(2, {AffLine{{qRat(1, 2), qRat(3)}}, AffLine{{qRat(3), qRat(1, 2)}}})));
  }
  for (const auto& v : data_.vPart->basis(std::max<std::size_t>(4, count / 2))) {
    if (data_.vPart->equal(v, data_.vPart->zero())) continue;
    out.push_back(makeProj(v));
  }
  if (out.size() > count && count > 0) out.resize(count);
  return out;
}

std::vector<Elem> WTildeModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  const WTElem& e = get(x);
  std::vector<Elem> out;
  using K = WTElem::Kind;
  if (e.kind == K::Proj) {
    for (std::size_t j = 0; j < len; ++j) out.push_back(x);
    return out;
  }
  if (e.kind == K::Inf) {
    for (std::size_t j = 1; j <= len; ++j) {
      Int v(1);
      v <<= j;
      out.push_back(makeFun(LAffPL::constant(data_.traceVertices, QuadExt(Rat(v)))));
    }
    return out;
  }
  // Quartic approach from below keeps every sampled strict lower bound
  // outside the emitted prefix.
  QuadExt m = e.fun.minValue();
  for (std::size_t j = 1; j <= len; ++j) {
    QuadExt shift = m * QuadExt(pow4inv(j));
    out.push_back(makeFun(e.fun.plusConst(QuadExt(Rat(0)) - shift)));
  }
  return out;
}

std::vector<IncreasingSeq> WTildeModel::increasingSamples(std::mt19937_64& rng,
                                                          std::size_t count) const {
  auto out = CuModel::increasingSamples(rng, count - count / 3);
  auto pool = basis(12);
  const std::size_t k = data_.traceVertices;
  for (std::size_t i = 0; i < count / 3; ++i) {
    IncreasingSeq s;
    if (i % 2 == 0) {  // ramp of functions with supremum inf
      std::uint64_t step = 1 + rng() % 3;
      s.gen = [this, k, step](std::size_t j) {
        return makeFun(LAffPL::constant(k, QuadExt(Rat(Int(1 + step * j)))));
      };
      s.declaredSup = makeInf();
    } else {  // geometric ramp below a sampled positive function
      const Elem& x = pool[rng() % pool.size()];
      const WTElem& e = get(x);
      if (e.kind != WTElem::Kind::Fun) {
        s = IncreasingSeq::constant(x);
      } else {
        LAffPL f = e.fun;
        QuadExt m = f.minValue();
        s.gen = [this, f, m](std::size_t j) {
          QuadExt shift = m * QuadExt(pow2inv(std::min<std::size_t>(j, 40) + 2));
          return makeFun(f.plusConst(QuadExt(Rat(0)) - shift));
        };
        s.declaredSup = x;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string WTildeModel::printElem(const Elem& x) const {
  const WTElem& e = get(x);
  switch (e.kind) {
    case WTElem::Kind::Proj: return "[" + data_.vPart->printElem(e.proj) + "]";
    case WTElem::Kind::Fun: return e.fun.str();
    default: return "inf";
  }
}

Elem WTildeModel::parseElem(const std::string& text) const {
  std::string t = trimmed(text);
  if (t == "inf") return makeInf();
  if (!t.empty() && t.front() == '[' && t.back() == ']')
    return makeProj(data_.vPart->parseElem(t.substr(1, t.size() - 2)));
  return makeFun(LAffPL::parse(t, data_.traceVertices));
}

CuModel::Classification WTildeModel::classify(const Elem& x) const {
  return get(x).kind == WTElem::Kind::Proj ? Classification::ProjectionClass
                                           : Classification::PurelyPositive;
}

std::vector<Elem> WTildeModel::divisibilityCandidates(const Elem& x, std::uint64_t n) const {
  const WTElem& e = get(x);
  using K = WTElem::Kind;
  if (e.kind == K::Inf) return {x};
  if (e.kind == K::Proj) {
    std::vector<Elem> out;
    for (const auto& v : data_.vPart->divisibilityCandidates(e.proj, n))
      out.push_back(makeProj(v));
    return out;
  }
  std::vector<Elem> out;
  out.push_back(makeFun(e.fun.scaled(Rat(Int(1), Int(static_cast<long long>(n) + 1)))));
  out.push_back(makeFun(e.fun.scaled(Rat(Int(1), Int(static_cast<long long>(n))))));
  return out;
}

std::optional<Elem> WTildeModel::joinCandidate(const Elem& x, const Elem& y) const {
  const WTElem& a = get(x);
  const WTElem& b = get(y);
  using K = WTElem::Kind;
  if (a.kind == K::Inf || b.kind == K::Inf) return makeInf();
  if (a.kind == K::Proj && b.kind == K::Proj) {
    auto j = data_.vPart->joinCandidate(a.proj, b.proj);
    if (!j) return std::nullopt;
    return makeProj(*j);
  }
  if (a.kind == K::Fun && b.kind == K::Fun) return makeFun(a.fun.maxWith(b.fun));
  const LAffPL p = image(a.kind == K::Proj ? x : y);
  const LAffPL& f = a.kind == K::Fun ? a.fun : b.fun;
  // The pointwise max need not dominate the projection strictly; pad it.
  return makeFun(p.maxWith(f).plusConst(qRat(1)));
}

std::vector<CuModel::StateEval> WTildeModel::stateEvaluators() const {
  std::vector<StateEval> out;
  auto pairing = data_.pairing;
  for (std::size_t i = 0; i < data_.traceVertices; ++i) {
    out.push_back({"vertex " + std::to_string(i),
                   [pairing, i](const Elem& x) -> std::optional<ExtNonnegScalar> {
                     const WTElem& e = WTildeModel::get(x);
                     switch (e.kind) {
                       case WTElem::Kind::Inf: return ExtNonnegScalar::infinity();
                       case WTElem::Kind::Fun: return ExtNonnegScalar(e.fun.valueAt(i));
                       default: {
                         QuadExt v = pairing(e.proj).at(i);
                         if (v.sign() < 0) return std::nullopt;
                         return ExtNonnegScalar(v);
                       }
                     }
                   }});
  }
  return out;
}

std::shared_ptr<const WTildeModel> functorF(ElliottData data) {
  return std::make_shared<WTildeModel>(std::move(data));
}

namespace {

struct TrivElem {};

// One-element projection monoid, for function-only recovered models.
class TrivialVModel : public CuModel {
 public:
  std::string name() const override { return "trivial"; }
  Elem zero() const override { return TrivElem{}; }
  Elem add(const Elem&, const Elem&) const override { return TrivElem{}; }
  bool leq(const Elem&, const Elem&) const override { return true; }
  bool wayBelow(const Elem&, const Elem&) const override { return true; }
  std::vector<Elem> basis(std::size_t) const override { return {zero()}; }
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override {
    return std::vector<Elem>(len, x);
  }
  std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                               std::size_t count) const override {
    return CuModel::increasingSamples(rng, count);
  }
  std::string printElem(const Elem&) const override { return "0"; }
  Elem parseElem(const std::string& text) const override {
    if (trimmed(text) != "0") throw std::invalid_argument("bad element '" + text + "'");
    return zero();
  }
  Classification classify(const Elem&) const override {
    return Classification::ProjectionClass;
  }
  std::optional<Elem> joinCandidate(const Elem&, const Elem&) const override {
    return zero();
  }
};

}  // namespace

std::shared_ptr<const WTildeModel> laffModel() {
  ElliottData d;
  d.name = "laff";
  d.vPart = std::make_shared<TrivialVModel>();
  d.traceVertices = 2;
  d.pairing = [](const Elem&) {
    return std::vector<QuadExt>{QuadExt(Rat(0)), QuadExt(Rat(0))};
  };
  return functorF(std::move(d));
}

// ---- interval monoids over N0^k ----

bool Interval::bounded() const {
  for (const auto& c : upper)
    if (c.isInf()) return false;
  return true;
}

Interval Interval::principal(std::vector<std::uint64_t> top) {
  Interval v;
  for (auto c : top) v.upper.emplace_back(c);
  return v;
}

std::string Interval::str() const {
  std::string s = "[0, (";
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (i) s += ", ";
    s += upper[i].str();
  }
  return s + ")]";
}

const Interval& IntervalModel::get(const Elem& x) {
  return std::any_cast<const Interval&>(x);
}

IntervalModel::IntervalModel(std::size_t arity, std::string name)
    : arity_(arity), name_(std::move(name)) {
  if (arity_ == 0) throw std::invalid_argument("IntervalModel: arity must be positive");
}

Elem IntervalModel::zero() const { return Interval{std::vector<ExtNat>(arity_, ExtNat(0))}; }

Elem IntervalModel::add(const Elem& x, const Elem& y) const {
  const Interval& a = get(x);
  const Interval& b = get(y);
  Interval out;
  for (std::size_t i = 0; i < arity_; ++i) out.upper.push_back(a.upper[i] + b.upper[i]);
  return out;
}

bool IntervalModel::leq(const Elem& x, const Elem& y) const {
  const Interval& a = get(x);
  const Interval& b = get(y);
  for (std::size_t i = 0; i < arity_; ++i)
    if (!(a.upper[i] <= b.upper[i])) return false;
  return true;
}

bool IntervalModel::wayBelow(const Elem& x, const Elem& y) const {
  const Interval& a = get(x);
  const Interval& b = get(y);
  for (std::size_t i = 0; i < arity_; ++i)
    if (!extnatWayBelow(a.upper[i], b.upper[i])) return false;
  return true;
}

std::vector<Elem> IntervalModel::basis(std::size_t count) const {
  std::vector<Elem> out;
  auto push = [&](Interval v) {
    if (out.size() < count) out.push_back(std::move(v));
  };
  push(Interval{std::vector<ExtNat>(arity_, ExtNat(0))});
  for (std::size_t i = 0; i < arity_; ++i) {
    Interval e{std::vector<ExtNat>(arity_, ExtNat(0))};
    e.upper[i] = ExtNat(1);
    push(e);
    e.upper[i] = ExtNat(2);
    push(e);
  }
  push(Interval{std::vector<ExtNat>(arity_, ExtNat(1))});
  push(Interval{std::vector<ExtNat>(arity_, ExtNat(3))});
  for (std::size_t i = 0; i < arity_; ++i) {
    Interval st{std::vector<ExtNat>(arity_, ExtNat(1))};
    st.upper[i] = ExtNat::infinity();
    push(st);
  }
  push(Interval{std::vector<ExtNat>(arity_, ExtNat::infinity())});
  return out;
}

std::vector<Elem> IntervalModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  const Interval& a = get(x);
  std::vector<Elem> out;
  for (std::size_t j = 1; j <= len; ++j) {
    Interval t;
    for (const auto& c : a.upper)
      t.upper.push_back(c.isInf() ? ExtNat(std::uint64_t(1) << std::min<std::size_t>(j, 62))
                                  : c);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<IncreasingSeq> IntervalModel::increasingSamples(std::mt19937_64& rng,
                                                            std::size_t count) const {
  auto out = CuModel::increasingSamples(rng, count - count / 4);
  for (std::size_t i = 0; i < count / 4; ++i) {
    std::size_t slot = rng() % arity_;
    std::uint64_t base = rng() % 3;
    std::uint64_t rest = rng() % 2;
    IncreasingSeq s;
    std::size_t arity = arity_;
    s.gen = [slot, base, rest, arity](std::size_t j) {
      Interval v{std::vector<ExtNat>(arity, ExtNat(rest))};
      v.upper[slot] = ExtNat(base + j);
      return Elem(v);
    };
    Interval sup{std::vector<ExtNat>(arity_, ExtNat(rest))};
    sup.upper[slot] = ExtNat::infinity();
    s.declaredSup = sup;
    out.push_back(std::move(s));
  }
  return out;
}

std::string IntervalModel::printElem(const Elem& x) const { return get(x).str(); }

Elem IntervalModel::parseElem(const std::string& text) const {
  std::string t = trimmed(text);
  std::size_t open = t.find('(');
  std::size_t close = t.rfind(')');
  std::vector<std::string> parts;
  if (open != std::string::npos && close != std::string::npos && open < close) {
    std::string body = t.substr(open + 1, close - open - 1);
    std::size_t start = 0;
    while (true) {
      std::size_t comma = body.find(',', start);
      parts.push_back(
          trimmed(body.substr(start, comma == std::string::npos ? comma : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else if (arity_ == 1) {
    parts.push_back(t);
  } else {
    throw std::invalid_argument("bad interval literal '" + text + "'");
  }
  if (parts.size() != arity_)
    throw std::invalid_argument("interval literal '" + text + "' has the wrong arity");
  Interval v;
  for (const auto& p : parts) v.upper.push_back(ExtNat::parse(p));
  return v;
}

CuModel::Classification IntervalModel::classify(const Elem& x) const {
  return get(x).bounded() ? Classification::ProjectionClass
                          : Classification::PurelyPositive;
}

std::optional<Elem> IntervalModel::joinCandidate(const Elem& x, const Elem& y) const {
  const Interval& a = get(x);
  const Interval& b = get(y);
  Interval out;
  for (std::size_t i = 0; i < arity_; ++i)
    out.upper.push_back(a.upper[i] <= b.upper[i] ? b.upper[i] : a.upper[i]);
  return out;
}

std::vector<CuModel::StateEval> IntervalModel::stateEvaluators() const {
  std::vector<StateEval> out;
  for (std::size_t i = 0; i < arity_; ++i) {
    out.push_back({"coord " + std::to_string(i),
                   [i](const Elem& x) -> std::optional<ExtNonnegScalar> {
                     const ExtNat& c = IntervalModel::get(x).upper.at(i);
                     if (c.isInf()) return ExtNonnegScalar::infinity();
                     return ExtNonnegScalar(Rat(Int(c.finite())));
                   }});
  }
  return out;
}

std::shared_ptr<const IntervalModel> whkModel() {
  return std::make_shared<IntervalModel>(1, "whk");
}

std::shared_ptr<const IntervalModel> rr0IntervalModel(std::size_t arity) {
  return std::make_shared<IntervalModel>(arity, "intervals-" + std::to_string(arity));
}

// ---- Goodearl-type interval monoid ----

GoodearlInterval GoodearlInterval::closed(Rat c, Int b) {
  if (c < 0) throw std::invalid_argument("closed interval needs a nonnegative cut");
  if (c == 0 && b != 0)
    throw std::invalid_argument("top point (0, b) lies outside the cone");
  GoodearlInterval v;
  v.kind = Kind::Closed;
  v.cut = std::move(c);
  v.tag = std::move(b);
  return v;
}

GoodearlInterval GoodearlInterval::open(Rat c) {
  if (c <= 0) throw std::invalid_argument("open interval needs a positive cut");
  GoodearlInterval v;
  v.kind = Kind::Open;
  v.cut = std::move(c);
  return v;
}

GoodearlInterval GoodearlInterval::infinite() {
  GoodearlInterval v;
  v.kind = Kind::Inf;
  return v;
}

bool operator==(const GoodearlInterval& x, const GoodearlInterval& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case GoodearlInterval::Kind::Closed: return x.cut == y.cut && x.tag == y.tag;
    case GoodearlInterval::Kind::Open: return x.cut == y.cut;
    default: return true;
  }
}

std::string GoodearlInterval::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Closed: os << "[0,(" << ratToString(cut) << "," << tag << ")]"; break;
    case Kind::Open: os << "[0," << ratToString(cut) << ")"; break;
    default: os << "inf"; break;
  }
  return os.str();
}

const GoodearlInterval& GoodearlModel::get(const Elem& x) {
  return std::any_cast<const GoodearlInterval&>(x);
}

Elem GoodearlModel::zero() const { return GoodearlInterval::closed(Rat(0), Int(0)); }

Elem GoodearlModel::add(const Elem& x, const Elem& y) const {
  const GoodearlInterval& a = get(x);
  const GoodearlInterval& b = get(y);
  using K = GoodearlInterval::Kind;
  if (a.kind == K::Inf || b.kind == K::Inf) return GoodearlInterval::infinite();
  // A sum with an open summand loses the top point: every element of the sum
  // has first coordinate strictly under cut(a) + cut(b).
  if (a.kind == K::Open || b.kind == K::Open)
    return GoodearlInterval::open(a.cut + b.cut);
  return GoodearlInterval::closed(a.cut + b.cut, a.tag + b.tag);
}

bool GoodearlModel::leq(const Elem& x, const Elem& y) const {
  const GoodearlInterval& a = get(x);
  const GoodearlInterval& b = get(y);
  using K = GoodearlInterval::Kind;
  if (b.kind == K::Inf) return true;
  if (a.kind == K::Inf) return false;
  if (a.kind == K::Closed && b.kind == K::Closed)
    return a.cut < b.cut || (a.cut == b.cut && a.tag == b.tag);
  if (a.kind == K::Closed) return a.cut < b.cut;  // top point needs strict room
  return a.cut <= b.cut;
}

bool GoodearlModel::wayBelow(const Elem& x, const Elem& y) const {
  const GoodearlInterval& a = get(x);
  const GoodearlInterval& b = get(y);
  using K = GoodearlInterval::Kind;
  if (b.kind == K::Inf) return a.kind != K::Inf;
  if (a.kind == K::Inf) return false;
  // Closed targets are compact: any sequence with that supremum eventually
  // contains the top point. Open targets absorb exactly the strictly
  // smaller cuts.
  if (b.kind == K::Closed) return leq(x, y);
  return a.cut < b.cut;
}

std::vector<Elem> GoodearlModel::basis(std::size_t count) const {
  std::vector<Elem> all{
      GoodearlInterval::closed(Rat(0), Int(0)),
      GoodearlInterval::closed(Rat(1), Int(0)),
      GoodearlInterval::closed(Rat(1), Int(-1)),
      GoodearlInterval::closed(Rat(1), Int(2)),
      GoodearlInterval::closed(Rat(2), Int(1)),
      GoodearlInterval::closed(Rat(Int(1), Int(2)), Int(0)),
      GoodearlInterval::open(Rat(Int(1), Int(2))),
      GoodearlInterval::open(Rat(1)),
      GoodearlInterval::open(Rat(2)),
      GoodearlInterval::open(Rat(3)),
      GoodearlInterval::closed(Rat(3), Int(-2)),
      GoodearlInterval::infinite(),
  };
  if (all.size() > count && count > 0) all.resize(count);
  return all;
}

std::vector<Elem> GoodearlModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  const GoodearlInterval& a = get(x);
  using K = GoodearlInterval::Kind;
  std::vector<Elem> out;
  if (a.kind == K::Closed) {
    for (std::size_t j = 0; j < len; ++j) out.push_back(x);
    return out;
  }
  if (a.kind == K::Inf) {
    for (std::size_t j = 1; j <= len; ++j) {
      Int v(1);
      v <<= j;
      out.push_back(GoodearlInterval::open(Rat(v)));
    }
    return out;
  }
  for (std::size_t j = 1; j <= len; ++j)
    out.push_back(GoodearlInterval::open(a.cut - a.cut * pow4inv(j)));
  return out;
}

std::vector<IncreasingSeq> GoodearlModel::increasingSamples(std::mt19937_64& rng,
                                                            std::size_t count) const {
  auto out = CuModel::increasingSamples(rng, count - count / 3);
  for (std::size_t i = 0; i < count / 3; ++i) {
    IncreasingSeq s;
    if (i % 2 == 0) {
      Rat c(Int(1 + rng() % 3));
      s.gen = [c](std::size_t j) {
        return Elem(GoodearlInterval::open(c - c * pow2inv(std::min<std::size_t>(j, 40) + 2)));
      };
      s.declaredSup = GoodearlInterval::open(c);
    } else {
      std::uint64_t step = 1 + rng() % 2;
      s.gen = [step](std::size_t j) {
        return Elem(GoodearlInterval::open(Rat(Int(1 + step * j))));
      };
      s.declaredSup = GoodearlInterval::infinite();
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string GoodearlModel::printElem(const Elem& x) const { return get(x).str(); }

Elem GoodearlModel::parseElem(const std::string& text) const {
  std::string t = trimmed(text);
  if (t == "inf") return GoodearlInterval::infinite();
  if (t.rfind("[0,(", 0) == 0 && t.size() > 6 && t.substr(t.size() - 2) == ")]") {
    std::string body = t.substr(4, t.size() - 6);
    std::size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("bad interval literal '" + text + "'");
    Rat c = ratFromString(trimmed(body.substr(0, comma)));
    Int b(trimmed(body.substr(comma + 1)));
    return GoodearlInterval::closed(c, b);
  }
  if (t.rfind("[0,", 0) == 0 && t.back() == ')')
    return GoodearlInterval::open(ratFromString(t.substr(3, t.size() - 4)));
  throw std::invalid_argument("bad interval literal '" + text + "'");
}

CuModel::Classification GoodearlModel::classify(const Elem& x) const {
  return get(x).kind == GoodearlInterval::Kind::Closed ? Classification::ProjectionClass
                                                       : Classification::PurelyPositive;
}

std::optional<Elem> GoodearlModel::joinCandidate(const Elem& x, const Elem& y) const {
  if (leq(x, y)) return y;
  if (leq(y, x)) return x;
  // Incomparable closed intervals share a cut; any larger cut bounds both.
  return GoodearlInterval::open(get(x).cut + 1);
}

std::vector<CuModel::StateEval> GoodearlModel::stateEvaluators() const {
  return {{"cut", [](const Elem& x) -> std::optional<ExtNonnegScalar> {
             const GoodearlInterval& a = GoodearlModel::get(x);
             if (a.kind == GoodearlInterval::Kind::Inf)
               return ExtNonnegScalar::infinity();
             return ExtNonnegScalar(QuadExt(a.cut));
           }}};
}

std::shared_ptr<const GoodearlModel> goodearlModel() {
  return std::make_shared<GoodearlModel>();
}

// ---- irrational rotation model ----

QuadExt rotationValue(const Int& p, const Int& q) {
  // p + q*(sqrt(2) - 1) = (p - q) + q*sqrt(2)
  return QuadExt(Rat(p) - Rat(q), Rat(q), 2);
}

RotElem RotElem::proj(Int p_, Int q_) {
  if (rotationValue(p_, q_).sign() < 0)
    throw std::invalid_argument("projection class (" + p_.str() + ", " + q_.str() +
                                ") has negative value");
  RotElem e;
  e.kind = Kind::Proj;
  e.p = std::move(p_);
  e.q = std::move(q_);
  return e;
}

RotElem RotElem::fun(QuadExt v) {
  if (v.sign() <= 0)
    throw std::invalid_argument("function part must be strictly positive");
  RotElem e;
  e.kind = Kind::Fun;
  e.val = std::move(v);
  return e;
}

RotElem RotElem::infinite() {
  RotElem e;
  e.kind = Kind::Inf;
  return e;
}

std::string RotElem::str() const {
  switch (kind) {
    case Kind::Proj: return "p(" + p.str() + "," + q.str() + ")";
    case Kind::Fun: return "f(" + val.str() + ")";
    default: return "inf";
  }
}

const RotElem& RotationModel::get(const Elem& x) {
  return std::any_cast<const RotElem&>(x);
}

namespace {

QuadExt rotValueOf(const RotElem& e) {
  return e.kind == RotElem::Kind::Proj ? rotationValue(e.p, e.q) : e.val;
}

}  // namespace

Elem RotationModel::zero() const { return RotElem::proj(Int(0), Int(0)); }

Elem RotationModel::add(const Elem& x, const Elem& y) const {
  const RotElem& a = get(x);
  const RotElem& b = get(y);
  using K = RotElem::Kind;
  if (a.kind == K::Inf || b.kind == K::Inf) return RotElem::infinite();
  if (a.kind == K::Proj && b.kind == K::Proj) return RotElem::proj(a.p + b.p, a.q + b.q);
  return RotElem::fun(rotValueOf(a) + rotValueOf(b));
}

bool RotationModel::leq(const Elem& x, const Elem& y) const {
  const RotElem& a = get(x);
  const RotElem& b = get(y);
  using K = RotElem::Kind;
  if (b.kind == K::Inf) return true;
  if (a.kind == K::Inf) return false;
  if (a.kind == K::Proj && b.kind == K::Fun) return rotValueOf(a) < rotValueOf(b);
  return rotValueOf(a) <= rotValueOf(b);
}

bool RotationModel::wayBelow(const Elem& x, const Elem& y) const {
  const RotElem& a = get(x);
  const RotElem& b = get(y);
  using K = RotElem::Kind;
  if (b.kind == K::Inf) return a.kind != K::Inf;
  if (a.kind == K::Inf) return false;
  if (b.kind == K::Proj) return leq(x, y);
  return rotValueOf(a) < rotValueOf(b);
}

std::vector<Elem> RotationModel::basis(std::size_t count) const {
  std::vector<Elem> all{
      RotElem::proj(Int(0), Int(0)),
      RotElem::proj(Int(1), Int(0)),
      RotElem::proj(Int(0), Int(1)),
      RotElem::proj(Int(1), Int(1)),
      RotElem::proj(Int(-1), Int(3)),
      RotElem::proj(Int(2), Int(-2)),
      RotElem::fun(QuadExt(Rat(1))),
      RotElem::fun(QuadExt(Rat(Int(1), Int(2)))),
      RotElem::fun(QuadExt(Rat(2))),
      RotElem::fun(QuadExt(Rat(-1), Rat(1), 2)),
      RotElem::fun(QuadExt(Rat(0), Rat(1), 2)),
      RotElem::infinite(),
  };
  if (all.size() > count && count > 0) all.resize(count);
  return all;
}

std::vector<Elem> RotationModel::rapidSequenceFor(const Elem& x, std::size_t len) const {
  const RotElem& a = get(x);
  using K = RotElem::Kind;
  std::vector<Elem> out;
  if (a.kind == K::Proj) {
    for (std::size_t j = 0; j < len; ++j) out.push_back(x);
    return out;
  }
  if (a.kind == K::Inf) {
    for (std::size_t j = 1; j <= len; ++j) {
      Int v(1);
      v <<= j;
      out.push_back(RotElem::fun(QuadExt(Rat(v))));
    }
    return out;
  }
  for (std::size_t j = 1; j <= len; ++j) {
    QuadExt shift = a.val * QuadExt(pow4inv(j));
    out.push_back(RotElem::fun(a.val - shift));
  }
  return out;
}

std::vector<IncreasingSeq> RotationModel::increasingSamples(std::mt19937_64& rng,
                                                            std::size_t count) const {
  auto out = CuModel::increasingSamples(rng, count - count / 3);
  for (std::size_t i = 0; i < count / 3; ++i) {
    IncreasingSeq s;
    if (i % 2 == 0) {
      QuadExt v = (i % 4 == 0) ? QuadExt(Rat(Int(1 + rng() % 3)))
                               : QuadExt(Rat(0), Rat(1), 2);
      s.gen = [v](std::size_t j) {
        QuadExt shift = v * QuadExt(pow2inv(std::min<std::size_t>(j, 40) + 2));
        return Elem(RotElem::fun(v - shift));
      };
      s.declaredSup = RotElem::fun(v);
    } else {
      std::uint64_t step = 1 + rng() % 2;
      s.gen = [step](std::size_t j) {
        return Elem(RotElem::fun(QuadExt(Rat(Int(1 + step * j)))));
      };
      s.declaredSup = RotElem::infinite();
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string RotationModel::printElem(const Elem& x) const { return get(x).str(); }

Elem RotationModel::parseElem(const std::string& text) const {
  std::string t = trimmed(text);
  if (t == "inf") return RotElem::infinite();
  if (t.rfind("p(", 0) == 0 && t.back() == ')') {
    std::string body = t.substr(2, t.size() - 3);
    std::size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("bad element literal '" + text + "'");
    return RotElem::proj(Int(trimmed(body.substr(0, comma))),
                         Int(trimmed(body.substr(comma + 1))));
  }
  if (t.rfind("f(", 0) == 0 && t.back() == ')') {
    std::string body = t.substr(2, t.size() - 3);
    std::size_t semi = body.find(';');
    if (semi == std::string::npos) return RotElem::fun(QuadExt(ratFromString(trimmed(body))));
    // "a;b" denotes a + b*(sqrt(2) - 1).
    Rat a = ratFromString(trimmed(body.substr(0, semi)));
    Rat b = ratFromString(trimmed(body.substr(semi + 1)));
    return RotElem::fun(QuadExt(a - b, b, 2));
  }
  throw std::invalid_argument("bad element literal '" + text + "'");
}

CuModel::Classification RotationModel::classify(const Elem& x) const {
  return get(x).kind == RotElem::Kind::Proj ? Classification::ProjectionClass
                                            : Classification::PurelyPositive;
}

std::optional<Elem> RotationModel::joinCandidate(const Elem& x, const Elem& y) const {
  if (leq(x, y)) return y;
  if (leq(y, x)) return x;
  return std::nullopt;
}

std::vector<CuModel::StateEval> RotationModel::stateEvaluators() const {
  return {{"trace", [](const Elem& x) -> std::optional<ExtNonnegScalar> {
             const RotElem& e = RotationModel::get(x);
             if (e.kind == RotElem::Kind::Inf) return ExtNonnegScalar::infinity();
             return ExtNonnegScalar(rotValueOf(e));
           }}};
}

std::shared_ptr<const RotationModel> rotationModel() {
  return std::make_shared<RotationModel>();
}

// ---- recovery data for the two worked models ----

namespace {

struct GVElem {
  Rat c;
  Int b;
};

// Projection monoid of the Goodearl-type model: the cone itself, with the
// strict-first-coordinate order. Every element is a projection class.
class GoodearlVModel : public CuModel {
 public:
  static const GVElem& get(const Elem& x) { return std::any_cast<const GVElem&>(x); }

  std::string name() const override { return "goodearl-v"; }
  Elem zero() const override { return GVElem{Rat(0), Int(0)}; }
  Elem add(const Elem& x, const Elem& y) const override {
    return GVElem{get(x).c + get(y).c, get(x).b + get(y).b};
  }
  bool leq(const Elem& x, const Elem& y) const override {
    const GVElem& a = get(x);
    const GVElem& b = get(y);
    return a.c < b.c || (a.c == b.c && a.b == b.b);
  }
  bool wayBelow(const Elem& x, const Elem& y) const override { return leq(x, y); }
  std::vector<Elem> basis(std::size_t count) const override {
    std::vector<Elem> all{GVElem{Rat(0), Int(0)},  GVElem{Rat(1), Int(0)},
                          GVElem{Rat(1), Int(-1)}, GVElem{Rat(1), Int(2)},
                          GVElem{Rat(2), Int(1)},  GVElem{Rat(Int(1), Int(2)), Int(0)},
                          GVElem{Rat(3), Int(-2)}};
    if (all.size() > count && count > 0) all.resize(count);
    return all;
  }
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override {
    return std::vector<Elem>(len, x);
  }
  std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                               std::size_t count) const override {
    return CuModel::increasingSamples(rng, count);
  }
  std::string printElem(const Elem& x) const override {
    return "(" + ratToString(get(x).c) + ", " + get(x).b.str() + ")";
  }
  Elem parseElem(const std::string& text) const override {
    std::string t = trimmed(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
      throw std::invalid_argument("bad element literal '" + text + "'");
    std::string body = t.substr(1, t.size() - 2);
    std::size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("bad element literal '" + text + "'");
    return GVElem{ratFromString(trimmed(body.substr(0, comma))),
                  Int(trimmed(body.substr(comma + 1)))};
  }
  Classification classify(const Elem&) const override {
    return Classification::ProjectionClass;
  }
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override {
    if (leq(x, y)) return y;
    if (leq(y, x)) return x;
    return GVElem{get(x).c + 1, Int(0)};
  }
  std::vector<StateEval> stateEvaluators() const override {
    return {{"cut", [](const Elem& x) -> std::optional<ExtNonnegScalar> {
               return ExtNonnegScalar(QuadExt(get(x).c));
             }}};
  }
};

struct RVElem {
  Int p;
  Int q;
};

// Projection monoid of the rotation model: integer pairs ordered by their
// exact value p + q*(sqrt(2) - 1).
class RotationVModel : public CuModel {
 public:
  static const RVElem& get(const Elem& x) { return std::any_cast<const RVElem&>(x); }

  std::string name() const override { return "rotation-v"; }
  Elem zero() const override { return RVElem{Int(0), Int(0)}; }
  Elem add(const Elem& x, const Elem& y) const override {
    return RVElem{get(x).p + get(y).p, get(x).q + get(y).q};
  }
  bool leq(const Elem& x, const Elem& y) const override {
    return rotationValue(get(x).p, get(x).q) <= rotationValue(get(y).p, get(y).q);
  }
  bool wayBelow(const Elem& x, const Elem& y) const override { return leq(x, y); }
  std::vector<Elem> basis(std::size_t count) const override {
    std::vector<Elem> all{RVElem{Int(0), Int(0)}, RVElem{Int(1), Int(0)},
                          RVElem{Int(0), Int(1)}, RVElem{Int(1), Int(1)},
                          RVElem{Int(-1), Int(3)}, RVElem{Int(2), Int(-2)}};
    if (all.size() > count && count > 0) all.resize(count);
    return all;
  }
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override {
    return std::vector<Elem>(len, x);
  }
  std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                               std::size_t count) const override {
    return CuModel::increasingSamples(rng, count);
  }
  std::string printElem(const Elem& x) const override {
    return "(" + get(x).p.str() + ", " + get(x).q.str() + ")";
  }
  Elem parseElem(const std::string& text) const override {
    std::string t = trimmed(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
      throw std::invalid_argument("bad element literal '" + text + "'");
    std::string body = t.substr(1, t.size() - 2);
    std::size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("bad element literal '" + text + "'");
    return RVElem{Int(trimmed(body.substr(0, comma))), Int(trimmed(body.substr(comma + 1)))};
  }
  Classification classify(const Elem&) const override {
    return Classification::ProjectionClass;
  }
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override {
    return leq(x, y) ? y : x;
  }
  std::vector<StateEval> stateEvaluators() const override {
    return {{"trace", [](const Elem& x) -> std::optional<ExtNonnegScalar> {
               return ExtNonnegScalar(rotationValue(get(x).p, get(x).q));
             }}};
  }
};

}  // namespace

ElliottData goodearlElliott() {
  ElliottData d;
  d.name = "wtilde(goodearl)";
  d.vPart = std::make_shared<GoodearlVModel>();
  d.traceVertices = 1;
  d.pairing = [](const Elem& v) {
    return std::vector<QuadExt>{QuadExt(GoodearlVModel::get(v).c)};
  };
  return d;
}

ElliottData rotationElliott() {
  ElliottData d;
  d.name = "wtilde(rotation)";
  d.vPart = std::make_shared<RotationVModel>();
  d.traceVertices = 1;
  d.pairing = [](const Elem& v) {
    return std::vector<QuadExt>{rotationValue(RotationVModel::get(v).p,
                                              RotationVModel::get(v).q)};
  };
  return d;
}

// ---- embedding check ----

nlohmann::json EmbeddingReport::toJson() const {
  return nlohmann::json{{"source", source},
                        {"target", target},
                        {"pairs", pairs},
                        {"additiveChecks", additiveChecks},
                        {"orderChecks", orderChecks},
                        {"failures", failures},
                        {"witness", witness},
                        {"pass", pass()}};
}

std::string EmbeddingReport::summary() const {
  std::string s = "embed " + source + " -> " + target + ": " + std::to_string(pairs) +
                  " pairs, " + std::to_string(additiveChecks) + " additive, " +
                  std::to_string(orderChecks) + " order, " + std::to_string(failures) +
                  " failures: " + (pass() ? "pass" : "fail");
  if (!pass()) s += " (" + witness + ")";
  return s;
}

EmbeddingReport embeddingCheck(const CuModel& src, const CuModel& dst,
                               const std::function<Elem(const Elem&)>& map,
                               std::uint64_t pairs, std::uint64_t seed) {
  EmbeddingReport r;
  r.source = src.name();
  r.target = dst.name();
  r.pairs = pairs;
  auto pool = src.basis(16);
  if (pool.empty()) throw std::invalid_argument("embedding check needs a nonempty basis");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  auto record = [&r](bool ok, const std::string& w) {
    if (!ok) {
      ++r.failures;
      if (r.witness.empty()) r.witness = w;
    }
  };
  ++r.additiveChecks;
  record(dst.equal(map(src.zero()), dst.zero()), "zero is not preserved");
  for (std::uint64_t i = 0; i < pairs; ++i) {
    Elem x = pool[pick(rng)];
    Elem y = pool[pick(rng)];
    if (i % 3 == 2) x = src.add(x, pool[pick(rng)]);
    Elem mx = map(x);
    Elem my = map(y);
    std::string at = " at x = " + src.printElem(x) + ", y = " + src.printElem(y);
    ++r.additiveChecks;
    record(dst.equal(map(src.add(x, y)), dst.add(mx, my)), "additivity fails" + at);
    ++r.orderChecks;
    record(src.leq(x, y) == dst.leq(mx, my), "order mismatch" + at);
    ++r.orderChecks;
    record(src.wayBelow(x, y) == dst.wayBelow(mx, my), "way-below mismatch" + at);
  }
  return r;
}

std::function<Elem(const Elem&)> goodearlToRecovered(const WTildeModel& target) {
  return [t = &target](const Elem& x) -> Elem {
    const GoodearlInterval& g = GoodearlModel::get(x);
    switch (g.kind) {
      case GoodearlInterval::Kind::Closed: return t->makeProj(GVElem{g.cut, g.tag});
      case GoodearlInterval::Kind::Open:
        return t->makeFun(LAffPL::constant(t->vertices(), QuadExt(g.cut)));
      default: return t->makeInf();
    }
  };
}

std::function<Elem(const Elem&)> rotationToRecovered(const WTildeModel& target) {
  return [t = &target](const Elem& x) -> Elem {
    const RotElem& e = RotationModel::get(x);
    switch (e.kind) {
      case RotElem::Kind::Proj: return t->makeProj(RVElem{e.p, e.q});
      case RotElem::Kind::Fun:
        return t->makeFun(LAffPL::constant(t->vertices(), e.val));
      default: return t->makeInf();
    }
  };
}

}  // namespace cuntz
