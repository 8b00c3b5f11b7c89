#include "cuntz/axioms.hpp"

#include <algorithm>
#include <stdexcept>

namespace cuntz {
namespace {

struct Sampler {
  const CuModel& m;
  std::mt19937_64 rng;
  std::vector<Elem> pool;

  Sampler(const CuModel& model, std::uint64_t seed, std::uint64_t budget) : m(model), rng(seed) {
    std::size_t baseCount = std::min<std::uint64_t>(24, std::max<std::uint64_t>(4, budget / 8));
    pool = m.basis(baseCount);
    if (pool.empty())
      throw std::invalid_argument("model '" + m.name() + "' has an empty basis");
    // A few off-basis elements (sums) so checks see non-generators too.
    std::size_t extras = std::min<std::size_t>(12, pool.size());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < extras; ++i)
      pool.push_back(m.add(pool[pick(rng)], pool[pick(rng)]));
  }

  const Elem& any() {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return pool[pick(rng)];
  }
};

struct EntryBuilder {
  CheckEntry e;
  explicit EntryBuilder(std::string axiom) { e.axiom = std::move(axiom); }
  void ok() { ++e.checks; }
  void skip() { ++e.skipped; }
  void fail(const std::string& witness) {
    ++e.checks;
    if (e.verdict != "fail") {
      e.verdict = "fail";
      e.witness = witness;
    }
  }
  CheckEntry finish() {
    if (e.verdict.empty()) e.verdict = e.checks ? "pass" : "inconclusive";
    return e;
  }
};

std::string pr(const CuModel& m, const Elem& x) { return m.printElem(x); }

}  // namespace

bool AxiomReport::pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const CheckEntry& e) { return e.verdict == "pass"; });
}

const CheckEntry& AxiomReport::entry(const std::string& axiom) const {
  for (const auto& e : entries)
    if (e.axiom == axiom) return e;
  throw std::out_of_range("no axiom entry " + axiom);
}

static nlohmann::json entriesToJson(const std::vector<CheckEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j{{"axiom", e.axiom}, {"verdict", e.verdict}, {"witness", e.witness}};
    j["checks"] = e.checks;
    j["skipped"] = e.skipped;
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::json AxiomReport::toJson() const {
  return nlohmann::json{{"model", model},
                        {"budget", budget},
                        {"seed", seed},
                        {"entries", entriesToJson(entries)},
                        {"pass", pass()}};
}

std::string AxiomReport::summary() const {
  std::string s = model + ":";
  for (const auto& e : entries) {
    s += " " + e.axiom + "=" + e.verdict;
    if (e.verdict == "fail") s += "(" + e.witness + ")";
  }
  return s;
}

bool MorphismReport::pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const CheckEntry& e) { return e.verdict == "pass"; });
}

const CheckEntry& MorphismReport::entry(const std::string& axiom) const {
  for (const auto& e : entries)
    if (e.axiom == axiom) return e;
  throw std::out_of_range("no morphism entry " + axiom);
}

nlohmann::json MorphismReport::toJson() const {
  return nlohmann::json{{"morphism", morphism},
                        {"budget", budget},
                        {"seed", seed},
                        {"entries", entriesToJson(entries)},
                        {"pass", pass()}};
}

std::string MorphismReport::summary() const {
  std::string s = morphism + ":";
  for (const auto& e : entries) {
    s += " " + e.axiom + "=" + e.verdict;
    if (e.verdict == "fail") s += "(" + e.witness + ")";
  }
  return s;
}

Elem CuMorphism::apply(const Elem& x) const {
  auto y = map(x);
  if (!y)
    throw std::invalid_argument("morphism '" + name + "' undefined at " + dom->printElem(x));
  return *y;
}

AxiomReport checkCuAxioms(const CuModel& m, std::uint64_t budget, std::uint64_t seed) {
  AxiomReport rep;
  rep.model = m.name();
  rep.budget = budget;
  rep.seed = seed;

  Sampler s(m, seed, budget);
  const Elem z = m.zero();

  {  // O1: zero is a neutral element.
    EntryBuilder b("O1");
    for (std::uint64_t i = 0; i < budget; ++i) {
      const Elem& x = s.any();
      if (m.equal(m.add(z, x), x) && m.equal(m.add(x, z), x))
        b.ok();
      else
        b.fail("0 + " + pr(m, x) + " != " + pr(m, x));
    }
    rep.entries.push_back(b.finish());
  }

  {  // O2: addition is order compatible.
    EntryBuilder b("O2");
    std::uint64_t attempts = 0;
    while (b.e.checks < budget && attempts < 4 * budget) {
      ++attempts;
      Elem x1 = s.any(), x2 = s.any();
      Elem y1 = m.add(x1, s.any());
      Elem y2 = m.add(x2, s.any());
      if (attempts % 3 == 0) {
        // Mix in plain pool pairs, not just x <= x + r ones.
        Elem u = s.any(), v = s.any();
        if (m.leq(u, v)) {
          x1 = std::move(u);
          y1 = std::move(v);
        }
      }
      if (!m.leq(x1, y1) || !m.leq(x2, y2)) continue;
      if (m.leq(m.add(x1, x2), m.add(y1, y2)))
        b.ok();
      else
        b.fail(pr(m, x1) + "<=" + pr(m, y1) + ", " + pr(m, x2) + "<=" + pr(m, y2) +
               " but sums not ordered");
    }
    rep.entries.push_back(b.finish());
  }

  {  // O3: sampled increasing sequences have suprema.
    EntryBuilder b("O3");
    auto rng = s.rng;
    auto seqs = m.increasingSamples(rng, std::max<std::uint64_t>(4, budget / 8));
    for (const auto& seq : seqs) {
      auto idx = seq.probeIndices(24);
      bool monotone = true;
      for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        if (!m.leq(seq.at(idx[k]), seq.at(idx[k + 1]))) {
          b.fail("sequence not increasing at stored index " + std::to_string(idx[k]));
          monotone = false;
          break;
        }
      }
      if (!monotone) continue;
      auto sup = m.supOfIncreasing(seq);
      if (!sup) {
        b.skip();
        continue;
      }
      bool dominates = true;
      for (std::size_t k : idx) {
        if (!m.leq(seq.at(k), *sup)) {
          b.fail("sup " + pr(m, *sup) + " does not dominate term " + pr(m, seq.at(k)));
          dominates = false;
          break;
        }
      }
      if (!dominates) continue;
      b.ok();
      if (seq.eventuallyConstant()) {
        // Least-ness is sound to test here: dominating the last term dominates the tail.
        const Elem& last = seq.prefix.back();
        for (std::size_t t = 0; t < 4; ++t) {
          const Elem& u = s.any();
          if (m.leq(last, u) && !m.leq(*sup, u))
            b.fail("upper bound " + pr(m, u) + " below claimed sup " + pr(m, *sup));
          else
            b.ok();
        }
      }
    }
    rep.entries.push_back(b.finish());
  }

  {  // O4: way-below data below each sample: rapid chain with supremum x,
     //     and upward directedness of the sampled part of x's way-below set.
    EntryBuilder b("O4");
    std::uint64_t rounds = std::max<std::uint64_t>(4, budget / 16);
    for (std::uint64_t i = 0; i < rounds; ++i) {
      const Elem& x = s.any();
      auto chain = m.rapidSequenceFor(x, 6);
      if (chain.empty()) {
        b.fail("no rapid sequence for " + pr(m, x));
        continue;
      }
      bool good = true;
      for (std::size_t k = 0; k + 1 < chain.size() && good; ++k) {
        if (!m.wayBelow(chain[k], chain[k + 1])) {
          b.fail("chain for " + pr(m, x) + " not rapidly increasing at " + std::to_string(k));
          good = false;
        }
      }
      for (std::size_t k = 0; k < chain.size() && good; ++k) {
        if (!m.wayBelow(chain[k], x)) {
          b.fail("chain term " + pr(m, chain[k]) + " not way below " + pr(m, x));
          good = false;
        }
      }
      if (!good) continue;
      b.ok();
      // sup of the chain is x: no sampled strict lower bound may dominate it.
      for (std::size_t t = 0; t < 4; ++t) {
        const Elem& u = s.any();
        if (m.leq(u, x) && !m.leq(x, u)) {
          bool dominatesAll = true;
          for (const auto& c : chain)
            if (!m.leq(c, u)) {
              dominatesAll = false;
              break;
            }
          if (dominatesAll)
            b.fail("strictly smaller " + pr(m, u) + " dominates the whole chain for " +
                   pr(m, x));
          else
            b.ok();
        } else {
          b.skip();
        }
      }
      // Upward directedness of sampled way-below elements.
      std::vector<Elem> below = chain;
      for (std::size_t t = 0; t < 6; ++t) {
        const Elem& u = s.any();
        if (m.wayBelow(u, x)) below.push_back(u);
      }
      auto deeper = m.rapidSequenceFor(x, 10);
      std::vector<Elem> candidates = below;
      candidates.insert(candidates.end(), deeper.begin(), deeper.end());
      for (std::size_t t = 0; t + 1 < below.size() && t < 4; ++t) {
        const Elem& u = below[t];
        const Elem& v = below[below.size() - 1 - t];
        bool found = false;
        if (auto j = m.joinCandidate(u, v))
          if (m.wayBelow(*j, x) && m.leq(u, *j) && m.leq(v, *j)) found = true;
        for (const auto& w : candidates) {
          if (found) break;
          if (m.wayBelow(w, x) && m.leq(u, w) && m.leq(v, w)) {
            found = true;
            break;
          }
        }
        if (found)
          b.ok();
        else
          b.fail("no sampled upper bound way below " + pr(m, x) + " for " + pr(m, u) +
                 " and " + pr(m, v));
      }
    }
    rep.entries.push_back(b.finish());
  }

  {  // O5: suprema and way-below are additive.
    EntryBuilder b("O5");
    auto rng = s.rng;
    rng.discard(7);
    auto seqs = m.increasingSamples(rng, std::max<std::uint64_t>(4, budget / 8));
    for (std::size_t i = 0; i + 1 < seqs.size(); i += 2) {
      const auto& s1 = seqs[i];
      const auto& s2 = seqs[i + 1];
      auto u1 = m.supOfIncreasing(s1);
      auto u2 = m.supOfIncreasing(s2);
      if (!u1 || !u2) {
        b.skip();
        continue;
      }
      IncreasingSeq sum;
      std::size_t n = std::max(s1.prefix.size(), s2.prefix.size());
      for (std::size_t k = 0; k < n; ++k) sum.prefix.push_back(m.add(s1.at(k), s2.at(k)));
      if (s1.gen || s2.gen)
        sum.gen = [&m, s1, s2](std::size_t k) { return m.add(s1.at(k), s2.at(k)); };
      auto us = m.supOfIncreasing(sum);
      if (!us) {
        b.skip();
        continue;
      }
      if (m.equal(*us, m.add(*u1, *u2)))
        b.ok();
      else
        b.fail("sup(s1+s2) = " + pr(m, *us) + " but sup(s1)+sup(s2) = " +
               pr(m, m.add(*u1, *u2)));
    }
    // Way-below additivity on sampled pairs drawn from rapid chains.
    std::uint64_t rounds = std::max<std::uint64_t>(4, budget / 16);
    for (std::uint64_t i = 0; i < rounds; ++i) {
      const Elem& y1 = s.any();
      const Elem& y2 = s.any();
      auto c1 = m.rapidSequenceFor(y1, 3);
      auto c2 = m.rapidSequenceFor(y2, 3);
      if (c1.empty() || c2.empty()) {
        b.skip();
        continue;
      }
      const Elem& x1 = c1.front();
      const Elem& x2 = c2.front();
      if (m.wayBelow(m.add(x1, x2), m.add(y1, y2)))
        b.ok();
      else
        b.fail(pr(m, x1) + "<<" + pr(m, y1) + ", " + pr(m, x2) + "<<" + pr(m, y2) +
               " but sums not way below");
    }
    rep.entries.push_back(b.finish());
  }

  {  // O6: zero is the least element.
    EntryBuilder b("O6");
    for (std::uint64_t i = 0; i < budget; ++i) {
      const Elem& x = s.any();
      if (m.leq(z, x))
        b.ok();
      else
        b.fail("0 not below " + pr(m, x));
    }
    rep.entries.push_back(b.finish());
  }

  return rep;
}

AxiomReport checkOrderTheory(const CuModel& m, std::uint64_t budget, std::uint64_t seed) {
  AxiomReport rep;
  rep.model = m.name();
  rep.budget = budget;
  rep.seed = seed;
  Sampler s(m, seed + 1, budget);

  {  // <= is reflexive and transitive on samples.
    EntryBuilder b("preorder");
    for (std::uint64_t i = 0; i < budget; ++i) {
      const Elem& x = s.any();
      if (!m.leq(x, x)) {
        b.fail("not reflexive at " + pr(m, x));
        continue;
      }
      const Elem y = m.add(x, s.any());
      const Elem zz = m.add(y, s.any());
      if (m.leq(x, y) && m.leq(y, zz) && !m.leq(x, zz))
        b.fail("transitivity fails through " + pr(m, y));
      else
        b.ok();
    }
    rep.entries.push_back(b.finish());
  }

  {  // x << y implies x <= y.
    EntryBuilder b("wb-implies-leq");
    std::uint64_t attempts = 0;
    while (b.e.checks < budget && attempts < 4 * budget) {
      ++attempts;
      const Elem& x = s.any();
      const Elem& y = s.any();
      if (!m.wayBelow(x, y)) continue;
      if (m.leq(x, y))
        b.ok();
      else
        b.fail(pr(m, x) + " << " + pr(m, y) + " but not <=");
    }
    rep.entries.push_back(b.finish());
  }

  {  // Mixed transitivity: x<<y<=z => x<<z, and x<=y<<z => x<<z.
    EntryBuilder b("wb-mixed-trans");
    std::uint64_t attempts = 0;
    while (b.e.checks < budget && attempts < 6 * budget) {
      ++attempts;
      const Elem& x = s.any();
      const Elem& y = s.any();
      const Elem zc = m.add(y, s.any());
      if (m.wayBelow(x, y) && m.leq(y, zc)) {
        if (m.wayBelow(x, zc))
          b.ok();
        else {
          b.fail(pr(m, x) + "<<" + pr(m, y) + "<=" + pr(m, zc) + " but not x<<z");
          continue;
        }
      }
      if (m.leq(x, y) && m.wayBelow(y, zc)) {
        if (m.wayBelow(x, zc))
          b.ok();
        else
          b.fail(pr(m, x) + "<=" + pr(m, y) + "<<" + pr(m, zc) + " but not x<<z");
      }
    }
    rep.entries.push_back(b.finish());
  }

  return rep;
}

MorphismReport checkCuMorphism(const CuMorphism& f, std::uint64_t budget, std::uint64_t seed) {
  if (!f.dom || !f.cod) throw std::invalid_argument("morphism needs domain and codomain");
  MorphismReport rep;
  rep.morphism = f.name;
  rep.budget = budget;
  rep.seed = seed;

  const CuModel& D = *f.dom;
  const CuModel& C = *f.cod;
  Sampler s(D, seed, budget);

  {  // M1: zero maps to zero.
    EntryBuilder b("M1");
    if (C.equal(f.apply(D.zero()), C.zero()))
      b.ok();
    else
      b.fail("f(0) = " + C.printElem(f.apply(D.zero())));
    rep.entries.push_back(b.finish());
  }

  {  // Semigroup map: f(x+y) = f(x) + f(y).
    EntryBuilder b("additive");
    for (std::uint64_t i = 0; i < budget; ++i) {
      const Elem& x = s.any();
      const Elem& y = s.any();
      Elem lhs = f.apply(D.add(x, y));
      Elem rhs = C.add(f.apply(x), f.apply(y));
      if (C.equal(lhs, rhs))
        b.ok();
      else
        b.fail("f(" + D.printElem(x) + "+" + D.printElem(y) + ") = " + C.printElem(lhs) +
               " != " + C.printElem(rhs));
    }
    rep.entries.push_back(b.finish());
  }

  {  // M2: order preserved.
    EntryBuilder b("M2");
    std::uint64_t attempts = 0;
    while (b.e.checks < budget && attempts < 4 * budget) {
      ++attempts;
      const Elem& x = s.any();
      Elem y = D.add(x, s.any());
      if (!D.leq(x, y)) continue;
      if (C.leq(f.apply(x), f.apply(y)))
        b.ok();
      else
        b.fail(D.printElem(x) + " <= " + D.printElem(y) + " but images not ordered");
    }
    rep.entries.push_back(b.finish());
  }

  {  // M3: suprema preserved on decidable sampled sequences.
    EntryBuilder b("M3");
    auto rng = s.rng;
    auto seqs = D.increasingSamples(rng, std::max<std::uint64_t>(4, budget / 8));
    for (const auto& seq : seqs) {
      auto supD = D.supOfIncreasing(seq);
      if (!supD) {
        b.skip();
        continue;
      }
      IncreasingSeq image;
      for (const auto& p : seq.prefix) image.prefix.push_back(f.apply(p));
      if (seq.gen) image.gen = [&f, seq](std::size_t k) { return f.apply(seq.at(k)); };
      auto supC = C.supOfIncreasing(image);
      if (!supC) {
        b.skip();
        continue;
      }
      if (C.equal(*supC, f.apply(*supD)))
        b.ok();
      else
        b.fail("f(sup) = " + C.printElem(f.apply(*supD)) + " but sup f = " +
               C.printElem(*supC));
    }
    rep.entries.push_back(b.finish());
  }

  {  // M4: way-below preserved on sampled pairs.
    EntryBuilder b("M4");
    std::uint64_t rounds = std::max<std::uint64_t>(4, budget / 8);
    for (std::uint64_t i = 0; i < rounds; ++i) {
      const Elem& y = s.any();
      auto chain = D.rapidSequenceFor(y, 3);
      if (chain.empty()) {
        b.skip();
        continue;
      }
      const Elem& x = chain.front();
      if (!D.wayBelow(x, y)) {
        b.skip();
        continue;
      }
      if (C.wayBelow(f.apply(x), f.apply(y)))
        b.ok();
      else
        b.fail(D.printElem(x) + " << " + D.printElem(y) + " but images not way below");
    }
    rep.entries.push_back(b.finish());
  }

  return rep;
}

}  // namespace cuntz
