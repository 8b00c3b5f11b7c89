#include "cuntz/model.hpp"

#include <stdexcept>

namespace cuntz {

Elem IncreasingSeq::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (gen) return gen(i);
  if (prefix.empty()) throw std::invalid_argument("IncreasingSeq: empty sequence");
  return prefix.back();
}

std::vector<std::size_t> IncreasingSeq::probeIndices(std::size_t horizon) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < prefix.size(); ++i) idx.push_back(i);
  if (gen) {
    std::size_t base = prefix.size();
    for (std::size_t j : {std::size_t{0}, std::size_t{1}, std::size_t{2}, std::size_t{4}, std::size_t{8}}) {
      if (base + j <= horizon) idx.push_back(base + j);
    }
    if (horizon > base) idx.push_back(horizon);
  }
  return idx;
}

IncreasingSeq IncreasingSeq::constant(Elem x) {
  IncreasingSeq s;
  s.prefix.push_back(std::move(x));
  return s;
}

IncreasingSeq IncreasingSeq::fromVector(std::vector<Elem> xs) {
  if (xs.empty()) throw std::invalid_argument("IncreasingSeq: empty sequence");
  IncreasingSeq s;
  s.prefix = std::move(xs);
  return s;
}

std::optional<Elem> CuModel::supOfIncreasing(const IncreasingSeq& s) const {
  if (s.declaredSup) return *s.declaredSup;
  if (s.eventuallyConstant()) return s.prefix.back();
  return std::nullopt;
}

std::vector<IncreasingSeq> CuModel::increasingSamples(std::mt19937_64& rng,
                                                      std::size_t count) const {
  auto pool = basis(16);
  if (pool.empty()) throw std::invalid_argument("model '" + name() + "' has an empty basis");
  std::vector<IncreasingSeq> out;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t i = 0; i < count; ++i) {
    IncreasingSeq s;
    Elem cur = pool[pick(rng)];
    s.prefix.push_back(cur);
    std::size_t steps = 1 + rng() % 4;
    for (std::size_t k = 0; k < steps; ++k) {
      cur = add(cur, pool[pick(rng)]);
      s.prefix.push_back(cur);
    }
    out.push_back(std::move(s));
  }
  return out;
}

Elem CuModel::parseElem(const std::string&) const {
  throw std::invalid_argument("model '" + name() + "' does not support element parsing");
}

Elem CuModel::scale(std::uint64_t k, const Elem& x) const {
  Elem acc = zero();
  for (std::uint64_t i = 0; i < k; ++i) acc = add(acc, x);
  return acc;
}

std::string triToString(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    default: return "unknown";
  }
}

}  // namespace cuntz
