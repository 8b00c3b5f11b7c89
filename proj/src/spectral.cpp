#include "cuntz/spectral.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cuntz {

SpectralElement::SpectralElement(std::vector<SpectralBlock> bs) : blocks(std::move(bs)) {
  for (auto& blk : blocks) {
    std::map<Rat, std::uint64_t, std::greater<Rat>> merged;
    std::uint64_t total = 0;
    for (auto& [val, mult] : blk.eigs) {
      if (val < 0) throw std::invalid_argument("negative eigenvalue " + ratToString(val));
      if (mult == 0) continue;
      if (val == 0) continue;
      merged[val] += mult;
      total += mult;
    }
    if (total > blk.dim)
      throw std::invalid_argument("eigenvalue multiplicities exceed block dimension");
    blk.eigs.assign(merged.begin(), merged.end());
  }
}

std::uint64_t SpectralElement::rank(std::size_t block) const {
  std::uint64_t r = 0;
  for (const auto& [val, mult] : blocks.at(block).eigs) r += mult;
  return r;
}

std::optional<Rat> SpectralElement::minPositiveEig() const {
  std::optional<Rat> best;
  for (const auto& blk : blocks)
    for (const auto& [val, mult] : blk.eigs)
      if (!best || val < *best) best = val;
  return best;
}

bool SpectralElement::isProjection() const {
  for (const auto& blk : blocks)
    for (const auto& [val, mult] : blk.eigs)
      if (val != 1) return false;
  return true;
}

bool operator==(const SpectralElement& a, const SpectralElement& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].dim != b.blocks[i].dim) return false;
    if (a.blocks[i].eigs != b.blocks[i].eigs) return false;
  }
  return true;
}

std::string SpectralElement::str() const {
  std::string s = "blocks:";
  for (const auto& blk : blocks) {
    s += " [n=" + std::to_string(blk.dim) + ":";
    if (blk.eigs.empty()) s += " 0";
    for (const auto& [val, mult] : blk.eigs)
      s += " (" + ratToString(val) + "," + std::to_string(mult) + ")";
    s += "]";
  }
  return s;
}

nlohmann::json SpectralElement::toJson() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& blk : blocks) {
    nlohmann::json eigs = nlohmann::json::array();
    for (const auto& [val, mult] : blk.eigs)
      eigs.push_back(nlohmann::json::array({ratToString(val), mult}));
    arr.push_back(nlohmann::json{{"n", blk.dim}, {"eigs", eigs}});
  }
  return nlohmann::json{{"blocks", arr}};
}

SpectralElement SpectralElement::fromJson(const nlohmann::json& j) {
  std::vector<SpectralBlock> bs;
  for (const auto& jb : j.at("blocks")) {
    SpectralBlock blk;
    blk.dim = jb.at("n").get<std::uint64_t>();
    for (const auto& je : jb.at("eigs"))
      blk.eigs.emplace_back(ratFromString(je.at(0).get<std::string>()),
                            je.at(1).get<std::uint64_t>());
    bs.push_back(std::move(blk));
  }
  return SpectralElement(std::move(bs));
}

// Text form: blocks: [n=3: (1,1)(1/2,1)] [n=2: 0]
SpectralElement SpectralElement::parse(const std::string& text) {
  std::string t = text;
  auto pos = t.find("blocks:");
  if (pos != std::string::npos) t = t.substr(pos + 7);
  std::vector<SpectralBlock> bs;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad spectral element at offset " + std::to_string(i) +
                                ": " + why);
  };
  while (true) {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    if (i >= t.size()) break;
    if (t[i] != '[') fail("expected '['");
    ++i;
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    if (t.compare(i, 2, "n=") != 0) fail("expected 'n='");
    i += 2;
    std::size_t j = i;
    while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
    if (j == i) fail("expected block dimension");
    SpectralBlock blk;
    blk.dim = std::stoull(t.substr(i, j - i));
    i = j;
    if (i >= t.size() || t[i] != ':') fail("expected ':'");
    ++i;
    while (true) {
      while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
      if (i < t.size() && t[i] == ']') {
        ++i;
        break;
      }
      if (i < t.size() && t[i] == '0') {  // explicit zero block
        ++i;
        continue;
      }
      if (i >= t.size() || t[i] != '(') fail("expected '(' or ']'");
      ++i;
      std::size_t comma = t.find(',', i);
      if (comma == std::string::npos) fail("expected ','");
      Rat val = ratFromString(t.substr(i, comma - i));
      i = comma + 1;
      std::size_t close = t.find(')', i);
      if (close == std::string::npos) fail("expected ')'");
      std::uint64_t mult = std::stoull(t.substr(i, close - i));
      blk.eigs.emplace_back(std::move(val), mult);
      i = close + 1;
    }
    bs.push_back(std::move(blk));
  }
  if (bs.empty()) throw std::invalid_argument("spectral element has no blocks");
  return SpectralElement(std::move(bs));
}

SpectralElement epsCut(const SpectralElement& a, const Rat& eps) {
  if (eps < 0) throw std::invalid_argument("eps-cut needs eps >= 0");
  std::vector<SpectralBlock> bs = a.blocks;
  for (auto& blk : bs)
    for (auto& [val, mult] : blk.eigs) val = val > eps ? Rat(val - eps) : Rat(0);
  return SpectralElement(std::move(bs));
}

bool cuntzLeq(const SpectralElement& a, const SpectralElement& b) {
  if (a.blocks.size() != b.blocks.size())
    throw std::invalid_argument("cuntzLeq: mismatched block structure (" +
                                std::to_string(a.blocks.size()) + " vs " +
                                std::to_string(b.blocks.size()) + " blocks)");
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    if (a.rank(i) > b.rank(i)) return false;
  return true;
}

std::vector<ExtNat> cuntzClass(const SpectralElement& a) {
  std::vector<ExtNat> out;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) out.push_back(ExtNat(a.rank(i)));
  return out;
}

SpectralElement directSum(const SpectralElement& a, const SpectralElement& b) {
  if (a.blocks.size() != b.blocks.size())
    throw std::invalid_argument("directSum: mismatched block structure");
  std::vector<SpectralBlock> bs;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    SpectralBlock blk;
    blk.dim = a.blocks[i].dim + b.blocks[i].dim;
    blk.eigs = a.blocks[i].eigs;
    blk.eigs.insert(blk.eigs.end(), b.blocks[i].eigs.begin(), b.blocks[i].eigs.end());
    bs.push_back(std::move(blk));
  }
  return SpectralElement(std::move(bs));
}

SpectralElement algebraUnit(const std::vector<std::uint64_t>& dims) {
  std::vector<SpectralBlock> bs;
  for (auto n : dims) bs.push_back(SpectralBlock{n, {{Rat(1), n}}});
  return SpectralElement(std::move(bs));
}

TraceSpec::TraceSpec(std::vector<Rat> w, std::vector<std::uint64_t> d)
    : weights(std::move(w)), dims(std::move(d)) {
  if (weights.size() != dims.size())
    throw std::invalid_argument("TraceSpec: weights/dims size mismatch");
  Rat total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("TraceSpec: negative weight");
    total += weights[i] * Rat(dims[i]);
  }
  if (total != 1)
    throw std::invalid_argument("TraceSpec: weights not normalized, sum w_i*n_i = " +
                                ratToString(total));
}

bool TraceSpec::faithful() const {
  return std::all_of(weights.begin(), weights.end(), [](const Rat& w) { return w > 0; });
}

std::vector<TraceSpec> TraceSpec::vertexTraces(const std::vector<std::uint64_t>& dims) {
  std::vector<TraceSpec> out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::vector<Rat> w(dims.size(), Rat(0));
    w[i] = Rat(1, dims[i]);
    out.emplace_back(std::move(w), dims);
  }
  return out;
}

Rat dTau(const TraceSpec& tau, const SpectralElement& a) {
  if (tau.dims.size() != a.blocks.size())
    throw std::invalid_argument("dTau: trace and element block counts differ");
  Rat total = 0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    total += tau.weights[i] * Rat(a.rank(i));
  return total;
}

bool isProjectionClass(const SpectralElement&) { return true; }

SpectralElement projComplement(const SpectralElement& p, const SpectralElement& a) {
  if (!p.isProjection())
    throw std::invalid_argument("projComplement: p has a non-unit eigenvalue");
  if (!cuntzLeq(p, a)) throw std::invalid_argument("projComplement: p not below a");
  std::vector<SpectralBlock> bs;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    std::uint64_t r = a.rank(i) - p.rank(i);
    SpectralBlock blk;
    blk.dim = a.blocks[i].dim;
    if (r > 0) blk.eigs = {{Rat(1), r}};
    bs.push_back(std::move(blk));
  }
  return SpectralElement(std::move(bs));
}

}  // namespace cuntz
