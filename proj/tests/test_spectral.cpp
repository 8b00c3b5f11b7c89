#include "doctest.h"

#include <random>

#include "cuntz/spectral.hpp"

using namespace cuntz;

namespace {

SpectralElement randomElement(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> blocks(1, 3), dim(1, 4), mult(1, 2), num(1, 8), den(1, 8);
  std::vector<SpectralBlock> bs;
  int nb = blocks(rng);
  for (int i = 0; i < nb; ++i) {
    SpectralBlock b;
    b.dim = static_cast<std::uint64_t>(dim(rng));
    std::uint64_t room = b.dim;
    while (room > 0) {
      std::uint64_t m = std::min<std::uint64_t>(room, static_cast<std::uint64_t>(mult(rng)));
      b.eigs.emplace_back(Rat(num(rng), den(rng)), m);
      room -= m;
      if (rng() % 3 == 0) break;
    }
    bs.push_back(std::move(b));
  }
  return SpectralElement(std::move(bs));
}

}  // namespace

TEST_CASE("spectral literals parse and canonicalize") {
  auto a = SpectralElement::parse("[n=3: (1,1)(1/2,1)] [n=2: 0]");
  CHECK(a.blocks.size() == 2);
  CHECK(a.rank(0) == 2);
  CHECK(a.rank(1) == 0);
  CHECK(a.str() == "blocks: [n=3: (1,1) (1/2,1)] [n=2: 0]");
  CHECK(SpectralElement::fromJson(a.toJson()) == a);
  CHECK(*a.minPositiveEig() == Rat(1, 2));
  CHECK(!a.isProjection());
  CHECK(algebraUnit({3, 2}).isProjection());

  // Equal eigenvalues merge, zeros are elided, and the order is descending.
  auto b = SpectralElement::parse("[n=4: (1/2,1)(0,1)(1/2,1)(1,1)]");
  CHECK(b.blocks[0].eigs.size() == 2);
  CHECK(b.blocks[0].eigs[0].first == Rat(1));
  CHECK(b.blocks[0].eigs[1].second == 2);

  CHECK_THROWS_AS(SpectralElement::parse("[n=1: (1,1)(1/2,1)]"), std::invalid_argument);
}

TEST_CASE("eps-cut is the exact functional calculus on the spectrum") {
  auto a = SpectralElement::parse("[n=3: (1,1)(1/2,1)] [n=2: 0]");
  auto cut = epsCut(a, Rat(1, 4));
  CHECK(cut == SpectralElement::parse("[n=3: (3/4,1)(1/4,1)] [n=2: 0]"));
  // Cutting at an eigenvalue removes it: (t - eps)_+ has no zero eigenvalues.
  CHECK(epsCut(a, Rat(1, 2)).rank(0) == 1);
  CHECK(epsCut(a, Rat(0)) == a);
  CHECK(epsCut(a, Rat(2)).rank(0) == 0);
  CHECK_THROWS_AS(epsCut(a, Rat(-1)), std::invalid_argument);
}

TEST_CASE("eps-cuts compose additively over 1000 random elements") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(0, 6), den(1, 8);
  for (int i = 0; i < 1000; ++i) {
    auto a = randomElement(rng);
    Rat e1(num(rng), den(rng)), e2(num(rng), den(rng));
    CAPTURE(a.str());
    CAPTURE(ratToString(e1));
    CAPTURE(ratToString(e2));
    CHECK(epsCut(epsCut(a, e1), e2) == epsCut(a, e1 + e2));
  }
}

TEST_CASE("comparison is rank dominance per block") {
  auto a = SpectralElement::parse("[n=3: (1,2)] [n=2: (1/3,1)]");
  auto b = SpectralElement::parse("[n=3: (1/2,3)] [n=2: (1,1)]");
  CHECK(cuntzLeq(a, b));
  CHECK(!cuntzLeq(b, a));

  auto cls = cuntzClass(a);
  REQUIRE(cls.size() == 2);
  CHECK(cls[0] == ExtNat(2));
  CHECK(cls[1] == ExtNat(1));

  auto s = directSum(a, a);
  CHECK(cuntzClass(s)[0] == ExtNat(4));
  CHECK(cuntzClass(s)[1] == ExtNat(2));

  CHECK_THROWS_AS(cuntzLeq(a, SpectralElement::parse("[n=2: 0]")), std::invalid_argument);
}

TEST_CASE("stable finiteness: the unit never compares below a corner") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto a = randomElement(rng);
    std::vector<std::uint64_t> dims;
    for (const auto& b : a.blocks) dims.push_back(b.dim);
    auto one = algebraUnit(dims);
    auto bigger = directSum(one, a);
    CAPTURE(a.str());
    CHECK(!cuntzLeq(bigger, a));
  }
}

TEST_CASE("trace dimension functions are exact rationals") {
  auto a = SpectralElement::parse("[n=3: (1,1)(1/2,1)] [n=2: 0]");
  auto vertices = TraceSpec::vertexTraces({3, 2});
  REQUIRE(vertices.size() == 2);
  CHECK(dTau(vertices[0], a) == Rat(2, 3));
  CHECK(dTau(vertices[1], a) == Rat(0));
  CHECK(!vertices[0].faithful());

  TraceSpec mix({Rat(1, 6), Rat(1, 4)}, {3, 2});  // 3/6 + 2/4 = 1
  CHECK(mix.faithful());
  CHECK(dTau(mix, a) == Rat(1, 3));
  // d_tau is additive under direct sums.
  CHECK(dTau(mix, directSum(a, a)) == Rat(2, 3));
  // Normalization check: weights must sum against dims to 1.
  CHECK_THROWS_AS(TraceSpec({Rat(1), Rat(1)}, {3, 2}), std::invalid_argument);
  CHECK(dTau(mix, algebraUnit({3, 2})) == Rat(1));
}

TEST_CASE("every class contains a projection, with complements below") {
  auto a = SpectralElement::parse("[n=4: (2/3,2)(1/5,1)] [n=2: (1,1)]");
  CHECK(isProjectionClass(a));
  auto p = SpectralElement::parse("[n=4: (1,1)] [n=2: (1,1)]");
  REQUIRE(cuntzLeq(p, a));
  auto c = projComplement(p, a);
  CHECK(c.isProjection());
  CHECK(c.rank(0) == 2);
  CHECK(c.rank(1) == 0);
  CHECK(cuntzLeq(c, a));
}
