#pragma once
// Exact scalar layer: rationals, extended naturals, and nonnegative scalars
// living in Q or a single fixed real quadratic extension Q(sqrt(d)).

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cuntz {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

std::string ratToString(const Rat& r);
Rat ratFromString(const std::string& s);  // "p/q" or "p"; throws std::invalid_argument

// Extended natural numbers N0 u {inf}. Addition saturates at inf.
struct ExtNat {
  bool inf = false;
  std::uint64_t n = 0;

  ExtNat() = default;
  explicit ExtNat(std::uint64_t v) : inf(false), n(v) {}
  static ExtNat infinity() { ExtNat e; e.inf = true; return e; }

  bool isInf() const { return inf; }
  std::uint64_t finite() const {
    if (inf) throw std::domain_error("ExtNat: infinite value has no finite part");
    return n;
  }

  friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.inf || b.inf) return infinity();
    std::uint64_t s = a.n + b.n;
    if (s < a.n) throw std::overflow_error("ExtNat: addition overflow");
    return ExtNat(s);
  }
  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.inf == b.inf && (a.inf || a.n == b.n);
  }
  friend bool operator!=(const ExtNat& a, const ExtNat& b) { return !(a == b); }
  friend bool operator<=(const ExtNat& a, const ExtNat& b) {
    if (b.inf) return true;
    if (a.inf) return false;
    return a.n <= b.n;
  }
  friend bool operator<(const ExtNat& a, const ExtNat& b) { return a <= b && a != b; }

  ExtNat times(std::uint64_t k) const {
    if (inf) return k == 0 ? ExtNat(0) : infinity();
    if (k != 0 && n > UINT64_MAX / k) throw std::overflow_error("ExtNat: scale overflow");
    return ExtNat(n * k);
  }

  std::string str() const { return inf ? "inf" : std::to_string(n); }
  static ExtNat parse(const std::string& s);
};

// x is way below y in N0 u {inf}: x compact iff finite.
inline bool extnatWayBelow(const ExtNat& x, const ExtNat& y) {
  return !x.isInf() && x <= y;
}

// Value a + b*sqrt(d) with a,b rational and d a fixed squarefree integer >= 2.
// d == 0 marks a purely rational value (b must then be 0). Mixed radicals are
// rejected: arithmetic and comparisons are defined within one extension only.
struct QuadExt {
  Rat a;
  Rat b;
  long d = 0;

  QuadExt() = default;
  explicit QuadExt(Rat r) : a(std::move(r)), b(0), d(0) {}
  QuadExt(Rat a_, Rat b_, long d_);

  bool rational() const { return b == 0; }
  int sign() const;  // exact sign of a + b*sqrt(d)
  std::string str() const;

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
  friend bool operator==(const QuadExt& x, const QuadExt& y) { return (x - y).sign() == 0; }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) { return (y - x).sign() >= 0; }
  friend bool operator<(const QuadExt& x, const QuadExt& y) { return (y - x).sign() > 0; }

  double toDouble() const;
};

long commonRadicand(const QuadExt& x, const QuadExt& y);  // throws on mixed radicals

// Nonnegative scalar: a QuadExt value >= 0, or inf.
struct ExtNonnegScalar {
  bool inf = false;
  QuadExt v;

  ExtNonnegScalar() = default;
  explicit ExtNonnegScalar(QuadExt q);
  explicit ExtNonnegScalar(Rat r) : ExtNonnegScalar(QuadExt(std::move(r))) {}
  static ExtNonnegScalar infinity() { ExtNonnegScalar s; s.inf = true; return s; }

  bool isInf() const { return inf; }
  friend ExtNonnegScalar operator+(const ExtNonnegScalar& x, const ExtNonnegScalar& y);
  friend bool operator==(const ExtNonnegScalar& x, const ExtNonnegScalar& y);
  friend bool operator!=(const ExtNonnegScalar& x, const ExtNonnegScalar& y) { return !(x == y); }
  friend bool operator<=(const ExtNonnegScalar& x, const ExtNonnegScalar& y);
  friend bool operator<(const ExtNonnegScalar& x, const ExtNonnegScalar& y);

  std::string str() const { return inf ? "inf" : v.str(); }
};

}  // namespace cuntz
