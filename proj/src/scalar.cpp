#include "cuntz/rational.hpp"

#include <cmath>

namespace cuntz {

std::string ratToString(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Rat ratFromString(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("bad rational literal '" + s + "': " + e.what());
  }
}

ExtNat ExtNat::parse(const std::string& s) {
  if (s == "inf" || s == "oo") return infinity();
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return ExtNat(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad ExtNat literal '" + s + "'");
  }
}

QuadExt::QuadExt(Rat a_, Rat b_, long d_) : a(std::move(a_)), b(std::move(b_)), d(d_) {
  if (b == 0) {
    d = 0;
  } else {
    if (d < 2) throw std::invalid_argument("QuadExt: radicand must be >= 2 when b != 0");
    long r = static_cast<long>(std::lround(std::sqrt(static_cast<double>(d))));
    for (long k = std::max(2L, r - 1); k <= r + 1; ++k)
      if (k * k == d) throw std::invalid_argument("QuadExt: radicand must not be a perfect square");
  }
}

long commonRadicand(const QuadExt& x, const QuadExt& y) {
  if (x.d == 0) return y.d;
  if (y.d == 0 || y.d == x.d) return x.d;
  throw std::invalid_argument("QuadExt: mixed radicals sqrt(" + std::to_string(x.d) +
                              ") and sqrt(" + std::to_string(y.d) + ")");
}

int QuadExt::sign() const {
  int sa = a == 0 ? 0 : (a > 0 ? 1 : -1);
  if (b == 0) return sa;
  int sb = b > 0 ? 1 : -1;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b|*sqrt(d) decided by squaring.
  Rat a2 = a * a;
  Rat b2d = b * b * d;
  if (a2 == b2d) return 0;
  return a2 > b2d ? sa : sb;
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  return QuadExt(x.a + y.a, x.b + y.b, commonRadicand(x, y));
}
QuadExt operator-(const QuadExt& x, const QuadExt& y) {
  return QuadExt(x.a - y.a, x.b - y.b, commonRadicand(x, y));
}
QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  long d = commonRadicand(x, y);
  return QuadExt(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d);
}

double QuadExt::toDouble() const {
  double va = static_cast<double>(a);
  if (b == 0) return va;
  return va + static_cast<double>(b) * std::sqrt(static_cast<double>(d));
}

std::string QuadExt::str() const {
  if (b == 0) return ratToString(a);
  std::string s = ratToString(a);
  s += (b > 0 ? "+" : "-");
  Rat babs = b > 0 ? b : Rat(-b);
  if (babs != 1) s += ratToString(babs) + "*";
  s += "sqrt(" + std::to_string(d) + ")";
  return s;
}

ExtNonnegScalar::ExtNonnegScalar(QuadExt q) : inf(false), v(std::move(q)) {
  if (v.sign() < 0) throw std::domain_error("ExtNonnegScalar: negative value " + v.str());
}

ExtNonnegScalar operator+(const ExtNonnegScalar& x, const ExtNonnegScalar& y) {
  if (x.inf || y.inf) return ExtNonnegScalar::infinity();
  return ExtNonnegScalar(x.v + y.v);
}
bool operator==(const ExtNonnegScalar& x, const ExtNonnegScalar& y) {
  if (x.inf || y.inf) return x.inf == y.inf;
  return x.v == y.v;
}
bool operator<=(const ExtNonnegScalar& x, const ExtNonnegScalar& y) {
  if (y.inf) return true;
  if (x.inf) return false;
  return x.v <= y.v;
}
bool operator<(const ExtNonnegScalar& x, const ExtNonnegScalar& y) {
  return x <= y && !(x == y);
}

}  // namespace cuntz
