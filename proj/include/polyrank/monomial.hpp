#ifndef POLYRANK_MONOMIAL_HPP
#define POLYRANK_MONOMIAL_HPP

// Dense exponent vectors and the fixed monomial order (graded reverse
// lexicographic).  Every polynomial in the library lives in a fixed number of
// variables; exponent vectors always carry all of them.

#include <cstdint>
#include <numeric>
#include <vector>

namespace polyrank {

struct Monomial {
  std::vector<std::uint32_t> e;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

  std::size_t nvars() const { return e.size(); }

  std::uint64_t degree() const {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
  }

  bool is_constant() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }

  bool divides(const Monomial& m) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
    return r;
  }

  // Quotient this/m; caller guarantees m.divides(*this).
  Monomial operator/(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= m.e[i];
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e.size(); ++i)
      if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
    return r;
  }

  static Monomial var(std::size_t nvars, std::size_t i,
                      std::uint32_t power = 1) {
    Monomial m(nvars);
    m.e[i] = power;
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.e == b.e;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }
};

// Graded reverse lexicographic: higher total degree wins; on ties the
// monomial with the smaller exponent in the last differing variable wins.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
  std::uint64_t da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t j = a.e.size(); j-- > 0;) {
    if (a.e[j] != b.e[j]) return a.e[j] > b.e[j] ? -1 : 1;
  }
  return 0;
}

struct GrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_cmp(a, b) < 0;
  }
};

}  // namespace polyrank

#endif
