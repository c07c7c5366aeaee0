#ifndef POLYRANK_EXACT_LINALG_HPP
#define POLYRANK_EXACT_LINALG_HPP

// Exact linear algebra over Q(i).  Two deliberately independent elimination
// routes are kept: fraction-free Bareiss over Z[i] (rank only) and plain
// fraction Gaussian elimination (rank, Schur complements, dependence
// tracking), so results can cross-check each other.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyrank/gaussian_rational.hpp"
#include "polyrank/multipoly.hpp"

namespace polyrank {

using QiMatrix = std::vector<std::vector<GaussianRational>>;

namespace detail {

struct GaussianInt {
  mpz_class re, im;

  GaussianInt() : re(0), im(0) {}
  GaussianInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }

  GaussianInt operator*(const GaussianInt& o) const {
    return {mpz_class(re * o.re - im * o.im),
            mpz_class(re * o.im + im * o.re)};
  }
  GaussianInt operator-(const GaussianInt& o) const {
    return {mpz_class(re - o.re), mpz_class(im - o.im)};
  }

  // Exact quotient in Z[i]; throws if b does not divide a (which would mean
  // a broken fraction-free invariant, not bad input).
  static GaussianInt exact_div(const GaussianInt& a, const GaussianInt& b) {
    mpz_class n(b.re * b.re + b.im * b.im);
    mpz_class tr(a.re * b.re + a.im * b.im);
    mpz_class ti(a.im * b.re - a.re * b.im);
    mpz_class qr, rr, qi, ri;
    mpz_tdiv_qr(qr.get_mpz_t(), rr.get_mpz_t(), tr.get_mpz_t(), n.get_mpz_t());
    mpz_tdiv_qr(qi.get_mpz_t(), ri.get_mpz_t(), ti.get_mpz_t(), n.get_mpz_t());
    if (rr != 0 || ri != 0)
      throw std::logic_error("inexact division in fraction-free elimination");
    return {std::move(qr), std::move(qi)};
  }
};

}  // namespace detail

// Rank via one-step Bareiss after clearing denominators row by row.  All
// intermediate entries are Gaussian integers (minors of the scaled matrix).
inline std::size_t rank_bareiss(const QiMatrix& M) {
  if (M.empty() || M[0].empty()) return 0;
  std::size_t rows = M.size(), cols = M[0].size();
  std::vector<std::vector<detail::GaussianInt>> W(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (M[i].size() != cols) throw std::invalid_argument("ragged matrix");
    mpz_class L(1);
    for (const auto& z : M[i]) {
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), z.re().get_den().get_mpz_t());
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), z.im().get_den().get_mpz_t());
    }
    W[i].reserve(cols);
    for (const auto& z : M[i])
      W[i].emplace_back(mpz_class(z.re().get_num() * (L / z.re().get_den())),
                        mpz_class(z.im().get_num() * (L / z.im().get_den())));
  }
  detail::GaussianInt prev(mpz_class(1), mpz_class(0));
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && W[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(W[piv], W[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        W[i][j] = detail::GaussianInt::exact_div(
            W[row][col] * W[i][j] - W[i][col] * W[row][j], prev);
      W[i][col] = detail::GaussianInt();
    }
    prev = W[row][col];
    ++row;
  }
  return row;
}

// Rank via plain fraction elimination; optionally reports which columns got
// pivots (a reusable independence witness).
inline std::size_t rank_gauss(QiMatrix M,
                              std::vector<std::size_t>* pivot_cols = nullptr) {
  if (pivot_cols) pivot_cols->clear();
  if (M.empty() || M[0].empty()) return 0;
  std::size_t rows = M.size(), cols = M[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && M[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[row]);
    GaussianRational inv = M[row][col].inverse();
    for (std::size_t i = row + 1; i < rows; ++i) {
      if (M[i][col].is_zero()) continue;
      GaussianRational f = M[i][col] * inv;
      for (std::size_t j = col; j < cols; ++j) M[i][j] -= f * M[row][j];
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++row;
  }
  return row;
}

// Schur complement D - C A^{-1} B of the leading r x r block A of M.  Row
// operations use only the first r rows, so the returned block is exact.
// Throws std::domain_error if A is singular.
inline QiMatrix schur_complement(QiMatrix M, std::size_t r) {
  std::size_t rows = M.size();
  std::size_t cols = rows ? M[0].size() : 0;
  if (r > rows || r > cols)
    throw std::invalid_argument("Schur block larger than matrix");
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t piv = k;
    while (piv < r && M[piv][k].is_zero()) ++piv;
    if (piv == r) throw std::domain_error("singular leading block");
    std::swap(M[piv], M[k]);
    GaussianRational inv = M[k][k].inverse();
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (M[i][k].is_zero()) continue;
      GaussianRational f = M[i][k] * inv;
      for (std::size_t j = k; j < cols; ++j) M[i][j] -= f * M[k][j];
    }
  }
  QiMatrix S(rows - r);
  for (std::size_t i = r; i < rows; ++i)
    S[i - r].assign(M[i].begin() + static_cast<std::ptrdiff_t>(r), M[i].end());
  return S;
}

// Incremental span of polynomials viewed as vectors over their monomials.
// add() either reports the coefficients expressing the new polynomial over
// the ones added before it, or absorbs it into the reduced basis.
class PolySpan {
 public:
  std::optional<std::vector<GaussianRational>> add(const MultiPoly& p) {
    std::vector<GaussianRational> comb(count_, GaussianRational(0));
    MultiPoly residual = p;
    while (!residual.is_zero()) {
      const auto& [lm, lc] = residual.leading();
      auto it = rows_.find(lm);
      if (it == rows_.end()) {
        GaussianRational inv = lc.inverse();
        MultiPoly monic = residual;
        monic.scale(inv);
        std::vector<GaussianRational> rowcomb(count_ + 1);
        for (std::size_t j = 0; j < count_; ++j)
          rowcomb[j] = -comb[j] * inv;
        rowcomb[count_] = inv;
        rows_.emplace(lm, Row{std::move(monic), std::move(rowcomb)});
        ++count_;
        return std::nullopt;
      }
      GaussianRational f = lc;
      MultiPoly sub = it->second.poly;
      sub.scale(f);
      residual -= sub;
      for (std::size_t j = 0; j < it->second.comb.size(); ++j)
        comb[j] += f * it->second.comb[j];
    }
    return comb;
  }

  std::size_t size() const { return count_; }

 private:
  struct Row {
    MultiPoly poly;  // monic on its pivot monomial
    std::vector<GaussianRational> comb;
  };
  std::map<Monomial, Row, GrevlexLess> rows_;
  std::size_t count_ = 0;
};

}  // namespace polyrank

#endif
