#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polyrank/exact_linalg.hpp"
#include "polyrank/multipoly.hpp"
#include "polyrank/rng.hpp"

using namespace polyrank;

namespace {

GaussianRational gr(long re, long im = 0) { return GaussianRational(re, im); }

GaussianRational random_entry(SplitMix64& rng) {
  return GaussianRational(rat(rng.range(-9, 9), 1 + rng.below(4)),
                          rat(rng.range(-9, 9), 1 + rng.below(4)));
}

QiMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  QiMatrix M(rows, std::vector<GaussianRational>(cols));
  for (auto& row : M)
    for (auto& z : row) z = random_entry(rng);
  return M;
}

// rows x cols matrix of rank at most r, as a product of two random factors.
QiMatrix random_bounded_rank(SplitMix64& rng, std::size_t rows,
                             std::size_t cols, std::size_t r) {
  QiMatrix A = random_matrix(rng, rows, r);
  QiMatrix B = random_matrix(rng, r, cols);
  QiMatrix M(rows, std::vector<GaussianRational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < r; ++k) M[i][j] += A[i][k] * B[k][j];
  return M;
}

QiMatrix transpose(const QiMatrix& M) {
  if (M.empty()) return {};
  QiMatrix T(M[0].size(), std::vector<GaussianRational>(M.size()));
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j) T[j][i] = M[i][j];
  return T;
}

}  // namespace

TEST_CASE("rank on fixed matrices, both routes") {
  QiMatrix id3{{gr(1), gr(0), gr(0)},
               {gr(0), gr(1), gr(0)},
               {gr(0), gr(0), gr(1)}};
  QiMatrix dep{{gr(1), gr(2)}, {gr(2), gr(4)}};
  // det = i * (-i) - 1 = 0.
  QiMatrix cx{{gr(0, 1), gr(1)}, {gr(1), gr(0, -1)}};
  QiMatrix zero{{gr(0), gr(0)}, {gr(0), gr(0)}};

  for (auto* M : {&id3, &dep, &cx, &zero})
    REQUIRE(rank_bareiss(*M) == rank_gauss(*M));
  REQUIRE(rank_bareiss(id3) == 3);
  REQUIRE(rank_bareiss(dep) == 1);
  REQUIRE(rank_bareiss(cx) == 1);
  REQUIRE(rank_bareiss(zero) == 0);
  REQUIRE(rank_bareiss(QiMatrix{}) == 0);

  std::vector<std::size_t> piv;
  QiMatrix colgap{{gr(0), gr(3), gr(1)}, {gr(0), gr(6), gr(5)}};
  REQUIRE(rank_gauss(colgap, &piv) == 2);
  REQUIRE(piv == std::vector<std::size_t>{1, 2});
}

TEST_CASE("fraction-free and fraction ranks agree on random matrices") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(5);
    QiMatrix M = random_matrix(rng, rows, cols);
    std::size_t rb = rank_bareiss(M), rg = rank_gauss(M);
    REQUIRE(rb == rg);
    REQUIRE(rank_bareiss(transpose(M)) == rb);
  }
}

TEST_CASE("factored matrices respect the rank bound") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = rng.below(3);
    QiMatrix M = random_bounded_rank(rng, 2 + rng.below(3), 2 + rng.below(3),
                                     r);
    std::size_t rk = rank_bareiss(M);
    REQUIRE(rk <= r);
    REQUIRE(rk == rank_gauss(M));
  }
}

TEST_CASE("schur complement of the leading block") {
  QiMatrix M{{gr(1), gr(2)}, {gr(3), gr(4)}};
  QiMatrix S = schur_complement(M, 1);
  REQUIRE(S.size() == 1);
  REQUIRE(S[0].size() == 1);
  REQUIRE(S[0][0] == gr(-2));

  // r = 0 is the identity operation.
  QiMatrix S0 = schur_complement(M, 0);
  REQUIRE(S0 == M);

  // Leading 1x1 block is zero and pivoting may not leave the block.
  QiMatrix sing{{gr(0), gr(1)}, {gr(1), gr(0)}};
  REQUIRE_THROWS_AS(schur_complement(sing, 1), std::domain_error);
  REQUIRE_THROWS_AS(schur_complement(M, 3), std::invalid_argument);
}

TEST_CASE("rank splits across the schur complement") {
  // Whenever the leading r x r block is invertible,
  // rank(M) = r + rank(M/A).  Exercised on random matrices.
  SplitMix64 rng(555);
  int tested = 0;
  for (int trial = 0; trial < 120 && tested < 60; ++trial) {
    std::size_t rows = 2 + rng.below(4), cols = 2 + rng.below(4);
    std::size_t r = 1 + rng.below(rows < cols ? rows : cols);
    QiMatrix M = random_matrix(rng, rows, cols);
    QiMatrix lead(r, std::vector<GaussianRational>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) lead[i][j] = M[i][j];
    if (rank_gauss(lead) != r) continue;
    QiMatrix S = schur_complement(M, r);
    REQUIRE(rank_gauss(M) == r + rank_gauss(S));
    REQUIRE(rank_bareiss(M) == r + rank_bareiss(S));
    ++tested;
  }
  REQUIRE(tested >= 30);
}

TEST_CASE("polynomial span tracks dependence") {
  std::size_t n = 2;
  MultiPoly z1 = MultiPoly::variable(n, 0), z2 = MultiPoly::variable(n, 1);
  PolySpan span;
  REQUIRE(!span.add(z1).has_value());
  REQUIRE(!span.add(z2).has_value());
  REQUIRE(span.size() == 2);

  auto dep = span.add(gr(3) * z1 - gr(2) * z2);
  REQUIRE(dep.has_value());
  REQUIRE(*dep == std::vector<GaussianRational>{gr(3), gr(-2)});
  REQUIRE(span.size() == 2);

  REQUIRE(!span.add(z1 * z1).has_value());
  auto zero_dep = span.add(MultiPoly(n));
  REQUIRE(zero_dep.has_value());
  for (const auto& c : *zero_dep) REQUIRE(c.is_zero());
}

TEST_CASE("span dependence coefficients reconstruct the polynomial") {
  SplitMix64 rng(808);
  std::size_t n = 2;
  std::vector<MultiPoly> added;
  PolySpan span;
  for (int t = 0; t < 30; ++t) {
    MultiPoly p(n);
    for (int k = 0; k < 4; ++k) {
      Monomial m({static_cast<std::uint32_t>(rng.below(3)),
                  static_cast<std::uint32_t>(rng.below(3))});
      p.add_term(m, gr(rng.range(-3, 3), rng.range(-3, 3)));
    }
    auto dep = span.add(p);
    if (dep.has_value()) {
      MultiPoly recon(n);
      for (std::size_t j = 0; j < dep->size(); ++j) {
        MultiPoly s = added[j];
        s.scale((*dep)[j]);
        recon += s;
      }
      REQUIRE(recon == p);
    }
    added.push_back(p);
  }
}
