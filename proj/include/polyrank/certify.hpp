#ifndef POLYRANK_CERTIFY_HPP
#define POLYRANK_CERTIFY_HPP

// Grid certification that a polynomial system has no common zero on a
// polydisc, optionally after precomposing with a shear chain.  Everything is
// exact: cell geometry is rational, evaluations are in Q(i), and the
// separation criterion compares rational surrogates only, so a Certified
// result is a proof.
//
// Scheme: cover the circumscribing box of each disc with a 4x4 grid of
// squares (half-width radius/4), take products across coordinates, push an
// enclosure of each cell through the chain (center plus per-coordinate
// modulus radii s_i), and test the cell against each generator q with
//     lower|q(img center)| > sum_i B_i * s_i,
// where B_i are per-coordinate gradient bounds for q on the image
// enclosure.  A failing cell splits only in the coordinate dominating the
// bound for the generator that came closest, since chained enclosures
// concentrate their stretch in the shear source; if no generator gives a
// direction the cell splits in every coordinate.  Each coordinate may be
// halved max_depth times, so the finest half-width per coordinate matches a
// uniform 2^(2n)-way subdivision of the same depth at far fewer cells.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "polyrank/bounds.hpp"
#include "polyrank/multipoly.hpp"
#include "polyrank/polydisc.hpp"
#include "polyrank/shear_chain.hpp"

namespace polyrank {

enum class CertStatus { Certified, NotCertified };

struct Certificate {
  CertStatus status = CertStatus::NotCertified;
  std::string reason;
  int grid_depth = 0;           // deepest cell examined
  std::uint64_t cell_count = 0; // cells examined, including skipped ones

  bool certified() const { return status == CertStatus::Certified; }
};

namespace detail {

struct GridCell {
  std::vector<GaussianRational> center;  // complex midpoint per coordinate
  std::vector<Rational> h;               // half-width per coordinate (re = im)
  std::vector<int> depth;                // refinement level per coordinate

  int level() const {
    int d = 0;
    for (int di : depth) d = std::max(d, di);
    return d;
  }
};

// Cell disjoint from the disc product?  Exact nearest-point test per
// coordinate: clamp the disc center into the square and compare squared
// distances.
inline bool cell_outside_region(const GridCell& cell, const Polydisc& R) {
  for (std::size_t i = 0; i < R.n(); ++i) {
    Rational dx = rat_abs(Rational(cell.center[i].re() - R.center[i].re()));
    Rational dy = rat_abs(Rational(cell.center[i].im() - R.center[i].im()));
    dx -= cell.h[i];
    if (dx < 0) dx = 0;
    dy -= cell.h[i];
    if (dy < 0) dy = 0;
    if (Rational(dx * dx + dy * dy) > Rational(R.radius[i] * R.radius[i]))
      return true;
  }
  return false;
}

// Enclosure of the chain image of a cell: the image lies in the polydisc
// with this center and per-coordinate modulus radii s.  The radii are
// linear in the cell half-widths; A tracks that response (s ~ A h, doubles,
// heuristic use only) so split planning can predict the effect of halving
// one coordinate.
struct ChainImage {
  std::vector<GaussianRational> center;
  std::vector<Rational> s;
  std::vector<std::vector<double>> A;
};

inline ChainImage push_through_chain(const ShearChain& chain,
                                     const GridCell& cell) {
  ChainImage img;
  img.center = cell.center;
  std::size_t n = cell.h.size();
  img.s.reserve(n);
  // |z_i - zc_i| <= sqrt(2) h_i <= (3/2) h_i on the square.
  for (const auto& hi : cell.h) img.s.push_back(Rational(hi * rat(3, 2)));
  img.A.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) img.A[i][i] = 1.5;
  for (const auto& sh : chain.shears) {
    std::vector<Rational> U(n);
    for (std::size_t j = 0; j < n; ++j)
      U[j] = Rational(
          modulus_upper(GaussianRational(img.center[j] - sh.anchor[j])) +
          img.s[j]);
    std::vector<Rational> B = sh.offset_gradient_bounds(U);
    GaussianRational val = sh.offset_at(img.center);
    Rational grow(0);
    for (std::size_t j = 0; j < n; ++j) grow += B[j] * img.s[j];
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += B[j].get_d() * img.A[j][k];
      img.A[sh.target][k] += acc;
    }
    img.center[sh.target] += val;
    img.s[sh.target] += grow;
  }
  return img;
}

}  // namespace detail

// Certify that the generators have no common zero on Psi(R) with Psi the
// given chain, i.e. that at every z in R some generator is nonzero at
// Psi(z).  An empty chain certifies plain nonvanishing on R.
inline Certificate certify_chained_nonvanishing(
    const std::vector<MultiPoly>& gens, const ShearChain& chain,
    const Polydisc& R, int max_depth = 8) {
  Certificate cert;
  std::vector<const MultiPoly*> active;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.terms().size() == 1 && g.leading().first.is_constant()) {
      cert.status = CertStatus::Certified;
      cert.reason = "nonzero-constant-generator";
      return cert;
    }
    active.push_back(&g);
  }
  if (active.empty()) {
    cert.reason = "no-generators";
    return cert;
  }

  std::size_t n = R.n();
  std::vector<detail::GridCell> stack;
  {
    // 4x4 grid per coordinate: centers c + radius*(2k-3)/4, k = 0..3, for
    // both real parts; odometer over all coordinates.
    std::vector<std::uint32_t> idx(2 * n, 0);
    for (;;) {
      detail::GridCell cell;
      cell.center.resize(n);
      cell.h.resize(n);
      cell.depth.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        Rational q = Rational(R.radius[i] / 4);
        Rational cx = Rational(R.center[i].re() +
                               q * rat(2 * static_cast<long>(idx[2 * i]) - 3));
        Rational cy =
            Rational(R.center[i].im() +
                     q * rat(2 * static_cast<long>(idx[2 * i + 1]) - 3));
        cell.center[i] = GaussianRational(cx, cy);
        cell.h[i] = q;
      }
      stack.push_back(std::move(cell));
      std::size_t d = 0;
      while (d < idx.size() && ++idx[d] == 4) idx[d++] = 0;
      if (d == idx.size()) break;
    }
  }

  std::size_t hint = 0;  // generator that certified the previous cell
  while (!stack.empty()) {
    detail::GridCell cell = std::move(stack.back());
    stack.pop_back();
    ++cert.cell_count;
    cert.grid_depth = std::max(cert.grid_depth, cell.level());
    if (detail::cell_outside_region(cell, R)) continue;

    detail::ChainImage img = detail::push_through_chain(chain, cell);

    std::vector<Rational> U(n);
    bool have_U = false;
    bool all_zero = true;
    bool cell_ok = false;
    // A coordinate at max_depth cannot shrink further; a generator whose
    // lower bound already loses to the exhausted coordinates alone can never
    // certify a descendant, so such generators give no split direction.
    std::size_t split_dir = 0;
    bool have_dir = false;
    int best_plan = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
      std::size_t gi = k == 0 ? hint : (k <= hint ? k - 1 : k);
      const MultiPoly* q = active[gi];
      GaussianRational v = q->eval(img.center);
      if (v.is_zero()) continue;
      all_zero = false;
      if (!have_U) {
        for (std::size_t l = 0; l < n; ++l)
          U[l] = Rational(modulus_upper(img.center[l]) + img.s[l]);
        have_U = true;
      }
      std::vector<Rational> B = termwise_gradient_bounds(*q, U);
      Rational need(0);
      for (std::size_t l = 0; l < n; ++l) need += B[l] * img.s[l];
      Rational low = v.lower_abs();
      if (low > need) {
        cell_ok = true;
        hint = gi;
        break;
      }
      Rational fixed(0);
      for (std::size_t l = 0; l < n; ++l)
        if (cell.depth[l] >= max_depth) fixed += B[l] * img.s[l];
      if (low <= fixed) continue;  // hopeless through this generator
      // Plan the cheapest way to certify via q: the bound is linear in the
      // half-widths (s ~ A h), so greedily halve the dominant refinable
      // contribution until it drops below |q|.  The generator with the
      // shortest plan decides the split direction; generators that are
      // merely close but unimprovable never steer the subdivision.
      std::vector<double> t(n, 0.0);
      for (std::size_t l2 = 0; l2 < n; ++l2) {
        double ck = 0.0;
        for (std::size_t l = 0; l < n; ++l) ck += B[l].get_d() * img.A[l][l2];
        t[l2] = ck * cell.h[l2].get_d();
        if (!(t[l2] < 1e300)) t[l2] = 1e300;
      }
      double lo = low.get_d();
      std::vector<int> room(n);
      for (std::size_t l = 0; l < n; ++l)
        room[l] = max_depth - cell.depth[l];
      int plan = 0;
      std::size_t dir0 = n;
      for (;;) {
        double tot = 0.0;
        for (double tk : t) tot += tk;
        if (tot < lo) break;
        std::size_t pick = n;
        for (std::size_t l = 0; l < n; ++l)
          if (room[l] > 0 && (pick == n || t[l] > t[pick])) pick = l;
        if (pick == n) {
          plan = -1;  // refinement budget cannot reach the threshold
          break;
        }
        if (dir0 == n) dir0 = pick;
        t[pick] /= 2;
        --room[pick];
        ++plan;
      }
      if (plan < 0) continue;
      if (dir0 == n) {
        // Double estimate says done while the exact test failed: margin
        // case, halve the dominant refinable coordinate once.
        for (std::size_t l = 0; l < n; ++l)
          if (room[l] > 0 && (dir0 == n || t[l] > t[dir0])) dir0 = l;
        if (dir0 == n) continue;
        plan = 1;
      }
      if (!have_dir || plan < best_plan) {
        best_plan = plan;
        split_dir = dir0;
        have_dir = true;
      }
    }
    if (cell_ok) continue;

    bool can_split = false;
    for (std::size_t l = 0; l < n; ++l)
      if (cell.depth[l] < max_depth) can_split = true;

    if (all_zero) {
      // Exact common zero at the image of the cell center.  If the center
      // lies in the region this can never certify; otherwise subdivision may
      // still push the zero into skipped cells.
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        inside = GaussianRational(cell.center[i] - R.center[i]).norm() <=
                 Rational(R.radius[i] * R.radius[i]);
      if (inside) {
        cert.reason = "witness-cell";
        return cert;
      }
      if (!can_split) {
        cert.reason = "depth-exhausted";
        return cert;
      }
      // No gradient information at an off-region zero: halve every
      // refinable coordinate.
      std::vector<std::size_t> avail;
      for (std::size_t l = 0; l < n; ++l)
        if (cell.depth[l] < max_depth) avail.push_back(l);
      std::vector<std::uint32_t> idx(2 * avail.size(), 0);
      for (;;) {
        detail::GridCell child = cell;
        for (std::size_t a = 0; a < avail.size(); ++a) {
          std::size_t i = avail[a];
          Rational q = Rational(cell.h[i] / 2);
          Rational cx = Rational(cell.center[i].re() +
                                 (idx[2 * a] ? q : Rational(-q)));
          Rational cy = Rational(cell.center[i].im() +
                                 (idx[2 * a + 1] ? q : Rational(-q)));
          child.center[i] = GaussianRational(cx, cy);
          child.h[i] = q;
          ++child.depth[i];
        }
        stack.push_back(std::move(child));
        std::size_t d = 0;
        while (d < idx.size() && ++idx[d] == 2) idx[d++] = 0;
        if (d == idx.size()) break;
      }
      continue;
    }

    if (!have_dir) {
      // Every generator is either zero at the center or beaten by exhausted
      // coordinates; further splitting cannot help.
      cert.reason = "depth-exhausted";
      return cert;
    }

    Rational q = Rational(cell.h[split_dir] / 2);
    for (int sx = 0; sx < 2; ++sx)
      for (int sy = 0; sy < 2; ++sy) {
        detail::GridCell child = cell;
        ++child.depth[split_dir];
        Rational cx = Rational(cell.center[split_dir].re() +
                               (sx ? q : Rational(-q)));
        Rational cy = Rational(cell.center[split_dir].im() +
                               (sy ? q : Rational(-q)));
        child.center[split_dir] = GaussianRational(cx, cy);
        child.h[split_dir] = q;
        stack.push_back(std::move(child));
      }
  }

  cert.status = CertStatus::Certified;
  cert.reason = "all-cells-certified";
  return cert;
}

inline Certificate certify_system_nonvanishing(const std::vector<MultiPoly>& gens,
                                               const Polydisc& R,
                                               int max_depth = 8) {
  return certify_chained_nonvanishing(gens, ShearChain(R.n()), R, max_depth);
}

}  // namespace polyrank

#endif
