#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "polyrank/certify.hpp"
#include "polyrank/multipoly.hpp"
#include "polyrank/polydisc.hpp"
#include "polyrank/shear_chain.hpp"

using namespace polyrank;

namespace {

GaussianRational gr(long re, long im = 0) { return GaussianRational(re, im); }

const Polydisc unit_disc({gr(0)}, {rat(1)});
const MultiPoly z1_1 = MultiPoly::variable(1, 0);

}  // namespace

TEST_CASE("separated zero certifies on the initial grid") {
  Certificate cert =
      certify_system_nonvanishing({z1_1 - MultiPoly::constant(1, gr(2))},
                                  unit_disc);
  REQUIRE(cert.certified());
  REQUIRE(cert.reason == "all-cells-certified");
  REQUIRE(cert.grid_depth == 0);
  REQUIRE(cert.cell_count == 16);
}

TEST_CASE("common zero at a grid center is reported as a witness") {
  // 1/4 + i/4 is a depth-0 cell center inside the disc, so the search hits
  // an exact zero and stops.
  MultiPoly q = z1_1 - MultiPoly::constant(
                           1, GaussianRational(rat(1, 4), rat(1, 4)));
  Certificate cert = certify_system_nonvanishing({q}, unit_disc);
  REQUIRE(!cert.certified());
  REQUIRE(cert.reason == "witness-cell");
}

TEST_CASE("zero off the grid centers exhausts the depth budget") {
  // The zero 1/4 sits on a cell edge: centers always have imaginary part an
  // odd multiple of radius/2^k, so no center ever hits it and no margin
  // survives around it.
  MultiPoly q = z1_1 - MultiPoly::constant(1, GaussianRational(rat(1, 4)));
  Certificate cert = certify_system_nonvanishing({q}, unit_disc, 6);
  REQUIRE(!cert.certified());
  REQUIRE(cert.reason == "depth-exhausted");
  REQUIRE(cert.grid_depth >= 5);
}

TEST_CASE("zero in the box corner outside the disc still certifies") {
  // 7/8 + 7i/8 lies in the circumscribing box but outside the disc; the
  // offending cells are skipped by the exact disc test after subdivision.
  MultiPoly q = z1_1 - MultiPoly::constant(
                           1, GaussianRational(rat(7, 8), rat(7, 8)));
  Certificate cert = certify_system_nonvanishing({q}, unit_disc);
  REQUIRE(cert.certified());
  REQUIRE(cert.grid_depth >= 1);
  REQUIRE(cert.grid_depth <= 5);
}

TEST_CASE("joint nonvanishing of generators with individual zeros") {
  // z1 and z1 - 1/2 both vanish inside the disc, but never together.
  MultiPoly q2 = z1_1 - MultiPoly::constant(1, GaussianRational(rat(1, 2)));
  Certificate cert = certify_system_nonvanishing({z1_1, q2}, unit_disc);
  REQUIRE(cert.certified());

  // Either generator alone fails.
  REQUIRE(!certify_system_nonvanishing({z1_1}, unit_disc).certified());
  REQUIRE(!certify_system_nonvanishing({q2}, unit_disc).certified());
}

TEST_CASE("degenerate generator lists") {
  Certificate none = certify_system_nonvanishing({}, unit_disc);
  REQUIRE(!none.certified());
  REQUIRE(none.reason == "no-generators");

  Certificate zero = certify_system_nonvanishing({MultiPoly(1)}, unit_disc);
  REQUIRE(zero.reason == "no-generators");

  Certificate cst = certify_system_nonvanishing(
      {MultiPoly::constant(1, gr(0, 3))}, unit_disc);
  REQUIRE(cst.certified());
  REQUIRE(cst.reason == "nonzero-constant-generator");
  REQUIRE(cst.cell_count == 0);
}

TEST_CASE("certification through a constant shear") {
  // Psi(z) = z + 3 maps the unit disc to the disc around 3, where z - 3/2
  // never vanishes.
  ShearChain chain(1);
  chain.push(ElementaryShear(0, MultiPoly::constant(1, gr(3))));
  MultiPoly q = z1_1 - MultiPoly::constant(1, GaussianRational(rat(3, 2)));
  REQUIRE(certify_chained_nonvanishing({q}, chain, unit_disc).certified());
  // Zero at 9/2, i.e. at 3/2 in chain coordinates: outside the disc.
  MultiPoly q2 = z1_1 - MultiPoly::constant(1, GaussianRational(rat(9, 2)));
  REQUIRE(certify_chained_nonvanishing({q2}, chain, unit_disc).certified());
  REQUIRE(!certify_chained_nonvanishing(
               {z1_1 - MultiPoly::constant(
                           1, gr(3) + GaussianRational(rat(1, 4), rat(1, 4)))},
               chain, unit_disc)
               .certified());
}

TEST_CASE("chained certification agrees with symbolic composition") {
  std::size_t n = 2;
  MultiPoly z1 = MultiPoly::variable(n, 0), z2 = MultiPoly::variable(n, 1);
  Polydisc bidisc({gr(0), gr(0)}, {rat(1), rat(1)});

  ShearChain chain(n);
  chain.push(ElementaryShear(1, z1 * z1));
  MultiPoly q = z2 - MultiPoly::constant(n, gr(5));

  Certificate through_chain = certify_chained_nonvanishing({q}, chain, bidisc);
  REQUIRE(through_chain.certified());

  // Independent route: expand q o Psi symbolically and certify directly.
  MultiPoly composed = q.compose(chain.expand());
  Certificate direct = certify_system_nonvanishing({composed}, bidisc);
  REQUIRE(direct.certified());
}

TEST_CASE("witness found through a chain") {
  ShearChain chain(1);
  chain.push(ElementaryShear(0, MultiPoly::constant(1, gr(3))));
  MultiPoly q =
      z1_1 - MultiPoly::constant(
                 1, gr(3) + GaussianRational(rat(1, 4), rat(1, 4)));
  Certificate cert = certify_chained_nonvanishing({q}, chain, unit_disc);
  REQUIRE(cert.reason == "witness-cell");
}

TEST_CASE("two-variable system certifies with modest depth") {
  std::size_t n = 2;
  MultiPoly z1 = MultiPoly::variable(n, 0), z2 = MultiPoly::variable(n, 1);
  Polydisc bidisc({gr(0), gr(0)}, {rat(1), rat(1)});
  // z1 - z2 - 3 is bounded away from zero on the bidisc.
  MultiPoly q = z1 - z2 - MultiPoly::constant(n, gr(3));
  Certificate cert = certify_system_nonvanishing({q}, bidisc);
  REQUIRE(cert.certified());
  REQUIRE(cert.cell_count >= 256);
}
