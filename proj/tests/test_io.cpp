#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "polyrank/io.hpp"
#include "polyrank/rank_strata.hpp"

using namespace polyrank;

namespace {

GaussianRational gr(long re, long im = 0) { return GaussianRational(re, im); }

MultiPoly z(std::size_t i, std::size_t n = 2) { return MultiPoly::variable(n, i); }

}  // namespace

TEST_CASE("polynomial grammar basics") {
  MultiPoly expect = z(0).pow(2) + z(1) * MultiPoly::constant(2, gr(2)) -
                     MultiPoly::constant(2, gr(3));
  REQUIRE(parse_poly("z1^2 + 2*z2 - 3", 2) == expect);
  // whitespace and factor order are free
  REQUIRE(parse_poly("-3+z2*2+z1^2", 2) == expect);
  REQUIRE(parse_poly("  z1 ^ 2 + 2 * z2 - 3 ", 2) == expect);

  REQUIRE(parse_poly("0", 2) == MultiPoly(2));
  REQUIRE(parse_poly("-z1", 2) == z(0) * MultiPoly::constant(2, gr(-1)));
  REQUIRE(parse_poly("(1/2)*z1*z2^3", 2) ==
          MultiPoly::term(Monomial(std::vector<std::uint32_t>{1, 3}),
                          GaussianRational(rat(1, 2))));
  REQUIRE(parse_poly("(0+1i)", 2) == MultiPoly::constant(2, gr(0, 1)));
  REQUIRE(parse_poly("(3/2-1/4i)*z2", 2) ==
          MultiPoly::term(Monomial::var(2, 1),
                          GaussianRational(rat(3, 2), rat(-1, 4))));
}

TEST_CASE("printing and reparsing is the identity") {
  std::vector<MultiPoly> polys = {
      MultiPoly(2),
      MultiPoly::constant(2, gr(-7)),
      z(0).pow(3) - z(1).pow(2) + MultiPoly::constant(2, gr(1)),
      MultiPoly::term(Monomial(std::vector<std::uint32_t>{2, 5}),
                      GaussianRational(rat(-3, 7), rat(1, 2))),
      z(0) * z(1) + z(0) * MultiPoly::constant(2, gr(0, 2)) -
          MultiPoly::constant(2, gr(0, 3))};
  for (const auto& f : polys)
    REQUIRE(parse_poly(poly_to_string(f), 2) == f);
}

TEST_CASE("frozen printed forms") {
  MultiPoly f = z(0) * MultiPoly::constant(2, gr(0, 2)) -
                MultiPoly::constant(2, gr(0, 3));
  REQUIRE(poly_to_string(f) == "(0+2i)*z1 - (0+3i)");
  REQUIRE(poly_to_string(MultiPoly(2)) == "0");
  REQUIRE(poly_to_string(z(0).pow(2) - z(1)) == "z1^2 - z2");
  REQUIRE(poly_to_string(MultiPoly::term(Monomial::var(2, 0),
                                         GaussianRational(rat(1, 2)))) ==
          "(1/2)*z1");
}

TEST_CASE("scalar parsing and printing") {
  REQUIRE(parse_complex_scalar("3/2") == GaussianRational(rat(3, 2)));
  REQUIRE(parse_complex_scalar("-2") == gr(-2));
  REQUIRE(parse_complex_scalar("0+1i") == gr(0, 1));
  REQUIRE(parse_complex_scalar("1/2-3/4i") ==
          GaussianRational(rat(1, 2), rat(-3, 4)));
  REQUIRE(complex_to_string(gr(0, 1)) == "0+1i");
  REQUIRE(complex_to_string(GaussianRational(rat(1, 2), rat(-3, 4))) ==
          "1/2-3/4i");
  REQUIRE(complex_to_string(gr(-2)) == "-2");
  REQUIRE(parse_rational_scalar("-22/7") == rat(-22, 7));

  REQUIRE_THROWS_AS(parse_complex_scalar("1/0"), ParseError);
  REQUIRE_THROWS_AS(parse_complex_scalar("3/2x"), ParseError);
  REQUIRE_THROWS_AS(parse_rational_scalar(""), ParseError);
}

TEST_CASE("region syntax round trips") {
  Polydisc R = parse_region("1/2+1/3i,-2;3/4,5");
  REQUIRE(R.n() == 2);
  REQUIRE(R.center[0] == GaussianRational(rat(1, 2), rat(1, 3)));
  REQUIRE(R.center[1] == gr(-2));
  REQUIRE(R.radius[0] == rat(3, 4));
  REQUIRE(R.radius[1] == rat(5));
  REQUIRE(region_to_string(R) == "1/2+1/3i,-2;3/4,5");
  REQUIRE(parse_region(region_to_string(R)).center == R.center);

  REQUIRE_THROWS_AS(parse_region("0,0"), ParseError);
  REQUIRE_THROWS_AS(parse_region("0,0;1"), ParseError);
  // radius validation comes from the polydisc itself
  REQUIRE_THROWS_AS(parse_region("0;0"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_region("0;-1"), std::invalid_argument);
}

TEST_CASE("map files parse with comments and round trip") {
  std::string text =
      "# squares map\n"
      "vars: 2\n"
      "\n"
      "map:\n"
      "z1^2\n"
      "z2^2\r\n"
      "z1^2 + z2^2\n";
  PolyMap f = parse_pmap(text);
  REQUIRE(f.n() == 2);
  REQUIRE(f.p() == 3);
  REQUIRE(f.components[0] == z(0).pow(2));
  REQUIRE(f.components[1] == z(1).pow(2));
  REQUIRE(f.components[2] == z(0).pow(2) + z(1).pow(2));
  REQUIRE(parse_pmap(pmap_to_string(f)).components == f.components);
}

TEST_CASE("vars header also takes the variable names in order") {
  PolyMap f = parse_pmap("vars: z1 z2\nmap:\nz1^2 + (0/1+1/1i)*z2\nz1*z2\n");
  REQUIRE(f.n() == 2);
  REQUIRE(f.components[0] ==
          z(0).pow(2) + MultiPoly::term(Monomial::var(2, 1, 1),
                                        GaussianRational(rat(0), rat(1))));
  REQUIRE(f.components[1] == z(0) * z(1));

  REQUIRE_THROWS_AS(parse_pmap("vars: z2 z1\nmap:\nz1\n"), ParseError);
  REQUIRE_THROWS_AS(parse_pmap("vars: w1\nmap:\nz1\n"), ParseError);
}

TEST_CASE("ideal files parse and round trip") {
  std::string text = "vars: 2\ngens:\nz1*z2\nz1^2 - z2\n";
  Ideal I = parse_ideal(text);
  REQUIRE(I.nvars() == 2);
  REQUIRE(I.generators().size() == 2);
  REQUIRE(I.generators()[0] == z(0) * z(1));
  Ideal back = parse_ideal(ideal_to_string(I));
  REQUIRE(back.generators() == I.generators());
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_poly("z1 + + z2", 2, 7);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 7);
    REQUIRE(e.col == 6);
    REQUIRE(std::string(e.what()).find("line 7") != std::string::npos);
  }

  try {
    parse_pmap("vars: 2\nmap:\nz1\nz3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 4);  // z3 exceeds the declared variable count
  }

  REQUIRE_THROWS_AS(parse_pmap("vars: 2\nmap:\n"), ParseError);
  REQUIRE_THROWS_AS(parse_pmap("vars 2\nmap:\nz1\n"), ParseError);
  REQUIRE_THROWS_AS(parse_pmap("vars: 0\nmap:\nz1\n"), ParseError);
  REQUIRE_THROWS_AS(parse_ideal("vars: 2\nmap:\nz1\n"), ParseError);
  // oversized numbers fail loudly instead of truncating
  REQUIRE_THROWS_AS(parse_poly("z1^4294967296", 2), ParseError);
  REQUIRE_THROWS_AS(
      parse_poly("z99999999999999999999999999", 2), ParseError);
}

TEST_CASE("hashing is frozen") {
  REQUIRE(fnv1a64("") == 14695981039346656037ULL);
  REQUIRE(fnv1a64("abc") == 0xe71fa2190541574bULL);
  REQUIRE(hex64(0) == "0000000000000000");
  REQUIRE(hex64(0xdeadbeefULL) == "00000000deadbeef");
  REQUIRE(hex64(fnv1a64("abc")) == "e71fa2190541574b");
}
