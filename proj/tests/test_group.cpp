#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "aal/group.hpp"
#include "aal/rational.hpp"
#include "aal/rng.hpp"
#include "aal/setops.hpp"

using namespace aal;

TEST_CASE("group spec parsing and canonical form") {
  CHECK(GroupSpec::parse("Z8").orders() == std::vector<std::uint32_t>{8});
  CHECK(GroupSpec::parse("z2^3").orders() == std::vector<std::uint32_t>{2, 2, 2});
  CHECK(GroupSpec::parse("Z2xZ3xZ5").orders() == std::vector<std::uint32_t>{2, 3, 5});
  CHECK(GroupSpec::parse("Z2 x Z3").size() == 6);
  CHECK(GroupSpec::parse("Z1xZ5xZ1").orders() == std::vector<std::uint32_t>{5});
  CHECK(GroupSpec::parse("Z1").orders() == std::vector<std::uint32_t>{1});
  CHECK(GroupSpec::parse("Z2^3").str() == "Z2^3");
  CHECK(GroupSpec::parse("Z2xZ3").str() == "Z2xZ3");
  CHECK_THROWS_AS(GroupSpec::parse("Q8"), Error);
  CHECK_THROWS_AS(GroupSpec::parse("Z0"), Error);
  CHECK_THROWS_AS(GroupSpec::parse("Z2^40"), Error);  // over the enumeration cap
}

TEST_CASE("enumeration is lexicographic") {
  GroupSpec g({2, 2});
  auto e = enumerate_elements(g);
  REQUIRE(e.size() == 4);
  CHECK(e[0].coords == std::vector<std::uint32_t>{0, 0});
  CHECK(e[1].coords == std::vector<std::uint32_t>{0, 1});
  CHECK(e[2].coords == std::vector<std::uint32_t>{1, 0});
  CHECK(e[3].coords == std::vector<std::uint32_t>{1, 1});

  GroupSpec t({1});
  auto et = enumerate_elements(t);
  REQUIRE(et.size() == 1);
  CHECK(et[0].coords == std::vector<std::uint32_t>{0});

  GroupSpec c6({6});
  auto e6 = enumerate_elements(c6);
  REQUIRE(e6.size() == 6);
  for (std::uint32_t i = 0; i < 6; ++i) CHECK(e6[i].coords == std::vector<std::uint32_t>{i});
}

TEST_CASE("element arithmetic") {
  GroupSpec z5({5});
  CHECK(z5.add(3, 4) == 2);
  CHECK(z5.neg(0) == 0);
  CHECK(z5.neg(2) == 3);
  CHECK(z5.mul(2, -3) == 4);  // -6 mod 5

  GroupSpec g({2, 3});
  Index x = g.index_of_signed(std::array<std::int64_t, 2>{1, 2});
  CHECK(g.coords(g.add(x, x)) == std::vector<std::uint32_t>{0, 1});

  GroupElement a{{1, 2}}, b{{1, 2}};
  CHECK(add(g, a, b).coords == std::vector<std::uint32_t>{0, 1});

  GroupSpec z7({7});
  CHECK_THROWS_AS(z5.require_same(z7), Error);
}

TEST_CASE("character values") {
  GroupSpec z4({4});
  CHECK(z4.char_value(0, 3) == std::complex<double>(1.0, 0.0));
  CHECK(z4.char_value(1, 2).real() == doctest::Approx(-1.0));
  CHECK(z4.char_value(1, 2).imag() == doctest::Approx(0.0));

  GroupSpec z8({8});
  auto v = z8.char_value(1, 1);
  CHECK(v.real() == doctest::Approx(std::cos(std::acos(-1.0) / 4)));
  CHECK(v.imag() == doctest::Approx(std::sin(std::acos(-1.0) / 4)));
}

TEST_CASE("character multiplicativity and orthogonality, exhaustive to order 64") {
  std::vector<std::vector<std::uint32_t>> groups = {{12}, {2, 2, 2}, {4, 4}, {2, 3, 5}, {64}, {3, 3}};
  for (const auto& orders : groups) {
    GroupSpec g(orders);
    std::uint64_t n = g.size();
    for (Index t = 0; t < n; ++t) {
      std::complex<double> sum = 0.0;
      for (Index x = 0; x < n; ++x) {
        sum += g.char_value(t, x);
        for (Index y = 0; y < n; ++y) {
          auto lhs = g.char_value(t, g.add(x, y));
          auto rhs = g.char_value(t, x) * g.char_value(t, y);
          CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
      }
      if (t == 0)
        CHECK(std::abs(sum - (double)n) <= 1e-9);
      else
        CHECK(std::abs(sum) <= 1e-9);
    }
  }
}

TEST_CASE("subgroup generation") {
  GroupSpec z8({8});
  GSet gens(z8);
  gens.add(2);
  CHECK(subgroup_generated(gens).str() == "{0,2,4,6}");

  GSet none(z8);
  CHECK(subgroup_generated(none).str() == "{0}");

  GroupSpec v4({2, 2});
  GSet both(v4);
  both.add(v4.index_of_signed(std::array<std::int64_t, 2>{1, 0}));
  both.add(v4.index_of_signed(std::array<std::int64_t, 2>{0, 1}));
  CHECK(subgroup_generated(both).size() == 4);
}

TEST_CASE("coset detection with witness") {
  GroupSpec z8({8});
  auto h = GSet::parse(z8, "{0,2,4,6}");
  auto r = is_coset(h);
  CHECK(r.is_coset);
  CHECK(r.translate == 0);
  CHECK(r.subgroup == h);

  auto t = GSet::parse(z8, "{1,3,5,7}");
  auto rt = is_coset(t);
  CHECK(rt.is_coset);
  CHECK(rt.subgroup == h);

  CHECK_FALSE(is_coset(GSet::parse(z8, "{0,1,3}")).is_coset);
  CHECK_FALSE(is_coset(GSet(z8)).is_coset);
}

TEST_CASE("set literals round-trip") {
  GroupSpec g({2, 3});
  auto s = GSet::parse(g, "{(0,1),(1,2)}");
  CHECK(s.size() == 2);
  CHECK(GSet::parse(g, s.str()) == s);

  GroupSpec z100({100});
  auto a = GSet::parse(z100, "{-1,0,1}");
  CHECK(a.str() == "{0,1,99}");
  auto r = GSet::parse(z100, "{-5..5}");
  CHECK(r.size() == 11);
  CHECK(GSet::parse(z100, "{}").empty());
  CHECK_THROWS_AS(GSet::parse(z100, "{1,2"), Error);
  CHECK_THROWS_AS(GSet::parse(g, "{3}"), Error);
}

TEST_CASE("coset law: E(A) = |A|^3 exactly for cosets, exhaustive |G| <= 12") {
  std::vector<std::vector<std::uint32_t>> groups = {{12}, {2, 6}, {3, 4}, {2, 2, 3}, {8}, {2, 4}, {2, 2, 2}};
  for (const auto& orders : groups) {
    GroupSpec g(orders);
    std::uint64_t n = g.size();
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
      GSet a(g);
      for (std::uint64_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) a.add(i);
      std::uint64_t e = energy(a);
      std::uint64_t cube = a.size() * a.size() * a.size();
      bool coset = is_coset(a).is_coset;
      CHECK(e <= cube);
      CHECK((e == cube) == coset);
    }
  }
}

TEST_CASE("rationals") {
  CHECK(Rat(6, 4) == Rat(3, 2));
  CHECK(Rat(5, 3) > Rat(3, 2));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK((Rat(5, 3) * Rat(3, 5)) == Rat(1));
  CHECK(Rat::parse("5/3") == Rat(5, 3));
  CHECK(Rat::parse("0.52") == Rat(13, 25));
  CHECK(Rat::parse("-2/4") == Rat(-1, 2));
  CHECK(Rat::parse("3").str() == "3");
  CHECK(Rat(5, 3).str() == "5/3");
  CHECK_THROWS_AS(Rat::parse("x"), Error);
  CHECK_THROWS_AS(Rat(1, 0), Error);
}

TEST_CASE("rng determinism and bounds") {
  Rng r1(42), r2(42);
  for (int i = 0; i < 100; ++i) CHECK(r1.next() == r2.next());
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.below(10) < 10);
    double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}
