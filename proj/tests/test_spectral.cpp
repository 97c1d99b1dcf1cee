#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aal/rng.hpp"
#include "aal/spectral.hpp"

using namespace aal;

namespace {

GSet random_nonempty(const GroupSpec& g, double density, Rng& rng) {
  GSet a(g);
  while (a.empty()) {
    for (Index x = 0; x < g.size(); ++x)
      if (rng.unit() < density) a.add(x);
  }
  return a;
}

}  // namespace

TEST_CASE("transform of point mass and of the full group") {
  GroupSpec g({12});
  auto hat = fourier(DensityMap::point_mass(g, 0));
  for (Index t = 0; t < 12; ++t) CHECK(std::abs(hat.coefficients[t] - std::complex<double>(1.0)) <= 1e-12);

  auto full = fourier(DensityMap::indicator(GSet::full_set(g)));
  CHECK(std::abs(full.coefficients[0] - std::complex<double>(12.0)) <= 1e-9);
  for (Index t = 1; t < 12; ++t) CHECK(std::abs(full.coefficients[t]) <= 1e-9);
}

TEST_CASE("transform of a subgroup indicator in Z/4") {
  GroupSpec z4({4});
  auto hat = fourier(DensityMap::indicator(GSet::parse(z4, "{0,2}")));
  CHECK(std::abs(hat.coefficients[0] - std::complex<double>(2.0)) <= 1e-12);
  CHECK(std::abs(hat.coefficients[1]) <= 1e-12);
  CHECK(std::abs(hat.coefficients[2] - std::complex<double>(2.0)) <= 1e-12);
  CHECK(std::abs(hat.coefficients[3]) <= 1e-12);
}

TEST_CASE("fourier round trip") {
  Rng rng(9);
  for (const auto& orders : std::vector<std::vector<std::uint32_t>>{{30}, {7, 11}, {2, 2, 9}}) {
    GroupSpec g(orders);
    std::vector<double> vals(g.size());
    for (auto& v : vals) v = rng.unit() - 0.5;
    auto f = DensityMap::from_reals(g, vals);
    auto back = inverse_fourier(fourier(f));
    for (Index x = 0; x < g.size(); ++x) CHECK(std::abs(back.real_at(x) - f.real_at(x)) <= 1e-9);
  }
}

TEST_CASE("parseval identity on random densities") {
  Rng rng(100);
  for (const auto& orders : std::vector<std::vector<std::uint32_t>>{{4096}, {64, 64}, {3000}, {17, 19}}) {
    GroupSpec g(orders);
    for (int trial = 0; trial < 125; ++trial) {
      std::vector<double> vals(g.size());
      for (auto& v : vals) v = rng.unit() - 0.5;
      auto hat = fourier(DensityMap::from_reals(g, vals));
      double lhs = 0.0, rhs = 0.0;
      for (Index t = 0; t < g.size(); ++t) lhs += std::norm(hat.coefficients[t]);
      for (double v : vals) rhs += v * v;
      rhs *= (double)g.size();
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("spectral oracle for energy: E(A) |G| = sum |1_A_hat|^4") {
  Rng rng(17);
  std::vector<GroupSpec> groups = {GroupSpec({4096}), GroupSpec({64, 64}), GroupSpec({3000}),
                                   GroupSpec({2, 2, 2, 2, 2, 2, 2, 2})};
  for (const auto& g : groups) {
    for (int trial = 0; trial < 50; ++trial) {
      auto a = random_nonempty(g, 0.02 + 0.2 * rng.unit(), rng);
      auto hat = fourier(DensityMap::indicator(a));
      double sum4 = 0.0;
      for (Index t = 0; t < g.size(); ++t) sum4 += std::norm(hat.coefficients[t]) * std::norm(hat.coefficients[t]);
      double lhs = (double)energy(a) * (double)g.size();
      CHECK(std::abs(lhs - sum4) <= 1e-6 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("large spectrum membership in Z/4 boundary case") {
  GroupSpec z4({4});
  auto a = GSet::parse(z4, "{0,1}");
  // t=1: 2 (1 - |1 - i|^2 / 4) = 1 <= 1, a tie resolved toward inclusion
  auto spec = large_spectrum(a, 1.0);
  CHECK(spec.contains(0));
  CHECK(spec.contains(1));
  CHECK(spec.contains(3));
  CHECK_FALSE(spec.contains(2));
}

TEST_CASE("large spectrum closed form matches the definitional norm") {
  Rng rng(23);
  GroupSpec g({60});
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_nonempty(g, 0.3, rng);
    auto hat = fourier(DensityMap::indicator(a));
    double asq = (double)a.size() * (double)a.size();
    for (Index t = 0; t < g.size(); ++t) {
      double closed = 2.0 * (1.0 - std::norm(hat.coefficients[t]) / asq);
      CHECK(std::abs(closed - lspec_norm_sq_definitional(a, t)) <= 1e-9);
    }
  }
}

TEST_CASE("large spectrum contains the annihilator of a subgroup") {
  GroupSpec g({12});
  auto h = GSet::parse(g, "{0,3,6,9}");
  for (double eps : {0.1, 0.5, 1.0}) {
    auto spec = large_spectrum(h, eps);
    CHECK(spec.contains(0));
    for (Index t = 0; t < 12; ++t) {
      bool annihilates = true;
      h.for_each([&](Index x) {
        if (g.char_phase(t, x) != 0) annihilates = false;
      });
      if (annihilates) CHECK(spec.contains(t));
    }
  }
}

TEST_CASE("large spectrum is negation-closed and contains the trivial character") {
  Rng rng(31);
  GroupSpec g({101});
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_nonempty(g, 0.2, rng);
    auto spec = large_spectrum(a, 0.2 + 0.7 * rng.unit());
    CHECK(spec.contains(0));
    CHECK(negate_set(spec) == spec);
  }
}

TEST_CASE("bohr sets: vacuous, tight, and the Z/12 example") {
  GroupSpec z12({12});
  CHECK(bohr_set(BohrSpec{CharSet(z12), 0.5}) == GSet::full_set(z12));

  // full dual with delta below the smallest nonzero distance pins {0}
  CHECK(bohr_set(BohrSpec{GSet::full_set(z12), 0.01}) == GSet::singleton(z12, 0));

  CharSet one(z12);
  one.add(1);
  auto b = bohr_set(BohrSpec{one, 0.52});
  CHECK(b == GSet::parse(z12, "{-1,0,1}"));
  CHECK_THROWS_AS(bohr_set(BohrSpec{one, 0.0}), Error);
  CHECK_THROWS_AS(bohr_set(BohrSpec{one, 2.5}), Error);
}

TEST_CASE("bohr monotonicity and triangle inequality") {
  Rng rng(7);
  GroupSpec g({60});
  for (int trial = 0; trial < 20; ++trial) {
    CharSet g1(g), g2(g);
    for (int i = 0; i < 3; ++i) g1.add(rng.below(60));
    g2 = g1;
    g2.add(rng.below(60));
    double d1 = 0.2 + rng.unit() * 0.5;
    double d2 = 0.2 + rng.unit() * 0.5;
    // larger character set -> smaller Bohr set
    CHECK(bohr_set(BohrSpec{g2, d1}).is_subset_of(bohr_set(BohrSpec{g1, d1})));
    // larger delta -> larger Bohr set
    CHECK(bohr_set(BohrSpec{g1, std::min(d1, d2)}).is_subset_of(bohr_set(BohrSpec{g1, std::max(d1, d2)})));
    // Bohr(G,d1) + Bohr(G,d2) inside Bohr(G, d1+d2)
    auto b1 = bohr_set(BohrSpec{g1, d1});
    auto b2 = bohr_set(BohrSpec{g1, d2});
    auto sum = sumset(b1, b2);
    auto big = bohr_set(BohrSpec{g1, std::min(2.0, d1 + d2)});
    CHECK(sum.is_subset_of(big));
  }
}

TEST_CASE("prop containment: subgroup and the Z/101 interval") {
  GroupSpec z8({8});
  auto h = GSet::parse(z8, "{0,4}");
  auto r = check_prop_containment(h, 2, 0.4);
  CHECK(r.passed);
  CHECK(r.growth_ratio == Rat(1));

  GroupSpec z101({101});
  auto x = GSet::parse(z101, "{0,1,2}");
  auto r2 = check_prop_containment(x, 2, 0.5);
  CHECK(r2.passed);
  CHECK(r2.growth_ratio == Rat(5, 3));
}

TEST_CASE("prop containment holds on random instances (theorem check)") {
  Rng rng(7);
  GroupSpec g({101});
  for (int trial = 0; trial < 20; ++trial) {
    GSet x(g);
    while (x.size() < 10) x.add(rng.below(101));
    for (double eps : {0.3, 0.5}) {
      auto r = check_prop_containment(x, 2, eps);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("bohr size measurement") {
  GroupSpec z8({8});
  auto h = GSet::parse(z8, "{0,2,4,6}");
  auto rep = measure_bohr_size(h, 0.5);
  CHECK(rep.ratio >= 1.0);  // the Bohr set contains H
  CHECK(rep.growth_order == 0.0);

  GroupSpec z1009({1009});
  auto x = GSet::parse(z1009, "{-5..5}");
  auto rep2 = measure_bohr_size(x, 0.5);
  CHECK(rep2.bohr_size >= 1);
  CHECK(rep2.growth_order <= 1.0 + 1e-9);

  auto rep3 = measure_bohr_size(GSet::singleton(z1009, 0), 0.5);
  CHECK(rep3.ratio == (double)rep3.bohr_size);
}

TEST_CASE("spectrum csv export") {
  GroupSpec g({2, 2});
  auto hat = fourier(DensityMap::point_mass(g, 0));
  auto csv = hat.to_csv();
  CHECK(csv.find("t0,t1,re,im,mag_sq\n") == 0);
  CHECK(csv.find("0,0,1,") != std::string::npos);
}
