#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aal/fft.hpp"
#include "aal/rng.hpp"
#include "aal/setops.hpp"

using namespace aal;

namespace {

GSet random_subset(const GroupSpec& g, double density, Rng& rng) {
  GSet a(g);
  for (Index x = 0; x < g.size(); ++x)
    if (rng.unit() < density) a.add(x);
  return a;
}

GSet random_subset_of_size(const GroupSpec& g, std::uint64_t want, Rng& rng) {
  GSet a(g);
  while (a.size() < want) a.add(rng.below(g.size()));
  return a;
}

}  // namespace

TEST_CASE("small sumsets") {
  GroupSpec z5({5});
  auto a = GSet::parse(z5, "{0,1}");
  CHECK(sumset(a, a).str() == "{0,1,2}");
  CHECK(difference_set(a, a).str() == "{0,1,4}");
  auto zero = GSet::singleton(z5, 0);
  CHECK(sumset(a, zero) == a);
  CHECK(sumset(GSet(z5), a).empty());
  CHECK(negate_set(a).str() == "{0,4}");
  CHECK(translate_set(a, 3).str() == "{3,4}");
  GroupSpec z7({7});
  CHECK_THROWS_AS(sumset(a, GSet::singleton(z7, 0)), Error);
}

TEST_CASE("iterated sumsets and growth") {
  GroupSpec z100({100});
  auto x = GSet::parse(z100, "{-1,0,1}");
  CHECK(iterated_sumset(x, 3).size() == 7);
  CHECK(iterated_sumset(x, 1) == x);

  GroupSpec z8({8});
  auto h = GSet::parse(z8, "{0,2,4,6}");
  for (std::uint64_t n = 1; n <= 5; ++n) CHECK(iterated_sumset(h, n) == h);

  GroupSpec z1000({1000});
  auto y = GSet::parse(z1000, "{0,1,5}");
  auto y2 = iterated_sumset(y, 2);
  CHECK(y2.size() == 6);
  CHECK(y2 == GSet::parse(z1000, "{0,1,2,5,6,10}"));

  auto p = growth_profile(x, 5);
  CHECK(p.base_size == 3);
  CHECK(p.sizes == std::vector<std::uint64_t>{3, 5, 7, 9, 11});
  CHECK_THROWS_AS(growth_profile(GSet(z100), 3), Error);
}

TEST_CASE("sumset matches the serial reference on random instances") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    GroupSpec g(trial % 2 ? std::vector<std::uint32_t>{6, 5} : std::vector<std::uint32_t>{37});
    auto a = random_subset(g, 0.3, rng);
    auto b = random_subset(g, 0.3, rng);
    CHECK(sumset(a, b) == reference::sumset(a, b));
    if (!a.empty() && !b.empty()) {
      auto s = sumset(a, b);
      CHECK(s.size() >= std::max(a.size(), b.size()));
      CHECK(s.size() <= a.size() * b.size());
    }
  }
}

TEST_CASE("energy basics") {
  GroupSpec z8({8});
  // E(coset) = |coset|^3
  CHECK(energy(GSet::parse(z8, "{0,2,4,6}")) == 64);
  CHECK(energy(GSet::full_set(z8)) == 512);
  CHECK(energy(GSet(z8)) == 0);
  GroupSpec z100({100});
  CHECK(energy(GSet::parse(z100, "{0,1,2}")) == 19);
  CHECK(energy(GSet::parse(z100, "{0,1,2}")) == reference::energy_triple_loop(GSet::parse(z100, "{0,1,2}")));
}

TEST_CASE("energy equals the triple loop, exhaustively on Z/8") {
  GroupSpec z8({8});
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    GSet a(z8);
    for (std::uint64_t i = 0; i < 8; ++i)
      if ((mask >> i) & 1) a.add(i);
    CHECK(energy(a) == reference::energy_triple_loop(a));
  }
}

TEST_CASE("energy equals the triple loop on random sets in groups up to 4096") {
  Rng rng(2024);
  std::vector<GroupSpec> groups = {GroupSpec({4096}), GroupSpec({64, 64}), GroupSpec({2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}),
                                   GroupSpec({3000}), GroupSpec({17, 19})};
  int trials_per_group = 100;
  for (const auto& g : groups) {
    for (int t = 0; t < trials_per_group; ++t) {
      auto a = random_subset_of_size(g, 8 + rng.below(25), rng);
      CHECK(energy(a) == reference::energy_triple_loop(a));
    }
  }
}

TEST_CASE("doubling constants") {
  GroupSpec z8({8});
  CHECK(doubling(GSet::parse(z8, "{0,2,4,6}")) == Rat(1));
  GroupSpec z100({100});
  CHECK(doubling(GSet::parse(z100, "{0,1,2}")) == Rat(5, 3));
  GroupSpec z1000({1000});
  CHECK(doubling(GSet::parse(z1000, "{0,1,5}")) == Rat(2));
  CHECK_THROWS_AS(doubling(GSet(z8)), Error);
}

TEST_CASE("convolution identities") {
  GroupSpec z5({5});
  auto d0 = DensityMap::point_mass(z5, 0);
  auto dd = convolve(d0, d0);
  CHECK(dd.count_at(0) == 1);
  CHECK(dd.count_sum() == 1);

  auto f = DensityMap::indicator(GSet::parse(z5, "{0,1}"));
  auto c = convolve(f, f);
  CHECK(c.count_at(0) == 1);
  CHECK(c.count_at(1) == 2);
  CHECK(c.count_at(2) == 1);
  CHECK(c.count_at(3) == 0);
  CHECK(c.count_at(4) == 0);

  GroupSpec z8({8});
  auto h = GSet::parse(z8, "{0,2,4,6}");
  auto ch = convolve(DensityMap::indicator(h), DensityMap::indicator(h));
  for (Index x = 0; x < 8; ++x) CHECK(ch.count_at(x) == (h.contains(x) ? 4 : 0));
}

TEST_CASE("convolution sum rule and reference agreement") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    GroupSpec g(trial % 2 ? std::vector<std::uint32_t>{5, 9} : std::vector<std::uint32_t>{53});
    auto a = random_subset(g, 0.4, rng);
    auto b = random_subset(g, 0.4, rng);
    auto fa = DensityMap::indicator(a);
    auto fb = DensityMap::indicator(b);
    auto c = convolve(fa, fb);
    auto ref = reference::convolve_counting(fa, fb);
    for (Index x = 0; x < g.size(); ++x) CHECK(c.count_at(x) == ref.count_at(x));
    CHECK(c.count_sum() == fa.count_sum() * fb.count_sum());
  }
}

TEST_CASE("fft path of counting convolution is exact (beyond the naive cutoff)") {
  Rng rng(77);
  GroupSpec g({8192});
  auto a = random_subset(g, 0.2, rng);
  auto b = random_subset(g, 0.1, rng);
  auto c = convolve(DensityMap::indicator(a), DensityMap::indicator(b));
  auto ref = reference::convolve_counting(DensityMap::indicator(a), DensityMap::indicator(b));
  for (Index x = 0; x < g.size(); ++x) REQUIRE(c.count_at(x) == ref.count_at(x));

  GroupSpec podd({5000});
  auto ao = random_subset(podd, 0.15, rng);
  auto co = convolve(DensityMap::indicator(ao), DensityMap::indicator(ao));
  auto refo = reference::convolve_counting(DensityMap::indicator(ao), DensityMap::indicator(ao));
  for (Index x = 0; x < podd.size(); ++x) REQUIRE(co.count_at(x) == refo.count_at(x));
}

TEST_CASE("real-mode convolution of mu sums to one") {
  GroupSpec g({300});
  auto a = GSet::parse(g, "{0..49}");
  auto mu = DensityMap::normalized(a);
  auto c = convolve(mu, mu);
  CHECK(c.real_sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetry sets") {
  GroupSpec z8({8});
  auto h = GSet::parse(z8, "{0,2,4,6}");
  CHECK(symmetry_set(h, Rat(1)) == h);
  CHECK(symmetry_set(h, Rat(1, 100)) == h);

  GroupSpec z100({100});
  auto a = GSet::parse(z100, "{0,1,2}");
  CHECK(symmetry_set(a, Rat(2, 3)) == GSet::parse(z100, "{-1,0,1}"));
  CHECK(symmetry_set(a, Rat(1)).contains(0));
  CHECK_THROWS_AS(symmetry_set(a, Rat(0)), Error);
  CHECK_THROWS_AS(symmetry_set(a, Rat(3, 2)), Error);
  CHECK_THROWS_AS(symmetry_set(GSet(z100), Rat(1, 2)), Error);
}

TEST_CASE("symmetry set properties: symmetric, contains 0, monotone in eta") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    GroupSpec g({101});
    auto a = random_subset(g, 0.25, rng);
    if (a.empty()) continue;
    auto s1 = symmetry_set(a, Rat(1, 4));
    auto s2 = symmetry_set(a, Rat(1, 2));
    auto s3 = symmetry_set(a, Rat(3, 4));
    CHECK(s2.is_subset_of(s1));
    CHECK(s3.is_subset_of(s2));
    for (const auto& s : {s1, s2, s3}) {
      CHECK(s.contains(0));
      CHECK(negate_set(s) == s);
    }
  }
}

TEST_CASE("growth profile is nondecreasing and submultiplicative") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    GroupSpec g({257});
    auto x = random_subset_of_size(g, 2 + rng.below(4), rng);
    auto p = growth_profile(x, 6);
    for (std::size_t i = 1; i < p.sizes.size(); ++i) CHECK(p.sizes[i] >= p.sizes[i - 1]);
    // |(m+n)X| <= |mX| * |nX|
    for (std::size_t m = 1; m + 1 <= 6; ++m)
      for (std::size_t n = 1; m + n <= 6; ++n)
        CHECK(p.sizes[m + n - 1] <= p.sizes[m - 1] * p.sizes[n - 1]);
  }
}

TEST_CASE("fft transform agrees with the definitional dft") {
  Rng rng(3);
  for (const auto& orders : std::vector<std::vector<std::uint32_t>>{{16}, {12}, {97}, {4, 6}, {2, 3, 5}}) {
    GroupSpec g(orders);
    std::vector<std::complex<double>> data(g.size());
    for (auto& z : data) z = {rng.unit() - 0.5, rng.unit() - 0.5};
    auto ref = reference::dft(g, data, false);
    auto fast = data;
    fft::transform(g, fast, false);
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(std::abs(fast[i] - ref[i]) <= 1e-9);
    fft::transform(g, fast, true);
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(std::abs(fast[i] - data[i]) <= 1e-9);
  }
}
