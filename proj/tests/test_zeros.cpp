#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "expsum/strip.hpp"
#include "expsum/winding.hpp"
#include "expsum/zeros.hpp"
#include "test_util.hpp"

using namespace expsum;
using namespace testutil;

TEST_CASE("find_zeros on the two-line example") {
  const ExpSum f = two_lines();
  const auto dec = decompose(f);
  REQUIRE(dec.strips.size() == 2);

  // left strip holds the zeros on Re = log 2
  const auto left = find_zeros(f, dec.strips[0], -0.1, 4.0 * kPi + 0.1);
  REQUIRE(left.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const auto& rec = left[static_cast<std::size_t>(i)];
    CHECK(std::abs(rec.z - Complex(std::log(2.0), i * kTwoPi)) < 1e-10);
    CHECK(rec.multiplicity == 1);
    CHECK(rec.strip_index == 0);
  }

  const auto right = find_zeros(f, dec.strips[1], -0.1, 4.0 * kPi + 0.1);
  REQUIRE(right.size() == 3);
  for (const auto& rec : right)
    CHECK(rec.z.real() == doctest::Approx(std::log(3.0)).epsilon(1e-11));

  CHECK_THROWS_AS(find_zeros(f, dec.strips[0], 1.0, 0.0), Error);
}

TEST_CASE("double zero reported once with multiplicity two") {
  const ExpSum f = double_root();
  const auto dec = decompose(f);
  REQUIRE(dec.strips.size() == 1);
  const auto recs = find_zeros(f, dec.strips[0], -1.0, 1.0);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].multiplicity == 2);
  CHECK(recs[0].z.real() == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(std::abs(recs[0].z.imag()) < 1e-9);
  CHECK(recs[0].method == ZeroMethod::box_limit);
}

TEST_CASE("window inside a zero-free region is empty") {
  const ExpSum f = two_lines();
  // fake strip covering part of the (log 2, log 3) region
  const CriticalStrip fake{std::log(2.0) + 0.1, std::log(3.0) - 0.1, 0, 1, 0};
  CHECK(find_zeros(f, fake, -5.0, 5.0).empty());
}

TEST_CASE("commensurable basis detection") {
  const auto b1 = commensurable_basis(three_term());
  REQUIRE(b1.has_value());
  CHECK(b1->delta == doctest::Approx(1.0));
  CHECK(b1->exponents == std::vector<long long>{0, 1, 2});

  // frequencies 1.5 and 2.5 share delta = 0.5
  const ExpSum f = make_sum({{{1, 0}, 0.0}, {{2, 0}, 1.5}, {{1, 0}, 2.5}});
  const auto b2 = commensurable_basis(f);
  REQUIRE(b2.has_value());
  CHECK(b2->delta == doctest::Approx(0.5));
  CHECK(b2->exponents == std::vector<long long>{0, 3, 5});

  CHECK_FALSE(commensurable_basis(irrational_pair()).has_value());
  CHECK_THROWS_AS(oracle_zeros_commensurable(irrational_pair(), 0.0, 1.0), Error);
}

TEST_CASE("oracle zero lattices for the worked examples") {
  // roots of 1 + u + u^2 are e^{+-2 pi i/3}
  const auto z1 = oracle_zeros_commensurable(three_term(), 0.0, kTwoPi - 0.05);
  REQUIRE(z1.size() == 2);
  CHECK(std::abs(z1[0].z.real()) < 1e-12);
  CHECK(z1[0].z.imag() == doctest::Approx(kTwoPi / 3.0));
  CHECK(z1[1].z.imag() == doctest::Approx(2.0 * kTwoPi / 3.0));

  const auto z2 = oracle_zeros_commensurable(two_lines(), -0.1, kTwoPi + 0.1);
  REQUIRE(z2.size() == 4);  // log 2 and log 3 at heights 0 and 2 pi
  CHECK(z2[0].z.real() == doctest::Approx(std::log(2.0)));
  CHECK(z2[1].z.real() == doctest::Approx(std::log(3.0)));
}

TEST_CASE("polynomial solver recovers known roots") {
  // (u - 2)(u - 3) = 6 - 5u + u^2
  const Complex coeffs[] = {{6, 0}, {-5, 0}, {1, 0}};
  auto roots = polynomial_roots(coeffs);
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] - Complex(2.0, 0.0)) < 1e-12);
  CHECK(std::abs(roots[1] - Complex(3.0, 0.0)) < 1e-12);
}

TEST_CASE("finder and oracle agree over random commensurable sums") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const ExpSum f = trial % 5 == 0 ? double_root_sum(rng, trial % 10 == 0 ? 1 : 0)
                                    : random_commensurable_sum(rng, 10);
    double y0 = -2.0 - 2.0 * unit(rng);
    const double height = 4.0 * kPi;
    const auto clear_of_edges = [&](double y) {
      for (const auto& rec : oracle_zeros_commensurable(f, y - 1e-3, y + height + 1e-3))
        if (std::abs(rec.z.imag() - y) < 1e-3 ||
            std::abs(rec.z.imag() - (y + height)) < 1e-3)
          return false;
      return true;
    };
    int shift_guard = 0;
    while (!clear_of_edges(y0) && shift_guard++ < 200) y0 += 0.01;

    auto expected = oracle_zeros_commensurable(f, y0, y0 + height);
    const auto dec = decompose(f);
    auto got = find_zeros(f, dec, y0, y0 + height);

    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(std::abs(got[i].z - expected[i].z) <= 1e-8);
      CHECK(got[i].multiplicity == expected[i].multiplicity);
    }
  }
}

TEST_CASE("every record satisfies the residual contract") {
  std::mt19937_64 rng(124);
  for (int trial = 0; trial < 20; ++trial) {
    const ExpSum f = random_normalized_sum(rng, 4);
    const auto dec = decompose(f);
    for (const auto& rec : find_zeros(f, dec, -8.0, 8.0)) {
      CHECK(rec.residual_logmod <=
            std::log(1e-9) + dominant_exponent(f, rec.z.real()) + 1e-9);
      // strip containment
      const auto& s = dec.strips[static_cast<std::size_t>(rec.strip_index)];
      CHECK(rec.z.real() >= s.x_lo - 1e-9);
      CHECK(rec.z.real() <= s.x_hi + 1e-9);
    }
  }
}

TEST_CASE("multiplicities add up to the window count") {
  std::mt19937_64 rng(125);
  for (int trial = 0; trial < 12; ++trial) {
    const ExpSum f = random_normalized_sum(rng, 4);
    const auto dec = decompose(f);
    const double y0 = -7.3, y1 = 6.1;
    long total = 0;
    for (const auto& rec : find_zeros(f, dec, y0, y1)) total += rec.multiplicity;
    const double pad_l = strip_search_pad(dec.strips.front());
    const double pad_r = strip_search_pad(dec.strips.back());
    const auto whole = count_zeros(f, {dec.strips.front().x_lo - pad_l,
                                       dec.strips.back().x_hi + pad_r, y0, y1});
    CHECK(total == whole.count);
  }
}

TEST_CASE("real coefficients give a conjugate-symmetric zero set") {
  std::mt19937_64 rng(126);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    // real coefficients only
    std::vector<std::pair<Complex, double>> spec{{{1.0, 0.0}, 0.0}};
    const int n = 2 + static_cast<int>(unit(rng) * 3);
    double w = 0.0;
    for (int j = 0; j < n; ++j) {
      w += 0.3 + unit(rng);
      spec.push_back({{(unit(rng) < 0.5 ? -1.0 : 1.0) * (0.3 + 4.0 * unit(rng)), 0.0}, w});
    }
    const ExpSum f = make_sum(spec);
    const auto dec = decompose(f);
    const auto recs = find_zeros(f, dec, -9.0, 9.0);
    for (const auto& rec : recs) {
      const Complex conj_z = std::conj(rec.z);
      bool found = false;
      for (const auto& other : recs)
        found = found || std::abs(other.z - conj_z) <= 1e-8;
      CHECK(found);
    }
  }
}
