#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "expsum/density.hpp"
#include "test_util.hpp"

using namespace expsum;
using namespace testutil;

TEST_CASE("strip densities for the two-line example") {
  const ExpSum f = two_lines();
  const auto dec = decompose(f);

  // strip between dominants 1 and 2: zeros log 3 + 2 pi i k, ten per 20 pi
  const std::vector<double> rs{20.0 * kPi};
  const auto rep = strip_density(f, dec, 1, rs);
  REQUIRE(rep.samples.size() == 1);
  CHECK(rep.samples[0].count == 10);
  CHECK(rep.slope_expected == doctest::Approx(1.0 / kTwoPi));
  CHECK(std::abs(rep.samples[0].deviation) < 1e-9);

  CHECK_THROWS_AS(strip_density(f, dec, 5, rs), Error);
  const std::vector<double> bad{3.0, 2.0};
  CHECK_THROWS_AS(strip_density(f, dec, 0, bad), Error);
}

TEST_CASE("strip density matches the quadratic lattice") {
  const ExpSum f = three_term();
  const auto dec = decompose(f);
  // two zeros per vertical period 2 pi, slope 1/pi
  std::vector<double> rs;
  for (int m = 1; m <= 4; ++m) rs.push_back(kTwoPi * m);
  const auto rep = strip_density(f, dec, 0, rs);
  CHECK(rep.slope_expected == doctest::Approx(1.0 / kPi));
  for (int m = 1; m <= 4; ++m) {
    CHECK(rep.samples[static_cast<std::size_t>(m - 1)].count == 2 * m);
    CHECK(std::abs(rep.samples[static_cast<std::size_t>(m - 1)].deviation) < 1e-9);
  }

  // a window below the first zero height is empty
  const std::vector<double> tiny{1e-3};
  CHECK(strip_density(f, dec, 0, tiny).samples[0].count == 0);
}

TEST_CASE("langer check on fixed examples") {
  const ExpSum f2 = two_lines();
  const auto dec2 = decompose(f2);
  const std::vector<double> rs{kTwoPi};
  const auto res = langer_check(f2, dec2, rs);
  REQUIRE(res.samples.size() == 1);
  CHECK(res.samples[0].count == 2);
  CHECK(std::abs(res.samples[0].deviation) < 1e-9);
  CHECK(res.pass);

  // 1 + e^z: zeros i pi + 2 pi i k, deviation stays within n = 1
  const ExpSum f1 = make_sum({{{1, 0}, 0.0}, {{1, 0}, 1.0}});
  const auto dec1 = decompose(f1);
  std::vector<double> grid;
  for (int i = 1; i <= 24; ++i) grid.push_back(0.9 * i * i);
  const auto res1 = langer_check(f1, dec1, grid);
  CHECK(res1.pass);
  CHECK(res1.max_deviation <= 1.0 + 1e-6);
}

TEST_CASE("langer bound over random sums") {
  std::mt19937_64 rng(321);
  std::vector<double> rs;
  for (int i = 0; i < 10; ++i) rs.push_back(10.0 * std::pow(20.0, i / 9.0));
  for (int trial = 0; trial < 12; ++trial) {
    const ExpSum f = random_normalized_sum(rng, 5);
    const auto dec = decompose(f);
    const auto res = langer_check(f, dec, rs);
    CHECK(res.max_deviation <= f.order() + 1e-6);
    CHECK(res.pass);
  }
}

TEST_CASE("per-strip counts add up to the spanning count") {
  std::mt19937_64 rng(322);
  std::vector<double> rs{7.0, 19.0, 40.0};
  for (int trial = 0; trial < 8; ++trial) {
    const ExpSum f = random_normalized_sum(rng, 4);
    const auto dec = decompose(f);
    const auto whole = langer_check(f, dec, rs);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      long sum = 0;
      for (int s = 0; s < static_cast<int>(dec.strips.size()); ++s)
        sum += strip_density(f, dec, s, rs).samples[i].count;
      CHECK(sum == whole.samples[i].count);
    }
  }
}

TEST_CASE("deviation verdict is anchor independent") {
  const ExpSum f = two_lines();
  const auto dec = decompose(f);
  std::vector<double> rs;
  for (int i = 0; i < 8; ++i) rs.push_back(5.0 + 11.0 * i);
  double ref = -1.0;
  for (double anchor : {0.0, 0.37, kPi}) {
    const auto rep = strip_density(f, dec, 0, rs, anchor);
    CHECK(rep.max_abs_deviation <= 1.0 + 1e-9);
    if (ref < 0.0) ref = rep.max_abs_deviation;
    CHECK(std::abs(rep.max_abs_deviation - ref) <= 1.0);
  }
}

TEST_CASE("unit band counts follow the lattice spacing") {
  const ExpSum f = two_lines();
  const auto dec = decompose(f);

  // bands of height 2 pi catch exactly one zero of the log 3 line
  std::vector<double> rs{5.0, 30.0, 100.0};
  for (const auto& [r, c] : unit_band_counts(f, dec, 1, rs, kTwoPi)) {
    CHECK(c == 1);
    (void)r;
  }
  // mirrored lower-half version
  for (const auto& [r, c] : unit_band_counts(f, dec, 1, rs, kTwoPi, true)) {
    CHECK(c == 1);
    (void)r;
  }

  // unit bands averaged over a long stretch approach 1/(2 pi)
  std::vector<double> sweep;
  for (int i = 0; i < 157; ++i) sweep.push_back(100.0 + 4.0 * i);
  long total = 0;
  for (const auto& [r, c] : unit_band_counts(f, dec, 1, sweep, 1.0)) total += c;
  const double mean = static_cast<double>(total) / static_cast<double>(sweep.size());
  CHECK(mean == doctest::Approx(1.0 / kTwoPi).epsilon(0.15));

  // a band tucked between consecutive zeros is empty
  const std::vector<double> gap{0.5};
  CHECK(unit_band_counts(f, dec, 1, gap, 1.0)[0].second == 0);
}

TEST_CASE("real part closure separates dependent and independent frequencies") {
  const ExpSum f2 = two_lines();
  const auto dec2 = decompose(f2);
  const auto rp2 = real_part_closure(f2, dec2, 60.0, 16);
  CHECK(rp2.zero_count > 10);
  CHECK(rp2.re_min == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(rp2.re_max == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(rp2.max_gap == doctest::Approx(std::log(1.5)).epsilon(1e-9));

  const ExpSum f = irrational_pair();
  const auto dec = decompose(f);
  const auto small = real_part_closure(f, dec, 60.0, 16);
  const auto large = real_part_closure(f, dec, 120.0, 16);
  CHECK(large.zero_count > small.zero_count);
  CHECK(large.max_gap < small.max_gap);  // denser projections at taller horizons

  // 1 + e^z + e^{2z} has no zeros below |Im| = 2 pi / 3
  const ExpSum f1 = three_term();
  CHECK(real_part_closure(f1, decompose(f1), 1e-3, 4).zero_count == 0);
}

TEST_CASE("disc experiment on the two-line example") {
  const ExpSum f = two_lines();
  const auto dec = decompose(f);
  const auto d = disc_experiment(f, dec, 300.0, 33, 50.0);

  CHECK(d.zero_count > 150);
  CHECK(d.analytic_tail_bound > 0.0);
  CHECK(d.measure_estimate_epsilon > 0.0);
  CHECK(d.lines_tested == 33);

  // off-lattice lines miss the shrinking tail discs
  for (const auto& line : d.lines) {
    const double dist = std::min(std::abs(line.abscissa - std::log(2.0)),
                                 std::abs(line.abscissa - std::log(3.0)));
    if (dist > 0.01) CHECK(line.discs_met_beyond_cutoff <= 5);
  }

  // Cauchy property: widening the horizon adds less than the tail bound
  const auto narrow = disc_experiment(f, dec, 30.0, 3, 50.0);
  CHECK(d.radii_partial_sum >= narrow.radii_partial_sum);
  CHECK(d.radii_partial_sum - narrow.radii_partial_sum <= disc_tail_bound(f, 30.0));

  // epsilon tail shrinks as the cutoff grows
  const auto far_cut = disc_experiment(f, dec, 300.0, 3, 200.0);
  CHECK(far_cut.measure_estimate_epsilon < d.measure_estimate_epsilon);
}
