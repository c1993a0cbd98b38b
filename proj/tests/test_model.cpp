#include <doctest.h>

#include "switchset/model.hpp"
#include "switchset/rng.hpp"

using namespace switchset;

TEST_CASE("make_config validates and totals") {
  SetConfig config = make_config(5, 2, 3);
  CHECK(config.total == 10);
  CHECK(make_config(1, 0, 0).total == 1);
  CHECK_THROWS_AS(make_config(0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_config(-1, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_config(1, -2, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_config(1, 2, -3), std::invalid_argument);
}

TEST_CASE("probability_bounds spans n_A/N to (n_A+n_C)/N") {
  Interval bounds = probability_bounds(make_config(5, 2, 3));
  CHECK(bounds.lo == Rational(1, 2));
  CHECK(bounds.hi == Rational(4, 5));

  // no switching elements: a point at n_A/N
  Interval point = probability_bounds(make_config(3, 4, 0));
  CHECK(point.lo == point.hi);
  CHECK(point.lo == Rational(3, 7));

  // all elements switch
  Interval full = probability_bounds(make_config(0, 0, 4));
  CHECK(full.lo == Rational(0));
  CHECK(full.hi == Rational(1));
}

TEST_CASE("probability_bounds width is n_C/N") {
  SeededRng rng(314);
  for (int i = 0; i < 200; ++i) {
    std::int64_t na = rng.uniform_int(0, 50);
    std::int64_t nb = rng.uniform_int(0, 50);
    std::int64_t nc = rng.uniform_int(0, 50);
    if (na + nb + nc == 0) continue;
    SetConfig config = make_config(na, nb, nc);
    CHECK(probability_bounds(config).width() == Rational(nc, config.total));
  }
}

TEST_CASE("epoch_mean evaluates (n_A + s - n_B - (n_C - s)) / N") {
  SetConfig config = make_config(5, 2, 3);
  CHECK(epoch_mean(config, 3) == Rational(3, 5));
  CHECK(epoch_mean(config, 0) == Rational(0));
  CHECK(epoch_mean(make_config(4, 4, 2), 1) == Rational(0));
  CHECK_THROWS_AS(epoch_mean(config, -1), std::out_of_range);
  CHECK_THROWS_AS(epoch_mean(config, 4), std::out_of_range);
}

TEST_CASE("epoch_mean is affine in s with slope 2/N and matches its range ends") {
  SeededRng rng(2718);
  for (int i = 0; i < 100; ++i) {
    std::int64_t na = rng.uniform_int(0, 30);
    std::int64_t nb = rng.uniform_int(0, 30);
    std::int64_t nc = rng.uniform_int(1, 30);
    SetConfig config = make_config(na, nb, nc);
    const Rational slope(2, config.total);
    for (std::int64_t s = 0; s < nc; ++s)
      CHECK(epoch_mean(config, s + 1) - epoch_mean(config, s) == slope);
    CHECK(epoch_mean(config, 0) == Rational(na - nb - nc, config.total));
    CHECK(epoch_mean(config, nc) == Rational(na - nb + nc, config.total));
  }
}

TEST_CASE("outcomes map A to +1 and B to -1") {
  CHECK(Outcome::from_label(OutcomeLabel::A).value == +1);
  CHECK(Outcome::from_label(OutcomeLabel::B).value == -1);
}
