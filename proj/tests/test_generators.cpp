#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mfhxa/error.hpp"
#include "mfhxa/generators.hpp"
#include "mfhxa/random.hpp"
#include "oracles.hpp"

using namespace mfhxa;

namespace {

std::vector<double> to_vec(const TimeSeries& s) { return {s.values().begin(), s.values().end()}; }

}  // namespace

TEST_CASE("arfima_weights") {
  const auto a = arfima_weights(0.3, 60);
  CHECK(a[0] == 0.3);
  CHECK(a[1] == doctest::Approx(0.105).epsilon(1e-15));
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(a[i] > 0.0);
    CHECK(a[i] < a[i - 1]);
  }
  for (int i = 1; i <= 50; ++i) {
    for (double d : {0.05, 0.1, 0.3, 0.45}) {
      const auto w = arfima_weights(d, 50);
      const double direct = oracle::arfima_weight(d, i);
      CHECK(std::fabs(w[i - 1] - direct) <= 1e-10 * direct);
    }
  }
  // Degenerate no-memory limit.
  const auto tiny = arfima_weights(1e-12, 100);
  for (double w : tiny) CHECK(w <= 1e-12);

  CHECK_THROWS_AS(arfima_weights(0.0, 10), ParameterError);
  CHECK_THROWS_AS(arfima_weights(0.5, 10), ParameterError);
  CHECK_THROWS_AS(arfima_weights(-0.1, 10), ParameterError);
}

TEST_CASE("generate_mbm") {
  CHECK(to_vec(generate_mbm({0.3, 1})) == std::vector<double>{0.3, 0.7});
  const auto k2 = to_vec(generate_mbm({0.3, 2}));
  const std::vector<double> expect{0.09, 0.21, 0.21, 0.49};
  for (int i = 0; i < 4; ++i) CHECK(k2[i] == doctest::Approx(expect[i]).epsilon(1e-14));

  for (int k : {1, 5, 12}) {
    const TimeSeries mu = generate_mbm({0.5, k});
    for (double v : mu.values()) CHECK(v == std::ldexp(1.0, -k));
  }

  for (int k : {4, 10, 20}) {
    for (double m0 : {0.3, 0.4, 0.77}) {
      const auto mu = to_vec(generate_mbm({m0, k}));
      CHECK(mu.size() == (std::size_t{1} << k));
      long double sum = 0.0L;
      for (double v : mu) {
        CHECK(v > 0.0);
        sum += v;
      }
      CHECK(std::fabs(static_cast<double>(sum) - 1.0) <= 1e-12);
      // First half of stage k equals m0 times stage k-1.
      if (k > 1) {
        const auto prev = to_vec(generate_mbm({m0, k - 1}));
        for (std::size_t j = 0; j < prev.size(); j += 7) {
          CHECK(std::fabs(mu[j] - m0 * prev[j]) <= 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(generate_mbm({0.3, 0}), ParameterError);
  CHECK_THROWS_AS(generate_mbm({0.3, 31}), ParameterError);
  CHECK_THROWS_AS(generate_mbm({1.0, 4}), ParameterError);
}

TEST_CASE("NormalStream is reproducible and streams differ") {
  NormalStream a(42, 0), b(42, 0), c(42, 1);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.next();
    CHECK(va == b.next());
    any_diff |= va != c.next();
  }
  CHECK(any_diff);
}

TEST_CASE("correlated_noise_pair") {
  SUBCASE("rho = 1 and rho = -1 are degenerate") {
    const auto [e1, n1] = correlated_noise_pair({1.0, 500, 9});
    CHECK(to_vec(e1) == to_vec(n1));
    const auto [e2, n2] = correlated_noise_pair({-1.0, 500, 9});
    for (std::size_t i = 0; i < 500; ++i) CHECK(n2[i] == -e2[i]);
  }
  SUBCASE("sample correlation and marginals") {
    const std::size_t n = 100000;
    const auto [e, v] = correlated_noise_pair({0.5, n, 2024});
    const double nn = static_cast<double>(n);
    for (const auto* s : {&e, &v}) {
      double m = 0.0, ss = 0.0;
      for (double x : s->values()) m += x;
      m /= nn;
      for (double x : s->values()) ss += (x - m) * (x - m);
      const double var = ss / (nn - 1.0);
      CHECK(std::fabs(m) < 4.0 / std::sqrt(nn));
      CHECK(std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / nn));
    }
    double me = 0, mv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      me += e[i];
      mv += v[i];
    }
    me /= nn;
    mv /= nn;
    double sev = 0, see = 0, svv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sev += (e[i] - me) * (v[i] - mv);
      see += (e[i] - me) * (e[i] - me);
      svv += (v[i] - mv) * (v[i] - mv);
    }
    CHECK(std::fabs(sev / std::sqrt(see * svv) - 0.5) < 0.01);
  }
  SUBCASE("reproducible") {
    const auto p1 = correlated_noise_pair({0.3, 100, 5});
    const auto p2 = correlated_noise_pair({0.3, 100, 5});
    CHECK(to_vec(p1.second) == to_vec(p2.second));
  }
  CHECK_THROWS_AS(correlated_noise_pair({1.01, 10, 1}), ParameterError);
}

TEST_CASE("generate_arfima") {
  const auto noise = standard_normal_noise(700, 3);
  SUBCASE("zero weights reproduce the noise after burn-in") {
    const std::vector<double> zeros(50, 0.0);
    const auto x = generate_arfima(zeros, 500, 200, noise);
    for (std::size_t t = 0; t < 500; ++t) CHECK(x[t] == noise[t + 200]);
  }
  SUBCASE("matches a direct recursion") {
    const ArfimaConfig c{0.3, 300, 40, 100, 1};
    const auto x = generate_arfima(c, noise);
    std::vector<double> ref(400, 0.0);
    for (int t = 0; t < 400; ++t) {
      double s = noise[t];
      for (int i = 1; i <= std::min(t, 40); ++i) s += oracle::arfima_weight(0.3, i) * ref[t - i];
      ref[t] = s;
    }
    for (std::size_t t = 0; t < 300; ++t) CHECK(x[t] == doctest::Approx(ref[t + 100]).epsilon(1e-10));
  }
  SUBCASE("bit reproducible") {
    const ArfimaConfig c{0.2, 400, 400, 50, 1};
    CHECK(to_vec(generate_arfima(c, noise)) == to_vec(generate_arfima(c, noise)));
  }
  CHECK_THROWS_AS(generate_arfima(ArfimaConfig{0.3, 600, 100, 200, 1}, noise),
                  InsufficientDataError);
  CHECK_THROWS_AS(generate_arfima(ArfimaConfig{0.6, 100, 100, 0, 1}, noise), ParameterError);
}

TEST_CASE("generate_two_component") {
  TwoComponentConfig c;
  c.length = 600;
  c.burn_in = 100;
  c.truncation = 300;
  c.seed = 17;
  SUBCASE("w = 1 decouples into two ARFIMA processes") {
    c.d1 = 0.3;
    c.d2 = 0.1;
    c.w = 1.0;
    const auto [eps, nu] = correlated_noise_pair({0.0, 700, 17});
    const auto [x, y] = generate_two_component(c, eps, nu);
    const auto ax = generate_arfima(ArfimaConfig{0.3, 600, 300, 100, 17}, eps);
    const auto ay = generate_arfima(ArfimaConfig{0.1, 600, 300, 100, 17}, nu);
    CHECK(to_vec(x) == to_vec(ax));
    CHECK(to_vec(y) == to_vec(ay));
    // The seeded overload draws the same innovations.
    const auto [sx, sy] = generate_two_component(c);
    CHECK(to_vec(sx) == to_vec(x));
    CHECK(to_vec(sy) == to_vec(y));
  }
  SUBCASE("symmetric coupling with shared innovations gives X = Y") {
    c.d1 = c.d2 = 0.25;
    c.w = 0.5;
    const auto noise = standard_normal_noise(700, 4);
    const auto [x, y] = generate_two_component(c, noise, noise);
    CHECK(to_vec(x) == to_vec(y));
  }
  SUBCASE("parameter checks") {
    c.w = 0.4;
    CHECK_THROWS_AS(generate_two_component(c), ParameterError);
    c.w = 0.75;
    c.d2 = 0.5;
    CHECK_THROWS_AS(generate_two_component(c), ParameterError);
  }
}
