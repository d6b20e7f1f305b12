#include <cmath>
#include <random>

#include "doctest.h"
#include "rsl/thresholds.hpp"
#include "testutil.hpp"

using namespace rsl;
using testutil::estar;

namespace {
// zeta = -1 here: b = d (a_I - a_C), so theta < 1 and the threshold
// recursion degenerates to an arithmetic progression.
const Economy kZetaMinusOne{1.0, 2.0, 0.5, 0.5, 0.5};
}  // namespace

TEST_SUITE("thresholds") {

TEST_CASE("z_n roots at the worked-example thresholds") {
  const Economy e = estar(0.6);
  CHECK(std::abs(z_n(e, 0, 0.5)) <= 1e-12);
  CHECK(std::abs(z_n(e, 1, 2.0 / 3.0)) <= 1e-12);
  CHECK(z_n(e, 0, 0.0) == -1.0);
  CHECK(z_n(e, 7, 0.0) == -1.0);
  CHECK_THROWS_AS(z_n(e, 1, 0.9), validation_error);    // above 1/theta
  CHECK_THROWS_AS(z_n(e, 1, -0.05), validation_error);  // below 0
  CHECK_THROWS_AS(z_n(Economy{1, 1, 1, 0.5, 0.5}, 1, 0.3), validation_error);
  // Defined on both intensity orders away from n = 0.
  CHECK(z_n(Economy{2, 1, 1, 0.5, 0.5}, 1, 0.3) < 0.0);
}

TEST_CASE("closed rational form agrees with direct summation") {
  const Economy e = estar(0.6);
  CHECK(std::abs(z_n(e, 2, 0.7) - z_n_closed(e, 2, 0.7)) <= 1e-12);
  CHECK(z_n_closed(e, 0, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
  // At delta = -1/zeta the closed form switches to its removable-singularity
  // branch; zeta = -1 makes that point delta = 1, inside [0, 1/theta].
  CHECK(std::abs(zeta_of(kZetaMinusOne) - (-1.0)) <= 1e-15);
  const double direct = z_n(kZetaMinusOne, 1, 1.0);
  const double closed = z_n_closed(kZetaMinusOne, 1, 1.0);
  CHECK(direct == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(std::abs(direct - closed) <= 1e-12);
}

TEST_CASE("z_tilde_n shares roots with z_n and has the stated sign anchors") {
  const Economy e = estar(0.6);
  const double mu1 = mu_n(e, 1);
  CHECK(std::abs(z_tilde_n(e, 1, mu1)) <= 1e-12);
  CHECK(z_tilde_n(e, 1, 0.0) == doctest::Approx(-e.a_C * (e.a_I - e.a_C)).epsilon(1e-14));
  CHECK(std::abs(z_tilde_n(e, 1, 0.5)) <= 1e-15);  // -1/zeta = 1/2 is always a root
}

TEST_CASE("mu_n reproduces the worked example") {
  const Economy e = estar(0.6);
  CHECK(std::abs(mu_n(e, 0) - 0.5) <= 1e-14);
  CHECK(std::abs(mu_n(e, 1) - 2.0 / 3.0) <= 1e-10);
  CHECK(std::abs(mu_n(e, 2) - 0.73) <= 5e-3);
  CHECK(std::abs(mu_n(e, 30) - 0.8) <= 1e-3);
}

TEST_CASE("x_n reproduces the worked example and its limit") {
  const Economy e = estar(0.6);
  CHECK(x_n(e, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(x_n(e, 1) - 5.0 / 6.0) <= 1e-12);
  CHECK(std::abs(x_n(e, 2) - 11.0 / 12.0) <= 1e-12);
  CHECK(std::abs(x_n(e, 20) - 1.0) <= 1e-6);  // limit is the golden-rule stock
}

TEST_CASE("x_n closed form cross-check, including zeta = -1") {
  const Economy e = estar(0.6);
  for (int n = 0; n <= 12; ++n) {
    CHECK(std::abs(x_n(e, n) - testutil::x_n_closed(e, n)) <= 1e-12);
  }
  for (int n = 0; n <= 12; ++n) {
    const double expect = kZetaMinusOne.a_C + n * kZetaMinusOne.a_C * kZetaMinusOne.b /
                                                  (kZetaMinusOne.a_I - kZetaMinusOne.a_C);
    CHECK(std::abs(x_n(kZetaMinusOne, n) - expect) <= 1e-12);
  }
}

TEST_CASE("threshold table is populated and ordered") {
  const ThresholdTable t = build_threshold_table(estar(0.6), 20);
  REQUIRE(t.mu.size() == 21);
  REQUIRE(t.x.size() == 21);
  CHECK(t.x[0] == doctest::Approx(2.0 / 3.0));
  for (int n = 1; n <= 20; ++n) {
    CHECK(t.mu[n] > t.mu[n - 1]);
    CHECK(t.x[n] > t.x[n - 1]);
    CHECK(t.mu[n] < t.inv_theta);
  }
}

TEST_CASE("classification on the worked example") {
  auto kind = [](double delta) { return classify(estar(delta)); };
  CHECK(kind(0.6).kind == RegimeKind::ExtinctionWithInvestment);
  CHECK(kind(0.6).n == 1);
  CHECK(kind(0.7).kind == RegimeKind::ExtinctionWithInvestment);
  CHECK(kind(0.7).n == 2);
  CHECK(kind(0.4).kind == RegimeKind::ExtinctionNoInvestment);
  CHECK(kind(0.8).kind == RegimeKind::KnifeEdgeInvTheta);
  CHECK(kind(0.9).kind == RegimeKind::DeltaNormal);
  CHECK_FALSE(kind(0.6).circulating);
}

TEST_CASE("classification of the special structures") {
  CHECK(classify(Economy{1, 0, 1, 0.5, 0.1}).kind == RegimeKind::DeltaNormal);
  CHECK(classify(Economy{1, 1, 1, 0.5, 0.3}).kind == RegimeKind::OneSector);
  CHECK(classify(Economy{4.0 / 3.0, 2.0 / 3.0, 1, 0.5, 0.4}).kind ==
        RegimeKind::ExtinctionNoInvestment);
  // One-sector knife edge lands on KnifeEdgeInvTheta.
  const double th = 1.0 / 1.5;
  CHECK(classify(Economy{1, 1, 1, 0.5, th}).kind == RegimeKind::KnifeEdgeInvTheta);
  // theta < 1 with mu0 >= 1: never any investment.
  const Economy uns{1.5, 2.0, 0.5, 0.6, 0.5};  // theta = 0.65, mu0 = 1/(1/3+0.4) > 1
  REQUIRE(theta_of(uns) < 1.0);
  REQUIRE(mu0_of(uns) > 1.0);
  CHECK(classify(uns).kind == RegimeKind::UnsustainableNoInvestment);
  // theta < 1 with mu0 < 1: finite bifurcations, index clamped at n0.
  const Economy fin{0.5, 2.0, 0.75, 1.0, 0.8};  // theta = 0.375, mu0 = 2/3, n0 = 1
  REQUIRE(theta_of(fin) < 1.0);
  const Regime r = classify(fin);
  CHECK(r.kind == RegimeKind::ExtinctionWithInvestment);
  CHECK(r.n == 1);
  REQUIRE(r.n0.has_value());
  CHECK(*r.n0 == 1);
  CHECK(r.circulating);
}

TEST_CASE("knife edges at mu_n are classified as correspondence regimes") {
  const Economy e0 = estar(mu_n(estar(0.5), 0));
  CHECK(classify(e0).kind == RegimeKind::KnifeEdgeMu);
  CHECK(classify(e0).n == 0);
  const Economy e1 = estar(mu_n(estar(0.5), 1));
  CHECK(classify(e1).kind == RegimeKind::KnifeEdgeMu);
  CHECK(classify(e1).n == 1);
}

TEST_CASE("enumeration cap converts a hang into a diagnostic") {
  ClassifyOptions opt;
  opt.n_cap = 3;
  CHECK_THROWS_AS(classify(estar(0.79), opt), cap_error);
}

TEST_CASE("property: single crossing of z_n") {
  std::mt19937 rng(20241001);
  for (int k = 0; k < 20; ++k) {
    const Economy e = testutil::random_invest_intensive(rng);
    const double it = inv_theta_of(e);
    for (int n = 1; n <= 10; ++n) {
      const double mu = mu_n(e, n);
      for (int j = 0; j < 50; ++j) {
        const double below = mu * testutil::uniform(rng, 0.0, 0.999);
        CHECK(z_n(e, n, below) < 0.0);
        const double above = mu + (it - mu) * testutil::uniform(rng, 1e-3, 1.0);
        CHECK(z_n(e, n, above) > 0.0);
      }
    }
  }
}

TEST_CASE("property: z_n decreases pointwise in n") {
  std::mt19937 rng(20241002);
  for (int k = 0; k < 20; ++k) {
    const Economy e = testutil::random_invest_intensive(rng);
    const double it = inv_theta_of(e);
    for (int j = 0; j < 50; ++j) {
      // The gap scales like delta^n and underflows near delta = 0.
      const double delta = testutil::uniform(rng, 0.25 * it, it * (1 - 1e-6));
      for (int n = 1; n <= 10; ++n) {
        CHECK(z_n(e, n, delta) < z_n(e, n - 1, delta));
      }
    }
  }
}

TEST_CASE("property: mu_n and x_n increase strictly up to n = 20") {
  std::mt19937 rng(20241003);
  for (int k = 0; k < 10; ++k) {
    const Economy e = testutil::random_invest_intensive_mild(rng);
    double pm = mu_n(e, 0), px = x_n(e, 0);
    for (int n = 1; n <= 20; ++n) {
      const double m = mu_n(e, n), x = x_n(e, n);
      CHECK(m > pm);
      CHECK(x > px);
      pm = m;
      px = x;
    }
  }
}

TEST_CASE("property: summed and closed forms of z_n agree to 1e-10") {
  std::mt19937 rng(20241004);
  int tested = 0;
  while (tested < 1000) {
    const Economy e = testutil::random_invest_intensive(rng);
    const double it = inv_theta_of(e);
    const double flip = -1.0 / zeta_of(e);
    const int n = static_cast<int>(testutil::uniform(rng, 0.0, 10.99));
    const double delta = testutil::uniform(rng, 0.0, it);
    if (std::abs(delta - flip) < 1e-4) continue;  // the closed form loses accuracy at its pole
    const double a = z_n(e, n, delta), b = z_n_closed(e, n, delta);
    // 1e-10 absolute at O(1) magnitudes; relative once (-delta zeta)^n grows large.
    CHECK(std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)}));
    ++tested;
  }
}

TEST_CASE("property: z_tilde_n sign matches z_n times (1 + delta zeta)") {
  std::mt19937 rng(20241005);
  int tested = 0;
  while (tested < 1000) {
    const Economy e = testutil::random_invest_intensive(rng);
    const double it = inv_theta_of(e);
    const double zt = zeta_of(e);
    const int n = 1 + static_cast<int>(testutil::uniform(rng, 0.0, 9.99));
    const double delta = testutil::uniform(rng, 0.0, it);
    if (std::abs(delta + 1.0 / zt) < 1e-4) continue;
    const double lhs = z_tilde_n(e, n, delta);
    const double rhs = z_n(e, n, delta) * (1.0 + delta * zt);
    if (std::abs(rhs) < 1e-12 || std::abs(lhs) < 1e-12) continue;  // at a root, sign is noise
    CHECK((lhs > 0) == (rhs > 0));
    ++tested;
  }
}

TEST_CASE("property: marginal-return bound under impatience") {
  // For delta theta < 1 and a_C < a_I:
  //   -1/(a_I - a_C) - zeta delta / (a_C (1 - delta (1-d))) < 1/(a_C (1 - delta (1-d))).
  std::mt19937 rng(20241006);
  for (int k = 0; k < 1000; ++k) {
    Economy e = testutil::random_invest_intensive(rng);
    const double it = inv_theta_of(e);
    e.delta = testutil::uniform(rng, 1e-3, std::min(0.999, it * 0.999));
    const double shrink = e.a_C * (1.0 - e.delta * (1.0 - e.d));
    const double lhs = -1.0 / (e.a_I - e.a_C) - zeta_of(e) * e.delta / shrink;
    CHECK(lhs < 1.0 / shrink);
  }
}

TEST_CASE("property: finite-bifurcation index sits where mu_n crosses 1") {
  std::mt19937 rng(20241007);
  for (int k = 0; k < 1000; ++k) {
    const Economy e = testutil::random_unsustainable_interior(rng);
    REQUIRE(theta_of(e) < 1.0);
    REQUIRE(mu0_of(e) < 1.0);
    int n0 = 1;
    while (z_n(e, n0, 1.0) > 0.0) ++n0;
    CHECK(mu_n(e, n0) >= 1.0);
    CHECK(mu_n(e, n0 - 1) < 1.0);
    CHECK(x_n(e, n0) < e.a_I);
  }
}

}  // TEST_SUITE
