#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renyibet/betting.hpp"
#include "renyibet/oracles.hpp"

using namespace renyibet;

TEST_CASE("random draws are valid and reproducible") {
  oracle::Rng a(7);
  oracle::Rng b(7);
  const Pmf p = oracle::random_pmf(a, 5);
  CHECK(p.mass().isApprox(oracle::random_pmf(b, 5).mass()));
  CHECK(p.full_support());
  for (int i = 0; i < 50; ++i) CHECK_NOTHROW(oracle::random_risk(a, 3));
  const ComplexMatrix rho = oracle::random_density(a, 3);
  CHECK(rho.trace().real() == doctest::Approx(1.0));
  const auto povm = oracle::random_povm(a, 2, 3);
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const auto& e : povm) sum += e;
  CHECK(sum.isApprox(ComplexMatrix::Identity(2, 2), 1e-10));
}

TEST_CASE("naive evaluation agrees with the library") {
  oracle::Rng rng(11);
  const Pmf p0 = oracle::random_pmf(rng, 3);
  const OddsProfile odds = oracle::random_odds(rng, 3, 2);
  const RiskVector risk = oracle::random_risk(rng, 2);
  const std::vector<Pmf> bets{oracle::random_pmf(rng, 3), oracle::random_pmf(rng, 3)};
  CHECK(oracle::naive_log_ice(p0, odds, bets, risk) ==
        doctest::Approx(log_multi_ice_unconditional(p0, odds, bets, risk)).epsilon(1e-10));
}

TEST_CASE("brute force finds the single lottery optimum") {
  const Pmf p0(Vector{{0.75, 0.25}});
  const OddsProfile odds({Vector{{2.0, 2.0}}});
  oracle::OracleConfig cfg;
  cfg.dirichlet_samples = 2000;
  const auto r = oracle::brute_force_optimal_bets(p0, odds, RiskVector({2.0}), cfg);
  CHECK(r.log_ice == doctest::Approx(0.06933646419507392).epsilon(1e-6));
  CHECK(r.bets[0](0) == doctest::Approx(0.6339745962155614).epsilon(1e-3));
}

TEST_CASE("monte carlo brackets the analytic value") {
  const Pmf p0(Vector{{0.75, 0.25}});
  const OddsProfile odds({Vector{{2.0, 2.0}}});
  const std::vector<Pmf> bets{Pmf(Vector{{0.634, 0.366}})};
  oracle::OracleConfig cfg;
  cfg.mc_samples = 200000;
  const auto est = oracle::monte_carlo_ice(p0, odds, bets, RiskVector({2.0}), cfg);
  CHECK(std::abs(est.estimate - 1.071796766743649) <= 4.0 * est.stderr_);
}

TEST_CASE("exhaustive postprocessing") {
  const Matrix joint{{0.5, 0.0}, {0.25, 0.25}};
  const auto r = oracle::exhaustive_postprocessing(joint);
  CHECK(r.success == doctest::Approx(0.75));
  CHECK(oracle::exhaustive_risk_neutral_ce(joint, Vector{{2.0, 2.0}}) == doctest::Approx(1.5));
}

TEST_CASE("high precision fixtures") {
  const std::vector<double> alphas{0.5, 0.25, 0.25};
  const double d = oracle::hp_renyi_multivariate(alphas, {{"0.75", "0.25"}, {"0.5", "0.5"}, {"1/2", "1/2"}});
  CHECK(d == doctest::Approx(0.06933646419507392).epsilon(1e-15));
  const std::vector<double> a2{0.5, 0.5};
  const double c = oracle::hp_renyi_conditional(
      a2, 0.5, {{{"2/3", "1/3"}, {"0", "1"}}, {{"1/2", "1/2"}, {"1/2", "1/2"}}}, {"3/4", "1/4"});
  CHECK(c == doctest::Approx(0.15834718382037494).epsilon(1e-15));
}
