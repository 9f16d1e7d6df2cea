#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renyibet/betting.hpp"

using namespace renyibet;

namespace {

const Pmf kP{Vector{{0.75, 0.25}}};
const OddsProfile kFair2({Vector{{2.0, 2.0}}});

}  // namespace

TEST_CASE("risk vectors and orders") {
  const RiskVector r({1.5, 1.5});
  const OrderVector o = risk_to_orders(r);
  CHECK(o[0] == doctest::Approx(0.5));
  CHECK(o[1] == doctest::Approx(0.25));
  const RiskVector back = orders_to_risk(o);
  CHECK(back[1] == doctest::Approx(1.5));
  CHECK_THROWS_AS(RiskVector({1.0, 1.0}), SingularityError);
  CHECK_THROWS_AS(RiskVector({0.5, 2.0}), ValidationError);
  CHECK_THROWS_AS(RiskVector({0.2, 0.2}), ValidationError);
  CHECK_NOTHROW(RiskVector({0.8, 0.7}));
}

TEST_CASE("isoelastic utility") {
  CHECK(isoelastic_utility(1.0, std::exp(2.0)) == doctest::Approx(2.0));
  CHECK(isoelastic_utility(2.0, 4.0) == doctest::Approx(-0.25));
}

TEST_CASE("odds fairness and induced pmf") {
  const OddsProfile odds({Vector{{4.0, 4.0 / 3.0}}});
  CHECK(odds.fairness(0) == doctest::Approx(1.0));
  CHECK(odds.induced_pmf(0)(0) == doctest::Approx(0.25));
  CHECK(odds.classify(0) == Fairness::Fair);
  CHECK(odds.scaled(std::vector<double>{2.0}).classify(0) == Fairness::SuperFair);
}

TEST_CASE("certainty equivalent fixture") {
  const std::vector<Pmf> bets{Pmf(Vector{{0.634, 0.366}})};
  const double ice = multi_ice_unconditional(kP, kFair2, bets, RiskVector({2.0}));
  CHECK(ice == doctest::Approx(1.071796766743649).epsilon(1e-13));
}

TEST_CASE("single lottery optimum") {
  const auto opt = optimal_bets_unconditional(kP, kFair2, RiskVector({2.0}));
  CHECK(opt.bets[0](0) == doctest::Approx(0.6339745962155614).epsilon(1e-13));
  const double expected = std::log(2.0) - 2.0 * std::log(std::sqrt(0.75) + std::sqrt(0.25));
  CHECK(opt.max_log_ice == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("two lottery optimum matches the divergence fixture") {
  const OddsProfile odds({Vector{{2.0, 2.0}}, Vector{{2.0, 2.0}}});
  const auto opt = optimal_bets_unconditional(kP, odds, RiskVector({1.5, 1.5}));
  const double ice = log_multi_ice_unconditional(kP, odds, opt.bets, RiskVector({1.5, 1.5}));
  CHECK(ice == doctest::Approx(opt.max_log_ice).epsilon(1e-12));
  const auto rep = decompose_ice(kP, odds, opt.bets, RiskVector({1.5, 1.5}));
  for (const auto& t : rep.penalties) CHECK(t.penalty == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.recomposed() == doctest::Approx(rep.log_ice).epsilon(1e-12));
}

TEST_CASE("decomposition identity for arbitrary bets") {
  const OddsProfile odds({Vector{{1.8, 2.5, 5.0}}, Vector{{3.0, 3.0, 2.5}}});
  const Pmf p0(Vector{{0.5, 0.3, 0.2}});
  const std::vector<Pmf> bets{Pmf(Vector{{0.2, 0.5, 0.3}}), Pmf(Vector{{0.6, 0.1, 0.3}})};
  for (const auto& risk : {RiskVector({1.7, 3.0}), RiskVector({0.8, 0.6})}) {
    const auto rep = decompose_ice(p0, odds, bets, risk);
    CHECK(rep.recomposed() == doctest::Approx(rep.log_ice).epsilon(1e-12));
    for (const auto& t : rep.penalties) CHECK(t.penalty >= -1e-12);
  }
}

TEST_CASE("zero bets are rejected") {
  const std::vector<Pmf> bets{Pmf(Vector{{1.0, 0.0}})};
  CHECK_THROWS_AS(decompose_ice(kP, kFair2, bets, RiskVector({2.0})), SingularityError);
}

TEST_CASE("conditional optimum and side information") {
  const JointPmf joint(Matrix{{0.3, 0.2}, {0.1, 0.4}});
  const auto cond = optimal_bets_conditional(joint, kFair2, RiskVector({2.0}));
  CHECK(cond.max_log_ice == doctest::Approx(0.044947374260354014).epsilon(1e-12));
  const double ice = log_multi_ice_conditional(joint, kFair2, cond.bets, RiskVector({2.0}));
  CHECK(ice == doctest::Approx(cond.max_log_ice).epsilon(1e-12));
  CHECK(side_info_gain(joint, kFair2, RiskVector({2.0})) ==
        doctest::Approx(0.044947374260354014).epsilon(1e-10));
  const JointPmf indep = JointPmf::product(kP, Pmf::uniform(3));
  CHECK(side_info_gain(indep, kFair2, RiskVector({2.0})) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conditional decomposition is tight at the optimum") {
  const JointPmf joint(Matrix{{0.3, 0.2, 0.0}, {0.1, 0.4, 0.0}});
  const OddsProfile odds({Vector{{2.0, 2.0}}, Vector{{1.5, 3.5}}});
  const RiskVector risk({2.0, 1.5});
  const auto opt = optimal_bets_conditional(joint, odds, risk);
  const auto rep = decompose_ice_conditional(joint, odds, opt.bets, risk);
  CHECK(rep.log_ice == doctest::Approx(rep.recomposed()).epsilon(1e-12));
  CHECK(rep.support.size() == 2);
}
