#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "renyibet/prob.hpp"

using namespace renyibet;

TEST_CASE("pmf validates mass") {
  CHECK_NOTHROW(Pmf(Vector{{0.25, 0.75}}));
  CHECK_THROWS_AS(Pmf(Vector{{0.5, 0.6}}), ValidationError);
  CHECK_THROWS_AS(Pmf(Vector{{-0.1, 1.1}}), ValidationError);
  CHECK_THROWS_AS(Pmf(Labels{"a"}, Vector{{0.5, 0.5}}), ValidationError);
  const Pmf p(Vector{{-1e-15, 1.0 + 1e-15}});
  CHECK(p(0) == 0.0);
  CHECK(p.outcomes().size() == 2);
}

TEST_CASE("uniform and point pmfs") {
  const Pmf u = Pmf::uniform(4);
  CHECK(u(2) == doctest::Approx(0.25));
  CHECK(u.full_support());
  const Pmf d = Pmf::point(3, 1);
  CHECK(d(1) == 1.0);
  CHECK_FALSE(d.full_support());
}

TEST_CASE("kernel image and Bayes reversal") {
  const StochasticOp t(Matrix{{0.9, 0.2}, {0.1, 0.8}});
  const Pmf q = apply_stochastic(t, Pmf::uniform(2));
  CHECK(q(0) == doctest::Approx(0.55).epsilon(1e-14));
  const StochasticOp back = bayes_pseudo_inverse(t, Pmf::uniform(2));
  CHECK(back(0, 0) == doctest::Approx(9.0 / 11.0).epsilon(1e-14));
  CHECK(back.kernel().colwise().sum().isOnes(1e-12));
}

TEST_CASE("kernels must be column stochastic") {
  CHECK_THROWS_AS(StochasticOp(Matrix{{0.9, 0.2}, {0.2, 0.8}}), ValidationError);
  const StochasticOp a(Matrix{{0.9, 0.2}, {0.1, 0.8}});
  const StochasticOp id = StochasticOp::identity(2);
  CHECK(compose(a, id).kernel().isApprox(a.kernel()));
}

TEST_CASE("joint factorizes into marginal and conditional") {
  const JointPmf j(Matrix{{0.3, 0.2}, {0.1, 0.4}});
  const auto parts = marginals_and_conditionals(j);
  CHECK(parts.g_marginal(0) == doctest::Approx(0.4));
  CHECK(parts.x_marginal(1) == doctest::Approx(0.5));
  CHECK(parts.x_given_g(0, 0) == doctest::Approx(0.75));
  const JointPmf back = JointPmf::compose(parts.x_given_g, parts.g_marginal);
  CHECK(back.mass().isApprox(j.mass(), 1e-14));
}

TEST_CASE("expectation") {
  CHECK(expectation(Pmf(Vector{{0.25, 0.75}}), Vector{{4.0, 8.0}}) == doctest::Approx(7.0));
}
