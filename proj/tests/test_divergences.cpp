#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renyibet/divergences.hpp"

using namespace renyibet;

namespace {

const Pmf kP{Vector{{0.75, 0.25}}};
const Pmf kU = Pmf::uniform(2);

}  // namespace

TEST_CASE("order vectors") {
  const OrderVector a({0.5, 0.25, 0.25});
  CHECK(a.order_case() == OrderCase::I);
  CHECK(a.pivot() == 0);
  const OrderVector b({2.0, -0.5, -0.5});
  CHECK(b.order_case() == OrderCase::II);
  CHECK_THROWS_AS(OrderVector({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(OrderVector({2.0, 0.5, -1.5}), ValidationError);
}

TEST_CASE("pivot order one is singular") {
  const std::vector<Pmf> pmfs{kP, kU};
  CHECK_THROWS_AS(renyi_multivariate(OrderVector({1.0, 0.0}), pmfs), SingularityError);
}

TEST_CASE("bivariate values") {
  CHECK(renyi_bivariate(2.0, kP, kU) == doctest::Approx(0.22314355131420976).epsilon(1e-13));
  CHECK(renyi_bivariate(1.0, kP, kU) == doctest::Approx(0.13081203594113697).epsilon(1e-13));
  CHECK(kl_divergence(kP, kU) == doctest::Approx(0.13081203594113697).epsilon(1e-13));
  CHECK(renyi_bivariate(2.0, kU, kU) == doctest::Approx(0.0));
}

TEST_CASE("multivariate reduces to bivariate") {
  const std::vector<Pmf> pmfs{kP, kU};
  const double d = renyi_multivariate(OrderVector({2.0, -1.0}), pmfs);
  CHECK(d == doctest::Approx(renyi_bivariate(2.0, kP, kU)).epsilon(1e-13));
}

TEST_CASE("multivariate fixture") {
  const std::vector<Pmf> pmfs{kP, kU, kU};
  const double d = renyi_multivariate(OrderVector({0.5, 0.25, 0.25}), pmfs);
  CHECK(d == doctest::Approx(0.06933646419507392).epsilon(1e-13));
}

TEST_CASE("case II with a zero at a negative order is infinite") {
  const std::vector<Pmf> pmfs{kP, Pmf::point(2, 0)};
  const double d = renyi_multivariate(OrderVector({2.0, -1.0}), pmfs);
  CHECK(std::isinf(d));
  CHECK(d > 0);
}

TEST_CASE("conditional fixture") {
  const CondPmf c0(Matrix{{2.0 / 3.0, 0.0}, {1.0 / 3.0, 1.0}});
  const CondPmf c1(Matrix{{0.5, 0.5}, {0.5, 0.5}});
  const std::vector<CondPmf> conds{c0, c1};
  const double d = renyi_conditional(OrderVector({0.5, 0.5}), 0.5, conds, kP, Index{0});
  CHECK(d == doctest::Approx(0.15834718382037494).epsilon(1e-12));
}

TEST_CASE("conditional with constant conditionals equals unconditional") {
  const std::vector<CondPmf> conds{CondPmf::constant(kP, 3), CondPmf::constant(kU, 3)};
  const OrderVector o({0.5, 0.5});
  const double c = renyi_conditional(o, 0.5, conds, Pmf::uniform(3));
  const std::vector<Pmf> pmfs{kP, kU};
  CHECK(c == doctest::Approx(renyi_multivariate(o, pmfs)).epsilon(1e-13));
}

TEST_CASE("data processing under a kernel") {
  const StochasticOp t(Matrix{{0.9, 0.2}, {0.1, 0.8}});
  const std::vector<Pmf> pmfs{kP, kU, Pmf(Vector{{0.4, 0.6}})};
  const auto rep = dpi_check(OrderVector({0.5, 0.3, 0.2}), pmfs, t);
  CHECK(rep.holds);
  CHECK(rep.before >= rep.after);
}

TEST_CASE("order path limits") {
  const std::vector<double> gammas{0.6, 0.4};
  const std::vector<Pmf> pmfs{kP, kU, Pmf(Vector{{0.4, 0.6}})};
  CHECK(path_orders(PathSpec{gammas, 3.0})[0] == doctest::Approx(3.0));
  const std::vector<double> lambdas{1.0, 1.0 + 1e-6, 1e4};
  const auto rows = sweep(gammas, pmfs, lambdas);
  CHECK(rows[0].divergence == doctest::Approx(rows[0].kl_limit).epsilon(1e-12));
  CHECK(rows[1].divergence == doctest::Approx(rows[1].kl_limit).epsilon(1e-5));
  CHECK(rows[2].divergence == doctest::Approx(rows[2].tropical_limit).epsilon(1e-3));
  CHECK(rows[1].divergence <= rows[2].divergence);
}

TEST_CASE("tropical limit of a single reference") {
  const std::vector<double> gammas{1.0};
  const std::vector<Pmf> pmfs{kP, kU};
  CHECK(tropical_limit(gammas, pmfs) == doctest::Approx(std::log(1.5)).epsilon(1e-14));
}
