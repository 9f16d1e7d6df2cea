#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "renyibet/gpt.hpp"
#include "renyibet/verify.hpp"

using namespace renyibet;

namespace {

ComplexMatrix projector(std::complex<double> a, std::complex<double> b) {
  Eigen::Vector2cd v(a, b);
  v.normalize();
  return v * v.adjoint();
}

}  // namespace

TEST_CASE("hermitian basis is orthonormal") {
  for (Index n : {2, 3}) {
    const auto basis = hermitian_basis(n);
    REQUIRE(basis.size() == static_cast<size_t>(n * n));
    for (size_t i = 0; i < basis.size(); ++i) {
      CHECK(basis[i].isApprox(basis[i].adjoint()));
      for (size_t j = 0; j < basis.size(); ++j) {
        const double ip = (basis[i] * basis[j]).trace().real();
        CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("embedding round trip and Born rule") {
  const GptModel q = GptModel::build_quantum(2);
  const ComplexMatrix rho = projector(1.0, std::complex<double>(0.0, 1.0));
  const Vector w = q.state_from_density(rho);
  CHECK(q.unembed(w).isApprox(rho, 1e-12));
  const ComplexMatrix e = projector(1.0, 1.0);
  const Vector m = q.effect_from_operator(e);
  CHECK(m.dot(w) == doctest::Approx((e * rho).trace().real()).epsilon(1e-12));
  CHECK(q.unit_effect().dot(w) == doctest::Approx(1.0));
}

TEST_CASE("invalid states and effects are rejected") {
  const GptModel q = GptModel::build_quantum(2);
  ComplexMatrix bad(2, 2);
  bad << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(q.state_from_density(bad), ValidationError);
  CHECK_THROWS_AS(q.effect_from_operator(ComplexMatrix::Identity(2, 2) * 1.5), ValidationError);
  const GptModel c = GptModel::build_classical(3);
  CHECK_THROWS_AS(c.check_state(Vector{{0.5, 0.7, -0.2}}), ValidationError);
}

TEST_CASE("measurements must sum to the unit effect") {
  const GptModel c = GptModel::build_classical(2);
  CHECK_THROWS_AS(Measurement(c, {Vector{{1.0, 0.0}}, Vector{{0.5, 0.5}}}), ValidationError);
  CHECK_NOTHROW(Measurement(c, {Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}}));
}

TEST_CASE("qubit fixture") {
  const auto fx = verify::qubit_fixture();
  const JointPmf joint = outcome_joint(fx.measurement, fx.ensemble);
  CHECK(joint(0, 0) == doctest::Approx(0.5));
  CHECK(joint(1, 0) == doctest::Approx(0.25));
  CHECK(sd_success(fx.measurement, fx.ensemble) == doctest::Approx(0.75));
  const OddsProfile odds({Vector{{2.0, 2.0}}});
  const RiskVector risk({2.0});
  const double ratio = advantage_ratio(fx.model, fx.measurement, fx.ensemble, odds, risk);
  CHECK(std::log(ratio) == doctest::Approx(0.1583471838203749).epsilon(1e-10));
}

TEST_CASE("uninformative measurements give no advantage") {
  const auto fx = verify::qubit_fixture();
  const Measurement trivial = uninformative(Pmf::uniform(2), fx.model);
  const OddsProfile odds({Vector{{2.0, 2.0}}});
  const std::vector<Pmf> refs = odds.induced_pmfs();
  const OrderVector orders({0.5, 0.5});
  CHECK(informativeness_monotone(trivial, fx.ensemble, refs, orders) ==
        doctest::Approx(renyi_multivariate(orders, std::vector<Pmf>{fx.ensemble.prior(), refs[0]})).epsilon(1e-12));
}

TEST_CASE("postprocessing never increases the monotone") {
  const auto fx = verify::qubit_fixture();
  const StochasticOp noisy(Matrix{{0.8, 0.3}, {0.2, 0.7}});
  const Measurement post = postprocess_measurement(fx.model, fx.measurement, noisy);
  const OddsProfile odds({Vector{{2.0, 2.0}}});
  const auto refs = odds.induced_pmfs();
  const OrderVector orders({0.5, 0.5});
  CHECK(informativeness_monotone(post, fx.ensemble, refs, orders) <=
        informativeness_monotone(fx.measurement, fx.ensemble, refs, orders) + 1e-12);
}

TEST_CASE("risk neutral limit is state discrimination") {
  const auto fx = verify::qubit_fixture();
  const OddsProfile odds({Vector{{2.0, 2.0}}});
  CHECK(sb_risk_neutral_optimal_ce(fx.measurement, fx.ensemble, odds) ==
        doctest::Approx(2.0 * sd_success(fx.measurement, fx.ensemble)));
}
