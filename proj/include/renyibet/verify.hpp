#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "renyibet/gpt.hpp"
#include "renyibet/prob.hpp"

namespace renyibet::verify {

struct SuiteOptions {
  std::uint64_t seed = 42;
  Index mc_samples = 1000000;
  Index dirichlet_samples = 20000;
};

struct CheckResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

struct Suite {
  int id;
  std::string name;
  std::function<CheckResult(const SuiteOptions&)> run;
};

/// Every property suite in a fixed order.
const std::vector<Suite>& suites();

std::vector<CheckResult> run_all(const SuiteOptions& opts, const std::function<void(const CheckResult&)>& on_result = {});

CheckResult check_decomposition_identity(const SuiteOptions& opts);
CheckResult check_optimality(const SuiteOptions& opts);
CheckResult check_fixtures(const SuiteOptions& opts);
CheckResult check_dpi(const SuiteOptions& opts);
CheckResult check_order_sweep(const SuiteOptions& opts);
CheckResult check_monte_carlo(const SuiteOptions& opts);
CheckResult check_resource_axioms(const SuiteOptions& opts);
CheckResult check_sd_reduction(const SuiteOptions& opts);
CheckResult check_side_information(const SuiteOptions& opts);

/// The qubit ensemble {(1/2, |0⟩⟨0|), (1/2, |+⟩⟨+|)} measured in the Z basis.
struct QubitFixture {
  GptModel model;
  Measurement measurement;
  StateEnsemble ensemble;
};
QubitFixture qubit_fixture();

}  // namespace renyibet::verify
