#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "renyibet/betting.hpp"
#include "renyibet/gpt.hpp"
#include "renyibet/prob.hpp"

namespace renyibet::io {

using json = nlohmann::json;

/// Rejects any key outside `allowed`; `context` prefixes the diagnostic.
void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& context);
const json& require(const json& j, const char* key, const std::string& context);

double number(const json& j, const std::string& context);
std::vector<double> numbers(const json& j, const std::string& context);
Vector vector_from_json(const json& j, const std::string& context);
Matrix matrix_from_json(const json& j, const std::string& context);
ComplexMatrix complex_from_json(const json& j, const std::string& context);

/// {"outcomes": [...], "mass": [...]}; outcomes optional.
Pmf pmf_from_json(const json& j, const std::string& context = "pmf");
/// {"outcomes", "conditions", "mass": [[x rows] g columns]}.
CondPmf cond_from_json(const json& j, const std::string& context = "conditional");
JointPmf joint_from_json(const json& j, const std::string& context = "joint");
/// {"inputs", "outputs", "kernel": [[y rows] x columns]}.
StochasticOp kernel_from_json(const json& j, const std::string& context = "kernel");
OddsProfile odds_from_json(const json& j);
RiskVector risk_from_json(const json& j);

/// Rounds to 12 significant digits.
double round12(double v);
json number_json(double v);
json vector_json(const Vector& v);
json matrix_json(const Matrix& m);
json pmf_json(const Pmf& p);
json cond_json(const CondPmf& c);
json joint_json(const JointPmf& j);

/// GPT inputs: "model", "ensemble", "measurement" blocks.
struct GptSpec {
  GptModel model;
  StateEnsemble ensemble;
  Measurement measurement;
};
GptModel model_from_json(const json& j);
GptSpec gpt_from_json(const json& spec);

}  // namespace renyibet::io
