#include "renyibet/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace renyibet::io {
namespace {

Labels labels_from_json(const json& j, const std::string& context) {
  if (!j.is_array()) throw ValidationError(context + ": labels must be an array");
  Labels out;
  for (const auto& item : j) {
    if (item.is_string()) {
      out.push_back(item.get<std::string>());
    } else if (item.is_number_integer()) {
      out.push_back(std::to_string(item.get<long long>()));
    } else {
      throw ValidationError(context + ": labels must be strings or integers");
    }
  }
  return out;
}

Vector state_or_effect(const GptModel& model, const json& j, bool effect, const std::string& context) {
  if (model.kind() == ModelKind::Quantum) {
    const ComplexMatrix op = complex_from_json(j, context);
    return effect ? model.effect_from_operator(op) : model.state_from_density(op);
  }
  const Vector v = vector_from_json(j, context);
  if (effect) {
    model.check_effect(v);
  } else {
    model.check_state(v);
  }
  return v;
}

}  // namespace

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& context) {
  if (!j.is_object()) throw ValidationError(context + ": expected a JSON object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!known) throw ValidationError(context + ": unknown field \"" + item.key() + "\"");
  }
}

const json& require(const json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(context + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double number(const json& j, const std::string& context) {
  if (!j.is_number()) throw ValidationError(context + ": expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& context) {
  if (!j.is_array()) throw ValidationError(context + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& item : j) out.push_back(number(item, context));
  return out;
}

Vector vector_from_json(const json& j, const std::string& context) {
  const auto v = numbers(j, context);
  return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

Matrix matrix_from_json(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) throw ValidationError(context + ": expected a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  Matrix m;
  for (Index r = 0; r < rows; ++r) {
    const auto row = numbers(j[static_cast<size_t>(r)], context);
    if (r == 0) m.resize(rows, static_cast<Index>(row.size()));
    if (static_cast<Index>(row.size()) != m.cols()) throw ValidationError(context + ": ragged matrix");
    for (Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<size_t>(c)];
  }
  return m;
}

ComplexMatrix complex_from_json(const json& j, const std::string& context) {
  check_keys(j, {"re", "im"}, context);
  const Matrix re = matrix_from_json(require(j, "re", context), context + ".re");
  Matrix im = Matrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) im = matrix_from_json(j.at("im"), context + ".im");
  if (im.rows() != re.rows() || im.cols() != re.cols()) throw ValidationError(context + ": re/im shape mismatch");
  ComplexMatrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

Pmf pmf_from_json(const json& j, const std::string& context) {
  check_keys(j, {"outcomes", "mass"}, context);
  Vector mass = vector_from_json(require(j, "mass", context), context + ".mass");
  if (j.contains("outcomes")) return Pmf(labels_from_json(j.at("outcomes"), context), std::move(mass));
  return Pmf(std::move(mass));
}

CondPmf cond_from_json(const json& j, const std::string& context) {
  check_keys(j, {"outcomes", "conditions", "mass"}, context);
  Matrix mass = matrix_from_json(require(j, "mass", context), context + ".mass");
  const Labels x = j.contains("outcomes") ? labels_from_json(j.at("outcomes"), context) : index_labels(mass.rows());
  const Labels g = j.contains("conditions") ? labels_from_json(j.at("conditions"), context) : index_labels(mass.cols());
  return CondPmf(x, g, std::move(mass));
}

JointPmf joint_from_json(const json& j, const std::string& context) {
  check_keys(j, {"outcomes", "conditions", "mass"}, context);
  Matrix mass = matrix_from_json(require(j, "mass", context), context + ".mass");
  const Labels x = j.contains("outcomes") ? labels_from_json(j.at("outcomes"), context) : index_labels(mass.rows());
  const Labels g = j.contains("conditions") ? labels_from_json(j.at("conditions"), context) : index_labels(mass.cols());
  return JointPmf(x, g, std::move(mass));
}

StochasticOp kernel_from_json(const json& j, const std::string& context) {
  check_keys(j, {"inputs", "outputs", "kernel"}, context);
  Matrix k = matrix_from_json(require(j, "kernel", context), context + ".kernel");
  const Labels in = j.contains("inputs") ? labels_from_json(j.at("inputs"), context) : index_labels(k.cols());
  const Labels out = j.contains("outputs") ? labels_from_json(j.at("outputs"), context) : index_labels(k.rows());
  return StochasticOp(in, out, std::move(k));
}

OddsProfile odds_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("odds: expected an array of odds vectors");
  std::vector<Vector> odds;
  for (const auto& row : j) odds.push_back(vector_from_json(row, "odds"));
  return OddsProfile(std::move(odds));
}

RiskVector risk_from_json(const json& j) { return RiskVector(numbers(j, "risk")); }

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return 0.0;
  return round12(v);
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(number_json(v(i)));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

json pmf_json(const Pmf& p) { return json{{"outcomes", p.outcomes()}, {"mass", vector_json(p.mass())}}; }

json cond_json(const CondPmf& c) {
  return json{{"outcomes", c.outcomes()}, {"conditions", c.conditions()}, {"mass", matrix_json(c.mass())}};
}

json joint_json(const JointPmf& j) {
  return json{{"outcomes", j.outcomes()}, {"conditions", j.conditions()}, {"mass", matrix_json(j.mass())}};
}

GptModel model_from_json(const json& j) {
  check_keys(j, {"kind", "n", "unit_effect", "reference_states"}, "model");
  const auto kind = require(j, "kind", "model").get<std::string>();
  if (kind == "classical" || kind == "quantum") {
    const json& n = require(j, "n", "model");
    if (!n.is_number_integer()) throw ValidationError("model.n must be an integer");
    return kind == "classical" ? GptModel::build_classical(n.get<Index>()) : GptModel::build_quantum(n.get<Index>());
  }
  if (kind == "custom") {
    std::vector<Vector> refs;
    if (j.contains("reference_states")) {
      for (const auto& s : j.at("reference_states")) refs.push_back(vector_from_json(s, "model.reference_states"));
    }
    return GptModel(vector_from_json(require(j, "unit_effect", "model"), "model.unit_effect"), std::move(refs));
  }
  throw ValidationError("model.kind must be classical, quantum or custom");
}

GptSpec gpt_from_json(const json& spec) {
  GptModel model = model_from_json(require(spec, "model", "gpt spec"));

  const json& e = require(spec, "ensemble", "gpt spec");
  check_keys(e, {"prior", "states"}, "ensemble");
  std::vector<Vector> states;
  const json& raw_states = require(e, "states", "ensemble");
  if (!raw_states.is_array()) throw ValidationError("ensemble.states must be an array");
  for (const auto& s : raw_states) states.push_back(state_or_effect(model, s, false, "ensemble.states"));
  StateEnsemble ensemble(model, pmf_from_json(require(e, "prior", "ensemble"), "ensemble.prior"), std::move(states));

  const json& m = require(spec, "measurement", "gpt spec");
  check_keys(m, {"outcomes", "effects"}, "measurement");
  std::vector<Vector> effects;
  const json& raw_effects = require(m, "effects", "measurement");
  if (!raw_effects.is_array()) throw ValidationError("measurement.effects must be an array");
  for (const auto& s : raw_effects) effects.push_back(state_or_effect(model, s, true, "measurement.effects"));
  Labels outcomes = m.contains("outcomes") ? labels_from_json(m.at("outcomes"), "measurement") : Labels{};
  Measurement measurement(model, std::move(effects), std::move(outcomes));

  return GptSpec{std::move(model), std::move(ensemble), std::move(measurement)};
}

}  // namespace renyibet::io
