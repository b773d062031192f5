#include "pckhdmr/serialization.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pckhdmr {

namespace {

using nlohmann::json;

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v(k));
  return arr;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index k = 0;
  for (const auto& x : j) v(k++) = x.get<double>();
  return v;
}

json sample_set_to_json(const SampleSet& data) {
  json points = json::array();
  json responses = json::array();
  for (int k = 0; k < data.size(); ++k) {
    points.push_back(vector_to_json(data.point(k)));
    responses.push_back(data.response(k));
  }
  return json{{"points", points}, {"responses", responses}};
}

SampleSet sample_set_from_json(const json& j, int dim) {
  SampleSet data(dim);
  const json& points = j.at("points");
  const json& responses = j.at("responses");
  if (points.size() != responses.size()) {
    throw std::runtime_error("sample set document: points/responses length mismatch");
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    data.add(vector_from_json(points[k]), responses[k].get<double>());
  }
  return data;
}

json indices_to_json(const std::vector<MultiIndex>& terms) {
  json arr = json::array();
  for (const MultiIndex& mi : terms) arr.push_back(mi);
  return arr;
}

std::vector<MultiIndex> indices_from_json(const json& j) {
  std::vector<MultiIndex> terms;
  terms.reserve(j.size());
  for (const auto& mi : j) terms.push_back(mi.get<MultiIndex>());
  return terms;
}

void require_family(const json& j, const std::string& family) {
  const std::string found = j.at("family").get<std::string>();
  if (found != family) {
    throw std::runtime_error("model document: expected family '" + family +
                             "', found '" + found + "'");
  }
}

}  // namespace

nlohmann::json to_json(const DesignSpace& space) {
  return json{{"lower", vector_to_json(space.lower())},
              {"upper", vector_to_json(space.upper())}};
}

DesignSpace design_space_from_json(const nlohmann::json& j) {
  return DesignSpace(vector_from_json(j.at("lower")), vector_from_json(j.at("upper")));
}

nlohmann::json to_json(const KrigingModel& model) {
  return json{{"family", "kriging"},
              {"space", to_json(model.space())},
              {"training", sample_set_to_json(model.training())},
              {"trend", indices_to_json(model.trend())},
              {"theta", vector_to_json(model.theta())},
              {"nugget", model.nugget()},
              {"beta", vector_to_json(model.beta())},
              {"sigma2", model.sigma2()},
              {"log_likelihood", model.log_likelihood()}};
}

KrigingModel kriging_from_json(const nlohmann::json& j) {
  require_family(j, "kriging");
  DesignSpace space = design_space_from_json(j.at("space"));
  SampleSet training = sample_set_from_json(j.at("training"), space.dim());
  return KrigingModel::from_state(
      std::move(training), std::move(space), indices_from_json(j.at("trend")),
      vector_from_json(j.at("theta")), j.at("nugget").get<double>(),
      vector_from_json(j.at("beta")), j.at("sigma2").get<double>(),
      j.at("log_likelihood").get<double>());
}

nlohmann::json to_json(const PceModel& model) {
  return json{{"family", "pce"},
              {"space", to_json(model.space())},
              {"terms", indices_to_json(model.terms())},
              {"coefficients", vector_to_json(model.coefficients())},
              {"max_degree", model.max_degree()},
              {"loo_error", model.loo_error()}};
}

PceModel pce_from_json(const nlohmann::json& j) {
  require_family(j, "pce");
  return PceModel(design_space_from_json(j.at("space")),
                  indices_from_json(j.at("terms")),
                  vector_from_json(j.at("coefficients")),
                  j.at("max_degree").get<int>(), j.at("loo_error").get<double>());
}

nlohmann::json to_json(const PcKrigingModel& model) {
  return json{{"family", "pc-kriging"},
              {"mode", to_string(model.mode())},
              {"pce", to_json(model.pce_trend())},
              {"kriging", to_json(model.kriging())}};
}

PcKrigingModel pc_kriging_from_json(const nlohmann::json& j) {
  require_family(j, "pc-kriging");
  return PcKrigingModel(pc_mode_from_string(j.at("mode").get<std::string>()),
                        pce_from_json(j.at("pce")),
                        kriging_from_json(j.at("kriging")));
}

nlohmann::json to_json(const ComponentModel& model) {
  switch (model.backend()) {
    case SurrogateBackend::Kriging:
      return to_json(model.as_kriging());
    case SurrogateBackend::Pce:
      return to_json(model.as_pce());
    case SurrogateBackend::PcKriging:
      return to_json(model.as_pc_kriging());
  }
  throw std::logic_error("to_json: unknown component backend");
}

ComponentModel component_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "kriging") return ComponentModel(kriging_from_json(j));
  if (family == "pce") return ComponentModel(pce_from_json(j));
  if (family == "pc-kriging") return ComponentModel(pc_kriging_from_json(j));
  throw std::runtime_error("model document: unknown family '" + family + "'");
}

nlohmann::json to_json(const HdmrModel& model) {
  json terms = json::array();
  for (const auto& [key, term] : model.terms()) {
    json t{{"i", key.i},
           {"j", key.j},
           {"kind", to_string(term.kind)},
           {"sample_count", term.sample_count},
           {"slope", term.slope},
           {"center_offset", term.center_offset},
           {"axis_values", term.axis_values}};
    if (term.model.has_value()) t["model"] = to_json(*term.model);
    terms.push_back(std::move(t));
  }
  json coupling = json::array();
  for (const auto& row : model.coupling_matrix()) coupling.push_back(row);
  return json{{"format", "hdmr-model"},
              {"version", 1},
              {"space", to_json(model.space())},
              {"center", vector_to_json(model.center().coords())},
              {"f0", model.f0()},
              {"backend", to_string(model.backend())},
              {"coupling_matrix", coupling},
              {"probe_evals", model.probe_evals()},
              {"total_evals", model.total_evals()},
              {"terms", std::move(terms)}};
}

HdmrModel hdmr_from_json(const nlohmann::json& j) {
  if (j.value("format", std::string{}) != "hdmr-model") {
    throw std::runtime_error("model document: missing 'hdmr-model' format tag");
  }
  DesignSpace space = design_space_from_json(j.at("space"));
  CutCenter center(vector_from_json(j.at("center")), space);

  std::map<ComponentKey, ComponentTerm> terms;
  for (const auto& t : j.at("terms")) {
    ComponentTerm term;
    const int i = t.at("i").get<int>();
    const int jj = t.at("j").get<int>();
    term.key = jj >= 0 ? ComponentKey::second_order(i, jj) : ComponentKey::first_order(i);
    term.kind = term_kind_from_string(t.at("kind").get<std::string>());
    term.sample_count = t.at("sample_count").get<int>();
    term.slope = t.at("slope").get<double>();
    term.center_offset = t.at("center_offset").get<double>();
    term.axis_values = t.at("axis_values").get<std::vector<double>>();
    if (t.contains("model")) term.model = component_from_json(t.at("model"));
    terms.emplace(term.key, std::move(term));
  }

  HdmrModel model(std::move(space), std::move(center), j.at("f0").get<double>(),
                  surrogate_backend_from_string(j.at("backend").get<std::string>()),
                  std::move(terms), j.at("probe_evals").get<long long>(),
                  j.at("total_evals").get<long long>());

  // The stored coupling matrix is redundant with the term set; verify they
  // agree so a hand-edited document cannot silently contradict itself.
  const auto expected = model.coupling_matrix();
  const json& stored = j.at("coupling_matrix");
  if (stored.size() != expected.size()) {
    throw std::runtime_error("model document: coupling matrix has wrong dimension");
  }
  for (std::size_t r = 0; r < expected.size(); ++r) {
    if (stored[r].get<std::vector<bool>>() != expected[r]) {
      throw std::runtime_error("model document: coupling matrix contradicts terms");
    }
  }
  return model;
}

void save_hdmr(const HdmrModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_json(model).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

HdmrModel load_hdmr(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("failed to parse " + path + ": " + e.what());
  }
  try {
    return hdmr_from_json(j);
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed model document " + path + ": " + e.what());
  }
}

}  // namespace pckhdmr
