#pragma once

#include <string>

#include <json.hpp>

#include "pckhdmr/hdmr.hpp"

namespace pckhdmr {

/// Self-describing JSON documents for every fitted model type.  Each carries
/// a "family" tag and the full state needed to reload and predict within
/// 1e-12 of the original (doubles are emitted with round-trip precision, and
/// reloading rebuilds the same derived factors the fit produced).

nlohmann::json to_json(const DesignSpace& space);
DesignSpace design_space_from_json(const nlohmann::json& j);

nlohmann::json to_json(const KrigingModel& model);
KrigingModel kriging_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PceModel& model);
PceModel pce_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PcKrigingModel& model);
PcKrigingModel pc_kriging_from_json(const nlohmann::json& j);

/// Dispatches on the "family" tag.
nlohmann::json to_json(const ComponentModel& model);
ComponentModel component_from_json(const nlohmann::json& j);

/// Decomposition document: space, center, f0, backend tag, coupling matrix,
/// evaluation counts, and every term with its serialized surrogate.
nlohmann::json to_json(const HdmrModel& model);
HdmrModel hdmr_from_json(const nlohmann::json& j);

void save_hdmr(const HdmrModel& model, const std::string& path);
HdmrModel load_hdmr(const std::string& path);

}  // namespace pckhdmr
