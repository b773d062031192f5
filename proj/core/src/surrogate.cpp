#include "pckhdmr/surrogate.hpp"

#include <stdexcept>

namespace pckhdmr {

std::string to_string(SurrogateBackend backend) {
  switch (backend) {
    case SurrogateBackend::PcKriging:
      return "pc-kriging";
    case SurrogateBackend::Kriging:
      return "kriging";
    case SurrogateBackend::Pce:
      return "pce";
  }
  throw std::logic_error("to_string: unknown surrogate backend");
}

SurrogateBackend surrogate_backend_from_string(const std::string& name) {
  if (name == "pc-kriging") return SurrogateBackend::PcKriging;
  if (name == "kriging") return SurrogateBackend::Kriging;
  if (name == "pce") return SurrogateBackend::Pce;
  throw std::invalid_argument("unknown surrogate backend: " + name);
}

std::string to_string(PcMode mode) {
  return mode == PcMode::SPC ? "spc" : "opc";
}

PcMode pc_mode_from_string(const std::string& name) {
  if (name == "spc") return PcMode::SPC;
  if (name == "opc") return PcMode::OPC;
  throw std::invalid_argument("unknown PC-Kriging mode: " + name);
}

ComponentModel::ComponentModel(KrigingModel m)
    : backend_(SurrogateBackend::Kriging), impl_(std::move(m)) {}
ComponentModel::ComponentModel(PceModel m)
    : backend_(SurrogateBackend::Pce), impl_(std::move(m)) {}
ComponentModel::ComponentModel(PcKrigingModel m)
    : backend_(SurrogateBackend::PcKriging), impl_(std::move(m)) {}

ComponentModel ComponentModel::fit(const SampleSet& data, const DesignSpace& space,
                                   const SurrogateConfig& config) {
  const int degree =
      config.max_degree > 0 ? config.max_degree : default_pce_degree(space.dim());
  switch (config.backend) {
    case SurrogateBackend::Kriging:
      return ComponentModel(fit_kriging(data, space, {}, config.kriging));
    case SurrogateBackend::Pce:
      return ComponentModel(fit_pce(data, space, degree));
    case SurrogateBackend::PcKriging: {
      PcKrigingConfig cfg;
      cfg.mode = config.pc_mode;
      cfg.max_degree = degree;
      cfg.kriging = config.kriging;
      return ComponentModel(fit_pc_kriging(data, space, cfg));
    }
  }
  throw std::logic_error("ComponentModel::fit: unknown backend");
}

double ComponentModel::mean(const Vector& x) const {
  switch (backend_) {
    case SurrogateBackend::Kriging:
      return std::get<KrigingModel>(impl_).predict_mean(x);
    case SurrogateBackend::Pce:
      return std::get<PceModel>(impl_).predict(x);
    case SurrogateBackend::PcKriging:
      return std::get<PcKrigingModel>(impl_).predict_mean(x);
  }
  throw std::logic_error("ComponentModel::mean: empty model");
}

Vector ComponentModel::entropy_theta(int dim) const {
  switch (backend_) {
    case SurrogateBackend::Kriging:
      return std::get<KrigingModel>(impl_).theta();
    case SurrogateBackend::PcKriging:
      return std::get<PcKrigingModel>(impl_).kriging().theta();
    case SurrogateBackend::Pce:
      // No fitted correlation: moderate unit-box length-scale stand-in.
      return Vector::Constant(dim, 4.0);
  }
  throw std::logic_error("ComponentModel::entropy_theta: empty model");
}

double ComponentModel::entropy_sigma2() const {
  switch (backend_) {
    case SurrogateBackend::Kriging:
      return std::get<KrigingModel>(impl_).sigma2();
    case SurrogateBackend::PcKriging:
      return std::get<PcKrigingModel>(impl_).kriging().sigma2();
    case SurrogateBackend::Pce:
      return 1.0;
  }
  throw std::logic_error("ComponentModel::entropy_sigma2: empty model");
}

const KrigingModel& ComponentModel::as_kriging() const {
  if (backend_ != SurrogateBackend::Kriging) {
    throw std::logic_error("ComponentModel: not a Kriging model");
  }
  return std::get<KrigingModel>(impl_);
}

const PceModel& ComponentModel::as_pce() const {
  if (backend_ != SurrogateBackend::Pce) {
    throw std::logic_error("ComponentModel: not a polynomial expansion");
  }
  return std::get<PceModel>(impl_);
}

const PcKrigingModel& ComponentModel::as_pc_kriging() const {
  if (backend_ != SurrogateBackend::PcKriging) {
    throw std::logic_error("ComponentModel: not a PC-Kriging model");
  }
  return std::get<PcKrigingModel>(impl_);
}

}  // namespace pckhdmr
