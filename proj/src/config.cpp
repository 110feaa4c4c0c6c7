#include "tfm/config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "tfm/error.hpp"

namespace tfm {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Thin accessor that remembers where in the tree it is, so every error names a full key.
class Reader {
 public:
  Reader(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsMap()) throw ConfigError(path_, "expected a mapping");
  }

  bool has(const std::string& key) const { return node_ && node_[key] && !node_[key].IsNull(); }

  Reader child(const std::string& key) const {
    if (!has(key)) throw ConfigError(join(path_, key), "missing required section");
    return Reader(node_[key], join(path_, key));
  }

  std::string text(const std::string& key) const {
    const YAML::Node n = scalar(key);
    return n.Scalar();
  }

  double quantity(const std::string& key, Dimension dim) const {
    return parse_quantity(text(key), dim, join(path_, key));
  }

  double number(const std::string& key) const { return quantity(key, Dimension::kDimensionless); }

  double number_or(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  int integer(const std::string& key) const {
    const double v = number(key);
    if (v != static_cast<int>(v)) throw ConfigError(join(path_, key), "expected an integer");
    return static_cast<int>(v);
  }

  std::vector<double> quantities(const std::string& key, Dimension dim) const {
    const std::string where = join(path_, key);
    if (!has(key)) throw ConfigError(where, "missing required key");
    const YAML::Node n = node_[key];
    if (!n.IsSequence()) throw ConfigError(where, "expected a list");
    std::vector<double> out;
    for (std::size_t k = 0; k < n.size(); ++k) {
      const std::string item = where + "[" + std::to_string(k) + "]";
      if (!n[k].IsScalar()) throw ConfigError(item, "expected a scalar");
      out.push_back(parse_quantity(n[k].Scalar(), dim, item));
    }
    return out;
  }

  std::vector<Reader> items(const std::string& key) const {
    const std::string where = join(path_, key);
    if (!has(key)) throw ConfigError(where, "missing required key");
    const YAML::Node n = node_[key];
    if (!n.IsSequence()) throw ConfigError(where, "expected a list");
    std::vector<Reader> out;
    for (std::size_t k = 0; k < n.size(); ++k) out.emplace_back(n[k], where + "[" + std::to_string(k) + "]");
    return out;
  }

  const std::string& path() const { return path_; }

 private:
  YAML::Node scalar(const std::string& key) const {
    if (!has(key)) throw ConfigError(join(path_, key), "missing required key");
    const YAML::Node n = node_[key];
    if (!n.IsScalar()) throw ConfigError(join(path_, key), "expected a scalar value");
    return n;
  }

  YAML::Node node_;
  std::string path_;
};

template <class F>
void checked(const std::string& key, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(key, e.what());
  }
}

std::vector<Rate> rates(const std::vector<double>& v) {
  std::vector<Rate> out;
  for (double x : v) out.emplace_back(x);
  return out;
}

ResonanceChain parse_chain(const Reader& r, const std::string& label, const DeviceConfig& c) {
  ResonanceChain ch;
  ch.label = label;
  ch.omega = AngularFrequency(r.quantity("omega", Dimension::kAngularFrequency));
  ch.decay = rates(r.quantities("decay", Dimension::kRate));
  ch.mu = r.has("mu") ? rates(r.quantities("mu", Dimension::kRate)) : std::vector<Rate>{};
  ch.kappa = SqrtRate(r.quantity("kappa", Dimension::kSqrtRate));
  ch.perimeter = c.perimeter;
  ch.group_velocity = c.group_velocity;
  checked(r.path(), [&] { ch.validate(); });
  return ch;
}

DispersionModel parse_dispersion(const Reader& r, const DeviceConfig& c) {
  const std::string model = r.has("model") ? r.text("model") : "linear";
  const Length length(r.has("length") ? r.quantity("length", Dimension::kLength) : c.perimeter.value());
  DispersionModel out;
  if (model == "linear") {
    LinearDispersion m;
    m.c1 = r.number_or("c1", 1.0);
    m.c2 = r.number_or("c2", -1.0);
    if (r.has("slope")) m.slope = r.quantity("slope", Dimension::kInverseDispersion);
    m.length = length;
    out = m;
  } else if (model == "taylor") {
    TaylorDispersion m;
    m.reference = AngularFrequency(r.quantity("reference", Dimension::kAngularFrequency));
    if (r.has("k1")) m.k1 = r.quantity("k1", Dimension::kInverseDispersion);
    if (r.has("k2")) m.k2 = r.quantity("k2", Dimension::kGroupVelocityDispersion);
    if (r.has("k3")) m.k3 = r.quantity("k3", Dimension::kThirdOrderDispersion);
    if (r.has("gamma0")) m.gamma0 = r.quantity("gamma0", Dimension::kNonlinearity);
    if (r.has("peak_power")) m.peak_power = Power(r.quantity("peak_power", Dimension::kPower));
    m.length = length;
    out = m;
  } else {
    throw ConfigError(join(r.path(), "model"), "expected 'linear' or 'taylor', got '" + model + "'");
  }
  checked(r.path(), [&] { validate(out); });
  return out;
}

void parse_search(const Reader& r, SearchConfig& s) {
  if (r.has("restarts")) s.restarts = r.integer("restarts");
  if (r.has("seed")) {
    const double v = r.number("seed");
    if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
      throw ConfigError(join(r.path(), "seed"), "expected a non-negative integer");
    s.seed = static_cast<std::uint64_t>(v);
  }
  if (r.has("mu_min")) s.mu.min = Rate(r.quantity("mu_min", Dimension::kRate));
  if (r.has("mu_max")) s.mu.max = Rate(r.quantity("mu_max", Dimension::kRate));
  if (r.has("mu_step")) s.mu.step = Rate(r.quantity("mu_step", Dimension::kRate));
  if (r.has("epsilon")) s.epsilon = r.number("epsilon");
  if (r.has("grid_points")) s.grid_points = r.integer("grid_points");
  if (r.has("verify_points")) s.verify_points = r.integer("verify_points");
  if (r.has("fit_mode")) {
    const std::string m = r.text("fit_mode");
    if (m == "magnitude") s.fit.mode = FitMode::kMagnitude;
    else if (m == "complex") s.fit.mode = FitMode::kComplex;
    else throw ConfigError(join(r.path(), "fit_mode"), "expected 'magnitude' or 'complex'");
  }
  if (r.has("gradient_tolerance")) s.fit.gradient_tolerance = r.number("gradient_tolerance");
  if (r.has("step_tolerance")) s.fit.step_tolerance = r.number("step_tolerance");
  if (r.has("max_iterations")) s.fit.max_iterations = r.integer("max_iterations");
  checked(r.path(), [&] { s.validate(); });
}

DeviceConfig parse_tree(const YAML::Node& root) {
  if (!root || !root.IsMap()) throw ConfigError("", "configuration must be a mapping");
  const Reader top(root, "");
  DeviceConfig c;

  const Reader dev = top.child("device");
  c.group_velocity = Speed(dev.quantity("group_velocity", Dimension::kSpeed));
  c.perimeter = Length(dev.quantity("perimeter", Dimension::kLength));
  if (!(c.group_velocity.value() > 0.0)) throw ConfigError("device.group_velocity", "must be positive");
  if (!(c.perimeter.value() > 0.0)) throw ConfigError("device.perimeter", "must be positive");

  if (top.has("pump") || top.has("resonances")) {
    c.has_model = true;
    const Reader p = top.child("pump");
    PumpSpec& ps = c.model.pump;
    ps.carrier = AngularFrequency(p.quantity("carrier", Dimension::kAngularFrequency));
    ps.sigma_p = AngularFrequency(p.quantity("sigma_p", Dimension::kAngularFrequency));
    ps.base_delay = Duration(p.quantity("base_delay", Dimension::kTime));
    for (const Reader& t : p.items("taps")) ps.taps.push_back({t.number("alpha"), t.number("phi")});
    checked("pump", [&] { ps.validate(); });

    const Reader res = top.child("resonances");
    c.model.idler = parse_chain(res.child("idler"), "idler", c);
    c.model.pump_resonance = parse_chain(res.child("pump"), "pump", c);
    c.model.signal = parse_chain(res.child("signal"), "signal", c);

    LinearDispersion def;
    def.length = c.perimeter;
    c.model.dispersion = top.has("dispersion") ? parse_dispersion(top.child("dispersion"), c) : DispersionModel(def);
  }

  if (top.has("grid")) {
    const Reader g = top.child("grid");
    if (g.has("half_span")) c.grid.half_span = AngularFrequency(g.quantity("half_span", Dimension::kAngularFrequency));
    if (g.has("points")) c.grid.points = g.integer("points");
    if (!(c.grid.half_span.value() > 0.0)) throw ConfigError("grid.half_span", "must be positive");
    if (c.grid.points < 8) throw ConfigError("grid.points", "need at least 8 points");
  }

  if (top.has("analysis")) {
    const Reader a = top.child("analysis");
    if (a.has("subspace")) c.analysis.subspace = a.integer("subspace");
    if (a.has("reported_modes")) c.analysis.reported_modes = a.integer("reported_modes");
    if (a.has("prominence")) c.analysis.pi.prominence = a.number("prominence");
    if (a.has("noise_floor")) c.analysis.pi.noise_floor = a.number("noise_floor");
    if (a.has("phase_mode")) {
      const std::string m = a.text("phase_mode");
      if (m == "discard") c.analysis.pi.mode = PhaseMode::kDiscardResidual;
      else if (m == "retain") c.analysis.pi.mode = PhaseMode::kRetain;
      else throw ConfigError("analysis.phase_mode", "expected 'discard' or 'retain'");
    }
    if (c.analysis.subspace < 1 || c.analysis.subspace > 10) throw ConfigError("analysis.subspace", "must be in [1, 10]");
    if (!(c.analysis.pi.prominence > 0.0 && c.analysis.pi.prominence <= 1.0))
      throw ConfigError("analysis.prominence", "must be in (0, 1]");
  }

  if (top.has("target")) {
    const Reader t = top.child("target");
    TargetSpec ts;
    ts.dimension = t.integer("dimension");
    if (!t.has("sigma")) throw ConfigError("target.sigma", "missing required key (a width or 'auto')");
    if (t.text("sigma") != "auto") ts.sigma = AngularFrequency(t.quantity("sigma", Dimension::kAngularFrequency));
    if (t.has("coefficients")) ts.coefficients = t.quantities("coefficients", Dimension::kDimensionless);
    c.target = ts;
    if (c.has_model) checked("target", [&] { c.target_state().validate(); });
  }

  if (top.has("pgr")) {
    const Reader g = top.child("pgr");
    if (g.has("n2")) c.pgr.n2 = g.quantity("n2", Dimension::kKerrIndex);
    if (g.has("a_eff")) c.pgr.a_eff = g.quantity("a_eff", Dimension::kArea);
    if (g.has("avg_power")) c.pgr.avg_power = Power(g.quantity("avg_power", Dimension::kPower));
    if (g.has("rep_rate")) c.pgr.rep_rate = Rate(g.quantity("rep_rate", Dimension::kRate));
  }

  if (top.has("mzi")) {
    const Reader m = top.child("mzi");
    MziOptions mo;
    mo.k_prime = m.number("k_prime");
    mo.phi_h1 = m.number_or("phi_h1", 0.0);
    mo.phi_h2 = m.number_or("phi_h2", 0.0);
    mo.phi_h3 = m.number_or("phi_h3", 0.0);
    if (m.has("l2")) mo.l2 = Length(m.quantity("l2", Dimension::kLength));
    c.mzi = mo;
    checked("mzi", [&] { c.mzi_spec().validate(); });
  }

  if (top.has("search")) {
    c.has_search = true;
    parse_search(top.child("search"), c.search);
  }
  return c;
}

void merge_into(YAML::Node base, const YAML::Node& over) {
  for (auto it = over.begin(); it != over.end(); ++it) {
    const std::string key = it->first.Scalar();
    if (it->second.IsMap() && base[key] && base[key].IsMap()) {
      merge_into(base[key], it->second);
    } else {
      base[key] = YAML::Clone(it->second);
    }
  }
}

YAML::Node parse_yaml(const std::string& text, const std::string& origin) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", origin + ": " + e.what());
  }
}

// Emission helpers.
void emit_q(YAML::Emitter& e, const char* key, double si, Dimension dim, const char* unit) {
  e << YAML::Key << key << YAML::Value << format_quantity(si, dim, unit);
}

void emit_n(YAML::Emitter& e, const char* key, double v) {
  e << YAML::Key << key << YAML::Value << format_quantity(v, Dimension::kDimensionless, "");
}

void emit_rates(YAML::Emitter& e, const char* key, const std::vector<Rate>& v) {
  e << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& r : v) e << format_quantity(r.value(), Dimension::kRate, "GHz");
  e << YAML::EndSeq;
}

void emit_chain(YAML::Emitter& e, const char* key, const ResonanceChain& ch) {
  e << YAML::Key << key << YAML::Value << YAML::BeginMap;
  emit_q(e, "omega", ch.omega.value(), Dimension::kAngularFrequency, "THz");
  emit_rates(e, "decay", ch.decay);
  emit_rates(e, "mu", ch.mu);
  emit_q(e, "kappa", ch.kappa.value(), Dimension::kSqrtRate, "sqrtTHz");
  e << YAML::EndMap;
}

void emit_taps(YAML::Emitter& e, const std::vector<Tap>& taps) {
  e << YAML::Key << "taps" << YAML::Value << YAML::BeginSeq;
  for (const auto& t : taps) {
    e << YAML::Flow << YAML::BeginMap;
    emit_n(e, "alpha", t.amplitude);
    emit_n(e, "phi", t.phase);
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;
}

}  // namespace

std::vector<Rate> MuSweep::values() const {
  std::vector<Rate> out;
  if (!(step.value() > 0.0)) return out;
  const int n = static_cast<int>(std::floor((max - min).value() / step.value() + 1e-9));
  for (int k = 0; k <= n; ++k) out.push_back(min + step * k);
  return out;
}

void SearchConfig::validate() const {
  if (restarts < 1) throw DomainError("inversion", "restarts must be at least 1");
  if (!(mu.step.value() > 0.0)) throw ConfigError("search.mu_step", "mu sweep step must be positive");
  if (mu.min.value() < 0.0 || mu.max < mu.min) throw ConfigError("search.mu_max", "mu sweep range is empty");
  if (!(epsilon > 0.0)) throw DomainError("inversion", "decoupling epsilon must be positive");
  if (grid_points < 16 || verify_points < 16) throw DomainError("inversion", "search grids need at least 16 points");
  if (fit.max_iterations < 1) throw DomainError("inversion", "max_iterations must be positive");
}

void DeviceConfig::require_model() const {
  if (!has_model) throw ConfigError("pump", "missing required section (pump and resonances)");
}

TargetState DeviceConfig::target_state() const {
  require_model();
  if (!target) throw ConfigError("target", "missing required section");
  TargetState t = TargetState::maximally_entangled(target->dimension, AngularFrequency(1.0), model.signal.omega,
                                                   model.idler.omega);
  if (!target->coefficients.empty()) t.coefficients = target->coefficients;
  t.sigma = target->sigma ? *target->sigma
                          : target_sigma_from_linewidths({model.signal, model.idler}, t.dimension, t.coefficients,
                                                         grid.half_span);
  return t;
}

MziCouplerSpec DeviceConfig::mzi_spec() const {
  if (!mzi) throw ConfigError("mzi", "missing required section");
  MziCouplerSpec s;
  s.k_prime = mzi->k_prime;
  s.phi_h1 = mzi->phi_h1;
  s.phi_h2 = mzi->phi_h2;
  s.phi_h3 = mzi->phi_h3;
  s.l1 = perimeter;
  s.l2 = mzi->l2 ? *mzi->l2 : perimeter / 2.0;
  s.group_velocity = group_velocity;
  return s;
}

FixedParams DeviceConfig::fixed_params() const {
  require_model();
  FixedParams f;
  f.taps = static_cast<int>(model.pump.taps.size());
  f.tau = model.pump.base_delay;
  f.carrier = model.pump.carrier;
  f.idler = model.idler;
  f.pump = model.pump_resonance;
  f.signal = model.signal;
  f.dispersion = model.dispersion;
  f.half_span = grid.half_span;
  return f;
}

PgrRaw DeviceConfig::pgr_raw() const {
  require_model();
  PgrRaw r;
  r.n2 = pgr.n2;
  r.a_eff = pgr.a_eff;
  r.avg_power = pgr.avg_power;
  r.rep_rate = pgr.rep_rate;
  r.group_velocity = group_velocity;
  r.perimeter = perimeter;
  r.omega_p0 = model.pump_resonance.omega;
  r.pump_decay = model.pump_resonance.decay;
  r.kappa = model.pump_resonance.kappa;
  return r;
}

DeviceConfig parse_config(const std::string& yaml_text) { return parse_tree(parse_yaml(yaml_text, "<text>")); }

DeviceConfig load_config(const std::vector<std::string>& paths) {
  if (paths.empty()) throw ConfigError("", "no configuration file given");
  YAML::Node merged(YAML::NodeType::Map);
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw ConfigError("", "cannot read configuration file '" + p + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const YAML::Node doc = parse_yaml(ss.str(), p);
    if (doc.IsNull()) continue;
    if (!doc.IsMap()) throw ConfigError("", p + ": configuration must be a mapping");
    merge_into(merged, doc);
  }
  return parse_tree(merged);
}

std::string serialize_config(const DeviceConfig& c) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "device" << YAML::Value << YAML::BeginMap;
  emit_q(e, "group_velocity", c.group_velocity.value(), Dimension::kSpeed, "m/s");
  emit_q(e, "perimeter", c.perimeter.value(), Dimension::kLength, "mm");
  e << YAML::EndMap;

  if (c.has_model) {
    const PumpSpec& p = c.model.pump;
    e << YAML::Key << "pump" << YAML::Value << YAML::BeginMap;
    emit_q(e, "carrier", p.carrier.value(), Dimension::kAngularFrequency, "THz");
    emit_q(e, "sigma_p", p.sigma_p.value(), Dimension::kAngularFrequency, "2pi*GHz");
    emit_q(e, "base_delay", p.base_delay.value(), Dimension::kTime, "ps");
    emit_taps(e, p.taps);
    e << YAML::EndMap;

    e << YAML::Key << "resonances" << YAML::Value << YAML::BeginMap;
    emit_chain(e, "idler", c.model.idler);
    emit_chain(e, "pump", c.model.pump_resonance);
    emit_chain(e, "signal", c.model.signal);
    e << YAML::EndMap;

    e << YAML::Key << "dispersion" << YAML::Value << YAML::BeginMap;
    if (const auto* l = std::get_if<LinearDispersion>(&c.model.dispersion)) {
      e << YAML::Key << "model" << YAML::Value << "linear";
      emit_n(e, "c1", l->c1);
      emit_n(e, "c2", l->c2);
      emit_q(e, "slope", l->slope, Dimension::kInverseDispersion, "ps/mm");
      emit_q(e, "length", l->length.value(), Dimension::kLength, "mm");
    } else {
      const auto& t = std::get<TaylorDispersion>(c.model.dispersion);
      e << YAML::Key << "model" << YAML::Value << "taylor";
      emit_q(e, "reference", t.reference.value(), Dimension::kAngularFrequency, "THz");
      emit_q(e, "k1", t.k1, Dimension::kInverseDispersion, "s/m");
      emit_q(e, "k2", t.k2, Dimension::kGroupVelocityDispersion, "s2/m");
      emit_q(e, "k3", t.k3, Dimension::kThirdOrderDispersion, "s3/m");
      emit_q(e, "gamma0", t.gamma0, Dimension::kNonlinearity, "1/(W*m)");
      emit_q(e, "peak_power", t.peak_power.value(), Dimension::kPower, "W");
      emit_q(e, "length", t.length.value(), Dimension::kLength, "mm");
    }
    e << YAML::EndMap;
  }

  e << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  emit_q(e, "half_span", c.grid.half_span.value(), Dimension::kAngularFrequency, "GHz");
  e << YAML::Key << "points" << YAML::Value << c.grid.points;
  e << YAML::EndMap;

  e << YAML::Key << "analysis" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "subspace" << YAML::Value << c.analysis.subspace;
  e << YAML::Key << "reported_modes" << YAML::Value << c.analysis.reported_modes;
  emit_n(e, "prominence", c.analysis.pi.prominence);
  emit_n(e, "noise_floor", c.analysis.pi.noise_floor);
  e << YAML::Key << "phase_mode" << YAML::Value
    << (c.analysis.pi.mode == PhaseMode::kDiscardResidual ? "discard" : "retain");
  e << YAML::EndMap;

  if (c.target) {
    e << YAML::Key << "target" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "dimension" << YAML::Value << c.target->dimension;
    if (c.target->sigma) {
      emit_q(e, "sigma", c.target->sigma->value(), Dimension::kAngularFrequency, "2pi*GHz");
    } else {
      e << YAML::Key << "sigma" << YAML::Value << "auto";
    }
    if (!c.target->coefficients.empty()) {
      e << YAML::Key << "coefficients" << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (double v : c.target->coefficients) e << format_quantity(v, Dimension::kDimensionless, "");
      e << YAML::EndSeq;
    }
    e << YAML::EndMap;
  }

  e << YAML::Key << "pgr" << YAML::Value << YAML::BeginMap;
  emit_q(e, "n2", c.pgr.n2, Dimension::kKerrIndex, "m2/W");
  emit_q(e, "a_eff", c.pgr.a_eff, Dimension::kArea, "um2");
  emit_q(e, "avg_power", c.pgr.avg_power.value(), Dimension::kPower, "mW");
  emit_q(e, "rep_rate", c.pgr.rep_rate.value(), Dimension::kRate, "MHz");
  e << YAML::EndMap;

  if (c.mzi) {
    e << YAML::Key << "mzi" << YAML::Value << YAML::BeginMap;
    emit_n(e, "k_prime", c.mzi->k_prime);
    emit_n(e, "phi_h1", c.mzi->phi_h1);
    emit_n(e, "phi_h2", c.mzi->phi_h2);
    emit_n(e, "phi_h3", c.mzi->phi_h3);
    if (c.mzi->l2) emit_q(e, "l2", c.mzi->l2->value(), Dimension::kLength, "mm");
    e << YAML::EndMap;
  }

  if (c.has_search) {
    const SearchConfig& s = c.search;
    e << YAML::Key << "search" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "restarts" << YAML::Value << s.restarts;
    e << YAML::Key << "seed" << YAML::Value << s.seed;
    emit_q(e, "mu_min", s.mu.min.value(), Dimension::kRate, "GHz");
    emit_q(e, "mu_max", s.mu.max.value(), Dimension::kRate, "GHz");
    emit_q(e, "mu_step", s.mu.step.value(), Dimension::kRate, "GHz");
    emit_n(e, "epsilon", s.epsilon);
    e << YAML::Key << "grid_points" << YAML::Value << s.grid_points;
    e << YAML::Key << "verify_points" << YAML::Value << s.verify_points;
    e << YAML::Key << "fit_mode" << YAML::Value << (s.fit.mode == FitMode::kMagnitude ? "magnitude" : "complex");
    emit_n(e, "gradient_tolerance", s.fit.gradient_tolerance);
    emit_n(e, "step_tolerance", s.fit.step_tolerance);
    e << YAML::Key << "max_iterations" << YAML::Value << s.fit.max_iterations;
    e << YAML::EndMap;
  }
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

std::string serialize_free_params(const FreeParams& p) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "pump" << YAML::Value << YAML::BeginMap;
  emit_q(e, "sigma_p", p.sigma_p.value(), Dimension::kAngularFrequency, "2pi*GHz");
  emit_taps(e, p.taps);
  e << YAML::EndMap;
  e << YAML::Key << "resonances" << YAML::Value << YAML::BeginMap;
  for (const char* key : {"idler", "signal"}) {
    e << YAML::Key << key << YAML::Value << YAML::BeginMap;
    emit_rates(e, "mu", p.mu_signal_idler);
    e << YAML::EndMap;
  }
  e << YAML::Key << "pump" << YAML::Value << YAML::BeginMap;
  emit_rates(e, "mu", p.mu_pump);
  e << YAML::EndMap;
  e << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace tfm
