#include "hpq/cli/config.hpp"

#include <set>

#include "hpq/errors.hpp"
#include "hpq/tolerance.hpp"

namespace hpq::cli {

namespace {

Decimal decimal_of(const toml::Value& v) {
  if (v.is_number()) return Decimal(v.number().text);
  if (v.is_string()) {
    (void)Real::parse(v.string(), 64);  // validates
    return Decimal(v.string());
  }
  throw ConfigError("expected a decimal number");
}

void reject_unknown(const std::map<std::string, toml::Value>& table, const std::string& section,
                    const std::set<std::string>& known) {
  for (const auto& [k, v] : table) {
    if (!known.count(k)) throw ConfigError("unknown key '" + k + "' in [" + section + "]");
  }
}

const toml::Value* find(const std::map<std::string, toml::Value>& t, const std::string& key) {
  auto it = t.find(key);
  return it == t.end() ? nullptr : &it->second;
}

double positive(const toml::Value& v, const std::string& name) {
  const double x = v.number().as_double();
  if (!(x > 0.0)) throw ConfigError(name + " must be positive");
  return x;
}

void read_system(const std::map<std::string, toml::Value>& t, RunConfig& cfg) {
  reject_unknown(t, "system", {"mode", "intervals", "density", "density_values", "branch_points"});
  NikishinSystem sys;
  if (auto* m = find(t, "mode")) {
    const std::string& mode = m->string();
    if (mode == "nikishin") {
      sys.mode = SystemMode::nikishin;
    } else if (mode == "angelesco") {
      sys.mode = SystemMode::angelesco_algebraic;
    } else {
      throw ConfigError("system.mode must be \"nikishin\" or \"angelesco\"");
    }
  }
  if (auto* iv = find(t, "intervals")) {
    for (const auto& pair : iv->array()) {
      const auto& a = pair.array();
      if (a.size() != 2) throw ConfigError("each interval is a pair [c, d]");
      sys.intervals.push_back({decimal_of(a[0]), decimal_of(a[1])});
    }
  } else if (sys.mode == SystemMode::nikishin) {
    sys.intervals.push_back({Decimal("1.5"), Decimal("2.5")});
  }
  Density::Kind kind = Density::Kind::constant;
  if (auto* d = find(t, "density")) {
    const std::string& k = d->string();
    if (k == "constant") {
      kind = Density::Kind::constant;
    } else if (k == "polynomial") {
      kind = Density::Kind::polynomial;
    } else if (k == "chebyshev_table") {
      kind = Density::Kind::chebyshev_table;
    } else {
      throw ConfigError("system.density must be constant, polynomial or chebyshev_table");
    }
  }
  const toml::Value* values = find(t, "density_values");
  for (size_t j = 0; j < sys.intervals.size(); ++j) {
    Density den;
    den.kind = kind;
    if (values != nullptr) {
      const auto& per = values->array();
      if (per.size() != sys.intervals.size()) throw ConfigError("density_values needs one list per interval");
      den.values.clear();
      for (const auto& v : per[j].array()) den.values.push_back(decimal_of(v));
    } else if (kind != Density::Kind::constant) {
      throw ConfigError("density_values is required for non-constant densities");
    }
    sys.densities.push_back(std::move(den));
  }
  if (auto* bp = find(t, "branch_points")) {
    const auto& pts = bp->array();
    if (pts.size() != 2 || pts[0].array().size() != 2 || pts[1].array().size() != 2) {
      throw ConfigError("branch_points is [[a_re, a_im], [b_re, b_im]]");
    }
    sys.a_re = decimal_of(pts[0].array()[0]);
    sys.a_im = decimal_of(pts[0].array()[1]);
    sys.b_re = decimal_of(pts[1].array()[0]);
    sys.b_im = decimal_of(pts[1].array()[1]);
  }
  cfg.system = std::move(sys);
}

void read_run(const std::map<std::string, toml::Value>& t, RunConfig& cfg) {
  reject_unknown(t, "run", {"n", "cells", "precision", "output", "seed", "probes", "figure_n"});
  if (auto* v = find(t, "n")) {
    cfg.n_list.clear();
    if (v->is_array()) {
      for (const auto& x : v->array()) cfg.n_list.push_back(static_cast<int>(x.number().as_int()));
    } else {
      cfg.n_list.push_back(static_cast<int>(v->number().as_int()));
    }
  }
  if (auto* v = find(t, "cells")) cfg.cells = static_cast<int>(v->number().as_int());
  if (auto* v = find(t, "precision")) cfg.precision = static_cast<Precision>(v->number().as_int());
  if (auto* v = find(t, "output")) cfg.output_dir = v->string();
  if (auto* v = find(t, "seed")) cfg.seed = static_cast<uint64_t>(v->number().as_int());
  if (auto* v = find(t, "probes")) cfg.probes = static_cast<int>(v->number().as_int());
  if (auto* v = find(t, "figure_n")) cfg.figure_n = static_cast<int>(v->number().as_int());
}

void read_tolerances(const std::map<std::string, toml::Value>& t, RunConfig& cfg) {
  reject_unknown(t, "tolerances", {"equilibrium", "route_hausdorff", "energy", "solver_gap", "weak_distance"});
  if (auto* v = find(t, "equilibrium")) cfg.tol.equilibrium = positive(*v, "tolerances.equilibrium");
  if (auto* v = find(t, "route_hausdorff")) cfg.tol.route_hausdorff = positive(*v, "tolerances.route_hausdorff");
  if (auto* v = find(t, "energy")) cfg.tol.energy = positive(*v, "tolerances.energy");
  if (auto* v = find(t, "solver_gap")) cfg.tol.solver_gap = positive(*v, "tolerances.solver_gap");
  if (auto* v = find(t, "weak_distance")) cfg.tol.weak_distance = positive(*v, "tolerances.weak_distance");
}

}  // namespace

void RunConfig::validate() const {
  system.validate();
  if (n_list.empty()) throw ConfigError("run.n must list at least one order");
  for (size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 0) throw ConfigError("run.n entries must be non-negative");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ConfigError("run.n must be strictly increasing");
  }
  if (cells < 50) throw ConfigError("run.cells must be at least 50 per interval");
  if (precision != 0 && precision < kMinPrecision) {
    throw ConfigError("precision must be at least " + std::to_string(kMinPrecision) + " bits");
  }
  if (probes < 0) throw ConfigError("run.probes must be non-negative");
  if (figure_n < 1) throw ConfigError("run.figure_n must be positive");
  if (output_dir.empty()) throw ConfigError("run.output must be a directory path");
  for (double t : {tol.equilibrium, tol.route_hausdorff, tol.energy, tol.solver_gap, tol.weak_distance}) {
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  }
}

Precision RunConfig::precision_for(int n) const { return precision > 0 ? precision : hp_default_precision(n); }

RunConfig config_from_document(const toml::Document& doc) {
  RunConfig cfg;
  for (const auto& [section, table] : doc) {
    if (section.empty()) {
      if (!table.empty()) throw ConfigError("keys must live in [system], [run] or [tolerances]");
    } else if (section == "system") {
      read_system(table, cfg);
    } else if (section == "run") {
      read_run(table, cfg);
    } else if (section == "tolerances") {
      read_tolerances(table, cfg);
    } else {
      throw ConfigError("unknown section [" + section + "]");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) { return config_from_document(toml::parse_file(path)); }

void apply_overrides(RunConfig& cfg, const Overrides& o, const char* env_precision) {
  if (o.n) {
    cfg.n_list = {*o.n};
    if (*o.n > 0) cfg.figure_n = *o.n;
  }
  if (o.cells) cfg.cells = *o.cells;
  if (o.out) cfg.output_dir = *o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.precision) {
    cfg.precision = static_cast<Precision>(*o.precision);
  } else if (cfg.precision == 0 && env_precision != nullptr && *env_precision != '\0') {
    try {
      size_t used = 0;
      const long bits = std::stol(env_precision, &used);
      if (env_precision[used] != '\0') throw std::invalid_argument("trailing");
      cfg.precision = static_cast<Precision>(bits);
    } catch (const std::exception&) {
      throw ConfigError(std::string("HPQ_PRECISION_BITS is not an integer: ") + env_precision);
    }
  }
}

}  // namespace hpq::cli
