#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace alp::cli {

namespace pt = boost::property_tree;

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected a number, got '" + text + "'");
  }
}

Index to_index(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v)) throw ConfigError("'" + key + "': expected an integer, got '" + text + "'");
  return static_cast<Index>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = lower(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("'" + key + "': expected a boolean, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ConfigError("'" + key + "': empty list entry");
    out.push_back(to_double(key, item.substr(first, last - first + 1)));
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    if (!v) return std::nullopt;
    used_.push_back(key);
    return *v;
  }
  std::string str(const std::string& key, const std::string& fallback) const {
    return raw(key).value_or(fallback);
  }
  double num(const std::string& key, double fallback) const {
    auto v = raw(key);
    return v ? to_double(key, *v) : fallback;
  }
  Index idx(const std::string& key, Index fallback) const {
    auto v = raw(key);
    return v ? to_index(key, *v) : fallback;
  }
  bool flag(const std::string& key, bool fallback) const {
    auto v = raw(key);
    return v ? to_bool(key, *v) : fallback;
  }
  std::vector<double> list(const std::string& key) const {
    auto v = raw(key);
    return v ? to_list(key, *v) : std::vector<double>{};
  }

  void reject_unknown() const {
    for (const auto& [section, body] : tree_) {
      if (body.empty()) throw ConfigError("key '" + section + "' is outside any [section]");
      for (const auto& [key, value] : body) {
        const std::string full = section + "." + key;
        bool known = false;
        for (const auto& u : used_) known = known || u == full;
        if (!known) throw ConfigError("unknown configuration key '" + full + "'");
      }
    }
  }

 private:
  const pt::ptree& tree_;
  mutable std::vector<std::string> used_;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

AlpConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("malformed configuration: " + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }
  const Reader r(tree);
  AlpConfig c;
  c.source = tree;

  try {
    c.problem.kind = parse_problem_kind(lower(r.str("problem.kind", "kdv")));
    c.problem.alpha = r.num("problem.alpha", 0.0);

    const std::string mesh_type = lower(r.str("mesh.type", "interval"));
    if (mesh_type == "interval") c.mesh.type = MeshType::Interval;
    else if (mesh_type == "rectangle") c.mesh.type = MeshType::Rectangle;
    else if (mesh_type == "t_shape") c.mesh.type = MeshType::TShape;
    else if (mesh_type == "file") c.mesh.type = MeshType::File;
    else throw ConfigError("unknown mesh.type '" + mesh_type + "'");
    c.mesh.boundary = parse_boundary_kind(lower(r.str("mesh.boundary", "dirichlet")));
    c.mesh.a = r.num("mesh.a", c.mesh.a);
    c.mesh.b = r.num("mesh.b", c.mesh.b);
    c.mesh.n_elements = r.idx("mesh.n_elements", c.mesh.n_elements);
    c.mesh.x0 = r.num("mesh.x0", c.mesh.x0);
    c.mesh.x1 = r.num("mesh.x1", c.mesh.x1);
    c.mesh.y0 = r.num("mesh.y0", c.mesh.y0);
    c.mesh.y1 = r.num("mesh.y1", c.mesh.y1);
    c.mesh.nx = r.idx("mesh.nx", c.mesh.nx);
    c.mesh.ny = r.idx("mesh.ny", c.mesh.ny);
    c.mesh.t_shape.stem_width = r.num("mesh.stem_width", c.mesh.t_shape.stem_width);
    c.mesh.t_shape.stem_height = r.num("mesh.stem_height", c.mesh.t_shape.stem_height);
    c.mesh.t_shape.bar_width = r.num("mesh.bar_width", c.mesh.t_shape.bar_width);
    c.mesh.t_shape.bar_height = r.num("mesh.bar_height", c.mesh.t_shape.bar_height);
    c.mesh.cells_per_unit = r.num("mesh.cells_per_unit", c.mesh.cells_per_unit);
    c.mesh.node_file = r.str("mesh.node_file", "");
    c.mesh.element_file = r.str("mesh.element_file", "");

    const std::string init_type = lower(r.str("initial.type", "one_soliton"));
    if (init_type == "one_soliton") c.initial.type = InitialType::OneSoliton;
    else if (init_type == "n_soliton") c.initial.type = InitialType::NSoliton;
    else if (init_type == "gaussians") c.initial.type = InitialType::Gaussians;
    else throw ConfigError("unknown initial.type '" + init_type + "'");
    c.initial.beta = r.num("initial.beta", c.initial.beta);
    c.initial.x0 = r.num("initial.x0", c.initial.x0);
    c.initial.solitons.c = r.list("initial.c");
    c.initial.solitons.k = r.list("initial.k");
    c.initial.centers_x = r.list("initial.centers_x");
    c.initial.centers_y = r.list("initial.centers_y");
    c.initial.sharpness = r.num("initial.sharpness", c.initial.sharpness);
    c.initial.pre_evolve_steps = r.idx("initial.pre_evolve_steps", 0);
    c.initial.pre_evolve_dt = r.num("initial.pre_evolve_dt", c.initial.pre_evolve_dt);

    AlpOptions& o = c.alp;
    o.n_modes = r.idx("alp.n_modes_M", o.n_modes);
    o.dt = r.num("alp.dt", o.dt);
    o.t_final = r.num("alp.t_final", o.t_final);
    const std::string chi = lower(r.str("alp.chi", "1"));
    if (chi == "auto") {
      o.calibrate_chi = true;
      o.chi = r.num("alp.chi_initial", 1.0);
    } else {
      o.chi = to_double("alp.chi", chi);
      r.num("alp.chi_initial", 1.0);
    }
    o.epsilon0 = r.num("alp.epsilon0", o.epsilon0);
    o.chi_max = r.num("alp.chi_max", o.chi_max);
    o.eigenvalue_law = parse_eigenvalue_law(lower(r.str("alp.eigenvalue_chi_variant", "proposition")));
    o.step_method = parse_step_method(lower(r.str("alp.step_method", "taylor2")));
    o.promote_modes = r.flag("alp.promote_modes", true);
    o.reorthonormalize = r.flag("alp.reorthonormalize", false);
    o.reorthonormalize_threshold = r.num("alp.reorthonormalize_threshold", 1e-6);
    o.initial_reconstruction =
        parse_initial_reconstruction(lower(r.str("alp.initial_reconstruction", "alpha")));
    const Index default_stride = c.mesh.type == MeshType::Interval ? 1 : 5;
    o.snapshot_stride = r.idx("output.snapshot_stride", default_stride);

    const std::string ref = lower(r.str("reference.type", "auto"));
    if (ref == "none") c.reference.type = ReferenceType::None;
    else if (ref == "exact") c.reference.type = ReferenceType::Exact;
    else if (ref == "fkpp") c.reference.type = ReferenceType::Fkpp;
    else if (ref == "auto") {
      c.reference.type = c.problem.kind == ProblemKind::Fkpp ? ReferenceType::Fkpp
                                                             : ReferenceType::Exact;
    } else {
      throw ConfigError("unknown reference.type '" + ref + "'");
    }
    c.reference.dt = r.num("reference.dt", 0.0);
    c.reference.lumped_mass = r.flag("reference.lumped_mass", true);
    c.reference.travel_distance = r.num("reference.travel_distance", 0.0);

    c.output.name = r.str("output.name", c.output.name);
    c.output.frobenius_reference_modes = r.idx("output.frobenius_reference_modes", 0);
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  r.reject_unknown();

  try {
    c.alp.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  check(c.problem.kind == ProblemKind::KdV || c.problem.alpha > 0.0,
        "problem.alpha must be positive for fkpp");
  check(c.initial.type != InitialType::NSoliton ||
            (c.initial.solitons.c.size() == c.initial.solitons.k.size() &&
             !c.initial.solitons.k.empty()),
        "initial.c and initial.k must be non-empty lists of equal length");
  check(c.initial.type != InitialType::Gaussians || !c.initial.centers_x.empty(),
        "initial.centers_x is required for gaussians");
  check(c.initial.centers_y.empty() || c.initial.centers_y.size() == c.initial.centers_x.size(),
        "initial.centers_y must match initial.centers_x");
  check(c.initial.pre_evolve_steps >= 0, "initial.pre_evolve_steps must be nonnegative");
  check(c.reference.type != ReferenceType::Exact || c.problem.kind == ProblemKind::KdV,
        "exact reference is only available for kdv");
  check(c.reference.type != ReferenceType::Fkpp || c.problem.kind == ProblemKind::Fkpp,
        "fkpp reference requires problem.kind = fkpp");
  check(c.reference.dt >= 0.0, "reference.dt must be nonnegative");
  check(c.output.frobenius_reference_modes >= 0, "output.frobenius_reference_modes must be >= 0");
  check(!c.output.name.empty() && c.output.name.find('/') == std::string::npos,
        "output.name must be a plain file stem");
  return c;
}

AlpConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(AlpConfig& config, const std::string& param, const std::string& value) {
  if (param == "n_modes_M") {
    config.alp.n_modes = to_index(param, value);
  } else if (param == "dt") {
    config.alp.dt = to_double(param, value);
  } else {
    throw ConfigError("unsupported sweep parameter '" + param + "' (use n_modes_M or dt)");
  }
  try {
    config.alp.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  config.source.put(pt::ptree::path_type(param == "dt" ? "alp.dt" : "alp.n_modes_M", '.'), value);
}

}  // namespace alp::cli
