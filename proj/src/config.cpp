#include "pff/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pff/errors.hpp"

namespace pff {

using nlohmann::json;

namespace {

struct Name {
  ScenarioKind kind;
  const char* text;
};
constexpr Name kScenarioNames[] = {{ScenarioKind::mode_I, "mode_I"},
                                   {ScenarioKind::mode_II, "mode_II"},
                                   {ScenarioKind::brazilian, "brazilian"},
                                   {ScenarioKind::conchoidal, "conchoidal"},
                                   {ScenarioKind::bar_1d, "bar_1d"}};

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Reads one JSON object, remembering which keys were consumed.
class Block {
public:
  Block(const json& obj, std::string path, const std::string& text) : obj_(obj), path_(std::move(path)), text_(text) {
    if (!obj_.is_object()) fail("expected an object", "");
  }

  [[noreturn]] void fail(const std::string& what, const std::string& key) const {
    const std::string full = key.empty() ? path_ : (path_.empty() ? key : path_ + "." + key);
    throw ParseError(what, line_of(key), full);
  }

  int line_of(const std::string& key) const {
    std::size_t from = 0;
    if (!path_.empty()) {
      const auto last = path_.substr(path_.rfind('.') == std::string::npos ? 0 : path_.rfind('.') + 1);
      const auto p = text_.find("\"" + last + "\"");
      if (p != std::string::npos) from = p;
    }
    if (key.empty()) return line_of_offset(text_, from);
    const auto p = text_.find("\"" + key + "\"", from);
    return p == std::string::npos ? 0 : line_of_offset(text_, p);
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) fail("expected a number", key);
      out = v->get<double>();
    }
  }
  void number(const std::string& key, std::optional<double>& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) fail("expected a number", key);
      out = v->get<double>();
    }
  }
  void integer(const std::string& key, int& out) {
    if (const json* v = get(key)) {
      if (!v->is_number_integer()) fail("expected an integer", key);
      out = v->get<int>();
    }
  }
  void boolean(const std::string& key, bool& out) {
    if (const json* v = get(key)) {
      if (!v->is_boolean()) fail("expected true or false", key);
      out = v->get<bool>();
    }
  }
  void string(const std::string& key, std::string& out) {
    if (const json* v = get(key)) {
      if (!v->is_string()) fail("expected a string", key);
      out = v->get<std::string>();
    }
  }
  template <class E>
  void choice(const std::string& key, E& out, std::initializer_list<std::pair<const char*, E>> options) {
    std::string s;
    if (!has(key)) {
      seen_.insert(key);
      return;
    }
    string(key, s);
    for (const auto& [name, value] : options)
      if (s == name) {
        out = value;
        return;
      }
    fail("unsupported value '" + s + "'", key);
  }
  Block child(const std::string& key) {
    const json* v = get(key);
    return Block(v ? *v : empty_, path_.empty() ? key : path_ + "." + key, text_);
  }

  void reject_unknown() const {
    for (const auto& [k, v] : obj_.items())
      if (!seen_.count(k)) fail("unknown key", k);
  }

private:
  inline static const json empty_ = json::object();
  const json& obj_;
  std::string path_;
  const std::string& text_;
  std::set<std::string> seen_;
};

ScenarioConfig defaults_for(ScenarioKind kind) {
  ScenarioConfig c;
  c.scenario = kind;
  c.name = to_string(kind);
  c.output.dir = "runs/" + c.name;
  switch (kind) {
    case ScenarioKind::mode_I:
    case ScenarioKind::mode_II:
      c.evolution.lc_mm = 4.0;
      c.evolution.du_mm = 1e-4;
      c.evolution.steps = 1000;
      break;
    case ScenarioKind::brazilian:
      c.material.E_MPa = 50000.0;
      c.material.nu = 0.2;
      c.evolution.Gc_N_per_mm = 0.07;
      c.evolution.lc_mm = 4.0;
      c.evolution.du_mm = 2e-4;
      c.evolution.steps = 600;
      break;
    case ScenarioKind::conchoidal:
      c.material.E_MPa = 250000.0;
      c.material.nu = 0.25;
      c.material.plane_mode = PlaneMode::full_3d;
      c.geometry.nx = 20;
      c.geometry.ny = 20;
      c.evolution.Gc_N_per_mm = 1.0;
      c.evolution.lc_mm = 200.0;
      c.evolution.du_mm = 1e-4;
      c.evolution.steps = 400;
      break;
    case ScenarioKind::bar_1d:
      c.material.plane_mode = PlaneMode::full_3d;
      c.evolution.lc_mm = 1.0;
      c.evolution.steps = 40;
      break;
  }
  return c;
}

ScenarioKind parse_scenario(const std::string& s, const Block& b) {
  for (const auto& n : kScenarioNames)
    if (s == n.text) return n.kind;
  b.fail("unsupported scenario '" + s + "'", "scenario");
}

ScenarioConfig from_json(const json& root, const std::string& text) {
  Block top(root, "", text);
  std::string scen;
  top.string("scenario", scen);
  if (scen.empty()) top.fail("missing scenario", "scenario");
  ScenarioConfig c = defaults_for(parse_scenario(scen, top));
  top.string("name", c.name);

  {
    Block g = top.child("geometry");
    auto& G = c.geometry;
    g.number("width_mm", G.width_mm);
    g.number("height_mm", G.height_mm);
    g.integer("nx", G.nx);
    g.integer("ny", G.ny);
    g.number("slit_length_mm", G.slit_length_mm);
    if (g.has("refine")) {
      Block r = g.child("refine");
      G.refine.enabled = true;
      r.number("h_mm", G.refine.h_mm);
      r.number("x_min_mm", G.refine.x_min_mm);
      r.number("x_max_mm", G.refine.x_max_mm);
      r.number("y_min_mm", G.refine.y_min_mm);
      r.number("y_max_mm", G.refine.y_max_mm);
      r.reject_unknown();
    } else {
      g.get("refine");
    }
    g.number("diameter_mm", G.diameter_mm);
    g.integer("rings", G.rings);
    G.arc_width_mm = 0.1 * G.diameter_mm;
    g.number("arc_width_mm", G.arc_width_mm);
    g.boolean("induced_crack", G.induced_crack);
    g.number("length_mm", G.length_mm);
    g.number("depth_mm", G.depth_mm);
    g.number("block_height_mm", G.block_height_mm);
    g.integer("nz", G.nz);
    g.number("patch_mm", G.patch_mm);
    g.number("half_length_mm", G.half_length_mm);
    g.integer("elements", G.elements);
    g.reject_unknown();
  }
  {
    Block m = top.child("material");
    auto& M = c.material;
    m.string("model", M.model);
    if (M.model != "linear" && M.model != "neo_hooke" && M.model != "mooney_rivlin")
      m.fail("unsupported value '" + M.model + "'", "model");
    m.number("E_MPa", M.E_MPa);
    m.number("nu", M.nu);
    m.choice<PlaneMode>("plane_mode", M.plane_mode,
                        {{"plane_stress", PlaneMode::plane_stress},
                         {"plane_strain", PlaneMode::plane_strain},
                         {"full_3d", PlaneMode::full_3d}});
    m.string("stress_split", M.stress_split);
    if (M.stress_split != "auto" && M.stress_split != "none" && M.stress_split != "KG" && M.stress_split != "lambda_mu")
      m.fail("unsupported value '" + M.stress_split + "'", "stress_split");
    m.choice<FiniteSplit>("finite_split", M.finite_split,
                          {{"none", FiniteSplit::none}, {"invariant", FiniteSplit::invariant}, {"stretch", FiniteSplit::stretch}});
    m.number("residual_stiffness", M.residual_stiffness);
    m.number("thickness_mm", M.thickness_mm);
    m.number("k", M.k);
    m.reject_unknown();
  }
  {
    Block d = top.child("driving_force");
    auto& D = c.drive;
    std::string model = to_string(D.model);
    d.string("model", model);
    try {
      D.model = parse_drive_kind(model);
    } catch (const NonPositiveParameter&) {
      d.fail("unsupported value '" + model + "'", "model");
    }
    d.number("sigma_c_MPa", D.sigma_c_MPa);
    d.number("tau_c_MPa", D.tau_c_MPa);
    d.number("Rm_t_MPa", D.Rm_t_MPa);
    d.number("Rm_c_MPa", D.Rm_c_MPa);
    d.number("m", D.m);
    d.number("eps_c", D.eps_c);
    d.number("lambda_c", D.lambda_c);
    d.choice<TrescaForm>("tresca_form", D.tresca_form,
                         {{"principal", TrescaForm::principal},
                          {"tau_principal", TrescaForm::tau_principal},
                          {"tau_deviatoric", TrescaForm::tau_deviatoric}});
    d.choice<DriveStress>("stress", D.stress, {{"effective", DriveStress::effective}, {"degraded", DriveStress::degraded}});
    d.reject_unknown();
  }
  {
    Block e = top.child("evolution");
    auto& E = c.evolution;
    e.number("lc_mm", E.lc_mm);
    const bool per_mm = e.has("Gc_N_per_mm"), per_m = e.has("Gc_N_per_m");
    if (per_mm && per_m) e.fail("give Gc in one unit only", "Gc_N_per_m");
    e.number("Gc_N_per_mm", E.Gc_N_per_mm);
    if (per_m) {
      double v = 0.0;
      e.number("Gc_N_per_m", v);
      E.Gc_N_per_mm = v * 1e-3;
    } else {
      e.get("Gc_N_per_m");
    }
    e.number("c_rule", E.c_rule);
    e.number("dt_s", E.dt_s);
    e.number("du_mm", E.du_mm);
    e.integer("steps", E.steps);
    e.boolean("stop_on_failure", E.stop_on_failure);
    e.number("newton_tol", E.newton_tol);
    e.reject_unknown();
  }
  {
    Block o = top.child("output");
    o.string("dir", c.output.dir);
    o.integer("vtk_every", c.output.vtk_every);
    o.reject_unknown();
  }
  top.reject_unknown();
  return c;
}

const char* plane_name(PlaneMode m) {
  switch (m) {
    case PlaneMode::plane_stress:
      return "plane_stress";
    case PlaneMode::plane_strain:
      return "plane_strain";
    case PlaneMode::full_3d:
      return "full_3d";
  }
  return "";
}

const char* finite_name(FiniteSplit s) {
  switch (s) {
    case FiniteSplit::none:
      return "none";
    case FiniteSplit::invariant:
      return "invariant";
    case FiniteSplit::stretch:
      return "stretch";
  }
  return "";
}

const char* tresca_name(TrescaForm t) {
  switch (t) {
    case TrescaForm::principal:
      return "principal";
    case TrescaForm::tau_principal:
      return "tau_principal";
    case TrescaForm::tau_deviatoric:
      return "tau_deviatoric";
  }
  return "";
}

bool on_grid(double v, double lo, double hi, int n) {
  const double t = (v - lo) / (hi - lo) * n;
  return std::abs(t - std::round(t)) < 1e-9 * n;
}

}  // namespace

std::string to_string(ScenarioKind k) {
  for (const auto& n : kScenarioNames)
    if (n.kind == k) return n.text;
  return "unknown";
}

double GeometryConfig::crack_h(ScenarioKind kind) const {
  switch (kind) {
    case ScenarioKind::mode_I:
    case ScenarioKind::mode_II:
      return refine.enabled ? refine.h_mm : std::max(width_mm / nx, height_mm / ny);
    case ScenarioKind::brazilian:
      return 0.5 * diameter_mm / rings;
    case ScenarioKind::conchoidal:
      return std::max({length_mm / nx, depth_mm / ny, block_height_mm / nz});
    case ScenarioKind::bar_1d:
      return 2.0 * half_length_mm / elements;
  }
  return 0.0;
}

EnergySplit ScenarioConfig::mechanical_split() const {
  const auto& s = material.stress_split;
  if (s == "none") return EnergySplit::none;
  if (s == "KG") return EnergySplit::kg;
  if (s == "lambda_mu") return EnergySplit::lambda_mu;
  switch (drive.model) {
    case DriveKind::griffith:
      return EnergySplit::none;
    case DriveKind::kg_split:
      return EnergySplit::kg;
    default:
      return EnergySplit::lambda_mu;
  }
}

DrivingForceSpec ScenarioConfig::driving_force_spec() const {
  DrivingForceSpec s;
  s.kind = drive.model;
  s.lc = evolution.lc_mm;
  s.Gc = evolution.Gc_N_per_mm;
  const double E = material.E_MPa;
  const double sc = drive.sigma_c_MPa ? *drive.sigma_c_MPa
                                      : (E > 0 && s.Gc > 0 && s.lc > 0 ? std::sqrt(E * s.Gc / (3.0 * s.lc)) : 0.0);
  s.sigma_c = sc;
  s.tau_c = drive.tau_c_MPa ? *drive.tau_c_MPa : 0.5 * sc;
  // Mohr-Coulomb: Rt defaults to sigma_c and Rc to m Rt.
  s.rm_t = drive.Rm_t_MPa ? *drive.Rm_t_MPa : (drive.Rm_c_MPa && drive.m ? *drive.Rm_c_MPa / *drive.m : sc);
  s.rm_c = drive.Rm_c_MPa ? *drive.Rm_c_MPa : (drive.m ? *drive.m * s.rm_t : sc);
  s.eps_c = drive.eps_c ? *drive.eps_c : (E > 0 ? sc / E : 0.0);
  s.lambda_c = drive.lambda_c ? *drive.lambda_c : 1.0 + s.eps_c;
  s.tresca_form = drive.tresca_form;
  return s;
}

MaterialModel ScenarioConfig::material_model() const {
  MaterialModel m;
  const bool finite = material.model != "linear";
  m.kind = finite ? MaterialKind::hyperelastic : MaterialKind::linear;
  m.linear = LinearElasticParams::make(material.E_MPa, material.nu, material.plane_mode);
  if (finite) m.hyper = HyperelasticParams::from_linear(material.E_MPa, material.nu, material.model == "neo_hooke" ? 0.0 : material.k);
  m.stress_split = mechanical_split();
  m.finite_split = material.finite_split;
  m.deg.eps_res = material.residual_stiffness;
  m.thickness = material.thickness_mm;
  return m;
}

EvolutionParams ScenarioConfig::evolution_params() const {
  return {evolution.lc_mm, evolution.Gc_N_per_mm, evolution.dt_s, evolution.c_rule};
}

nlohmann::ordered_json ScenarioConfig::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = pff::to_string(scenario);
  j["name"] = name;
  auto& g = j["geometry"];
  const auto& G = geometry;
  switch (scenario) {
    case ScenarioKind::mode_I:
    case ScenarioKind::mode_II:
      g["width_mm"] = G.width_mm;
      g["height_mm"] = G.height_mm;
      g["nx"] = G.nx;
      g["ny"] = G.ny;
      g["slit_length_mm"] = G.slit_length_mm;
      if (G.refine.enabled)
        g["refine"] = {{"h_mm", G.refine.h_mm},         {"x_min_mm", G.refine.x_min_mm}, {"x_max_mm", G.refine.x_max_mm},
                       {"y_min_mm", G.refine.y_min_mm}, {"y_max_mm", G.refine.y_max_mm}};
      break;
    case ScenarioKind::brazilian:
      g["diameter_mm"] = G.diameter_mm;
      g["rings"] = G.rings;
      g["arc_width_mm"] = G.arc_width_mm;
      g["induced_crack"] = G.induced_crack;
      break;
    case ScenarioKind::conchoidal:
      g["length_mm"] = G.length_mm;
      g["depth_mm"] = G.depth_mm;
      g["block_height_mm"] = G.block_height_mm;
      g["nx"] = G.nx;
      g["ny"] = G.ny;
      g["nz"] = G.nz;
      g["patch_mm"] = G.patch_mm;
      break;
    case ScenarioKind::bar_1d:
      g["half_length_mm"] = G.half_length_mm;
      g["elements"] = G.elements;
      break;
  }
  auto& m = j["material"];
  m["model"] = material.model;
  m["E_MPa"] = material.E_MPa;
  m["nu"] = material.nu;
  m["plane_mode"] = plane_name(material.plane_mode);
  m["stress_split"] = material.stress_split;
  m["finite_split"] = finite_name(material.finite_split);
  m["residual_stiffness"] = material.residual_stiffness;
  m["thickness_mm"] = material.thickness_mm;
  m["k"] = material.k;
  const DrivingForceSpec s = driving_force_spec();
  auto& d = j["driving_force"];
  d["model"] = pff::to_string(drive.model);
  d["sigma_c_MPa"] = s.sigma_c;
  d["tau_c_MPa"] = s.tau_c;
  d["Rm_t_MPa"] = s.rm_t;
  d["Rm_c_MPa"] = s.rm_c;
  d["m"] = s.rm_t > 0 ? s.rm_c / s.rm_t : 0.0;
  d["eps_c"] = s.eps_c;
  d["lambda_c"] = s.lambda_c;
  d["tresca_form"] = tresca_name(drive.tresca_form);
  d["stress"] = drive.stress == DriveStress::effective ? "effective" : "degraded";
  auto& e = j["evolution"];
  e["lc_mm"] = evolution.lc_mm;
  e["Gc_N_per_mm"] = evolution.Gc_N_per_mm;
  e["c_rule"] = evolution.c_rule;
  e["dt_s"] = evolution.dt_s;
  e["du_mm"] = evolution.du_mm;
  e["steps"] = evolution.steps;
  e["stop_on_failure"] = evolution.stop_on_failure;
  e["newton_tol"] = evolution.newton_tol;
  j["output"] = {{"dir", output.dir}, {"vtk_every", output.vtk_every}};
  return j;
}

void validate(const ScenarioConfig& c) {
  std::vector<std::string> v;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  const auto& M = c.material;
  const auto& E = c.evolution;
  const auto& G = c.geometry;
  need(M.E_MPa > 0.0, "material.E_MPa must be positive");
  need(M.nu > -1.0 && M.nu < 0.5, "material.nu must lie in (-1, 0.5)");
  need(M.residual_stiffness > 0.0 && M.residual_stiffness <= 1e-2, "material.residual_stiffness must lie in (0, 1e-2]");
  need(M.thickness_mm > 0.0, "material.thickness_mm must be positive");
  need(M.k >= 0.0, "material.k must be non-negative");
  need(E.lc_mm > 0.0, "evolution.lc_mm must be positive");
  need(E.Gc_N_per_mm > 0.0, "evolution.Gc must be positive");
  need(E.c_rule > 0.0, "evolution.c_rule must be positive");
  need(E.dt_s > 0.0, "evolution.dt_s must be positive");
  need(E.du_mm > 0.0, "evolution.du_mm must be positive");
  need(E.steps >= 0, "evolution.steps must be non-negative");
  need(E.newton_tol > 0.0 && E.newton_tol <= 1e-8, "evolution.newton_tol must lie in (0, 1e-8]");
  need(c.output.vtk_every >= 0, "output.vtk_every must be non-negative");

  const bool finite = M.model != "linear";
  const bool two_d = c.scenario == ScenarioKind::mode_I || c.scenario == ScenarioKind::mode_II ||
                     c.scenario == ScenarioKind::brazilian;
  if (two_d) need(M.plane_mode != PlaneMode::full_3d, "material.plane_mode must be plane_stress or plane_strain in 2D");
  if (finite && two_d) need(M.plane_mode == PlaneMode::plane_strain, "finite-strain 2D runs require plane_strain");
  if (!finite) need(M.finite_split == FiniteSplit::none, "material.finite_split applies to hyperelastic models only");

  switch (c.scenario) {
    case ScenarioKind::mode_I:
    case ScenarioKind::mode_II: {
      need(G.nx >= 4 && G.ny >= 4, "geometry.nx and geometry.ny must be at least 4");
      need(G.width_mm > 0.0 && G.height_mm > 0.0, "plate dimensions must be positive");
      need(G.slit_length_mm > 0.0 && G.slit_length_mm < G.width_mm, "geometry.slit_length_mm must lie inside the plate");
      if (G.refine.enabled) {
        need(G.refine.h_mm > 0.0, "geometry.refine.h_mm must be positive");
        need(G.refine.x_min_mm >= 0.0 && G.refine.x_max_mm <= G.width_mm && G.refine.x_min_mm < G.refine.x_max_mm,
             "geometry.refine x-range must lie inside the plate");
        need(G.refine.y_min_mm >= 0.0 && G.refine.y_max_mm <= G.height_mm && G.refine.y_min_mm < G.refine.y_max_mm,
             "geometry.refine y-range must lie inside the plate");
      } else if (G.nx >= 1 && G.ny >= 1 && G.width_mm > 0.0 && G.height_mm > 0.0) {
        need(on_grid(G.slit_length_mm, 0.0, G.width_mm, G.nx), "slit tip must lie on a grid line");
        need(G.ny % 2 == 0, "geometry.ny must be even so the slit lies on a grid line");
      }
      break;
    }
    case ScenarioKind::brazilian:
      need(G.diameter_mm > 0.0, "geometry.diameter_mm must be positive");
      need(G.rings >= 2, "geometry.rings must be at least 2");
      need(G.arc_width_mm > 0.0 && G.arc_width_mm < G.diameter_mm, "geometry.arc_width_mm must lie in (0, D)");
      break;
    case ScenarioKind::conchoidal:
      need(G.nx >= 1 && G.ny >= 1 && G.nz >= 1, "block divisions must be positive");
      need(G.length_mm > 0.0 && G.depth_mm > 0.0 && G.block_height_mm > 0.0, "block dimensions must be positive");
      need(G.patch_mm > 0.0 && G.patch_mm <= std::min(G.length_mm, G.depth_mm), "geometry.patch_mm must fit on the top face");
      break;
    case ScenarioKind::bar_1d:
      need(G.half_length_mm > 0.0, "geometry.half_length_mm must be positive");
      need(G.elements >= 2 && G.elements % 2 == 0, "geometry.elements must be even and at least 2");
      break;
  }
  const double h = G.crack_h(c.scenario);
  if (c.scenario != ScenarioKind::bar_1d && h > 0.0 && E.lc_mm > 0.0)
    need(E.lc_mm >= 2.0 * h * (1.0 - 1e-12), "evolution.lc_mm must be at least twice the element size (h = " +
                                                 std::to_string(h) + " mm)");

  if (M.E_MPa > 0.0 && E.lc_mm > 0.0 && E.Gc_N_per_mm > 0.0) {
    const auto& D = c.drive;
    const DrivingForceSpec s = c.driving_force_spec();
    auto pos = [&](const std::optional<double>& x, const char* key) {
      if (x) need(*x > 0.0, std::string("driving_force.") + key + " must be positive");
    };
    pos(D.sigma_c_MPa, "sigma_c_MPa");
    pos(D.tau_c_MPa, "tau_c_MPa");
    pos(D.Rm_t_MPa, "Rm_t_MPa");
    pos(D.Rm_c_MPa, "Rm_c_MPa");
    pos(D.m, "m");
    pos(D.eps_c, "eps_c");
    if (D.lambda_c) need(*D.lambda_c > 1.0, "driving_force.lambda_c must exceed 1");
    if (D.m && D.Rm_t_MPa && D.Rm_c_MPa && *D.Rm_t_MPa > 0.0)
      need(std::abs(*D.Rm_c_MPa / *D.Rm_t_MPa - *D.m) <= 1e-10 * *D.m, "driving_force.m must equal Rm_c/Rm_t");
    if (D.model == DriveKind::beltrami_stretch) need(s.lambda_c > 1.0, "driving_force.lambda_c must exceed 1");
    if (finite && D.model == DriveKind::beltrami)
      need(false, "finite-strain runs use beltrami_stretch instead of beltrami");
  }
  if (!v.empty()) throw ValidationError(v);
}

ScenarioConfig parse_config_string(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), "");
  }
  ScenarioConfig c = from_json(root, text);
  validate(c);
  return c;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

}  // namespace pff
