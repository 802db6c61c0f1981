#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "curved_nbody/format.hpp"

namespace curved_nbody::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string join_path(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

Vec parse_vec(const json& j, const std::string& where, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ConfigError(where + ": expected an array of " + std::to_string(dim) + " numbers");
  Vec v(dim);
  for (int k = 0; k < dim; ++k) {
    if (!j[k].is_number()) throw ConfigError(where + ": expected numbers");
    v[k] = j[k].get<double>();
  }
  return v;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (double c : v.coords()) a.push_back(c);
  return a;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Grid entries: numbers are fixed values, strings use the override syntax,
// arrays are lists.
std::vector<std::string> grid_entries(Section s, const json& j) {
  std::vector<std::string> out;
  if (!j.is_object()) throw ConfigError(s.where() + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    s.raw(k);
    if (v.is_number()) {
      out.push_back(k + "=" + format_double(v.get<double>()));
    } else if (v.is_string()) {
      out.push_back(k + "=" + v.get<std::string>());
    } else if (v.is_array()) {
      std::string list;
      for (const json& e : v) {
        if (!e.is_number()) throw ConfigError(join_path(s.where(), k) + ": list entries must be numbers");
        list += (list.empty() ? "" : ";") + format_double(e.get<double>());
      }
      out.push_back(k + "=" + list);
    } else {
      throw ConfigError(join_path(s.where(), k) + ": expected a number, string or list");
    }
  }
  return out;
}

void apply_grid(ScanGrid& g, const std::vector<std::string>& overrides) {
  for (const std::string& o : overrides) {
    try {
      apply_grid_override(g, o);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("grid override '") + o + "': " + e.what());
    }
  }
  try {
    g.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

}  // namespace

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config '" + path + "' must be a JSON object");
  return j;
}

// --- Section ---------------------------------------------------------------------

Section::Section(const json& j, std::string where) : j_(j), where_(std::move(where)) {
  if (!j_.is_object()) throw ConfigError((where_.empty() ? "config" : where_) + ": expected an object");
}

bool Section::has(const std::string& key) const { return j_.contains(key); }

const json& Section::raw(const std::string& key) {
  if (!j_.contains(key)) throw ConfigError("missing key '" + join_path(where_, key) + "'");
  used_.insert(key);
  return j_.at(key);
}

double Section::number(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_number()) throw ConfigError("'" + join_path(where_, key) + "' must be a number");
  return v.get<double>();
}

double Section::number(const std::string& key, double fallback) {
  return has(key) ? number(key) : fallback;
}

long Section::integer(const std::string& key, long fallback) {
  if (!has(key)) return fallback;
  const json& v = raw(key);
  if (!v.is_number_integer()) throw ConfigError("'" + join_path(where_, key) + "' must be an integer");
  return v.get<long>();
}

bool Section::boolean(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const json& v = raw(key);
  if (!v.is_boolean()) throw ConfigError("'" + join_path(where_, key) + "' must be true or false");
  return v.get<bool>();
}

std::string Section::text(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_string()) throw ConfigError("'" + join_path(where_, key) + "' must be a string");
  return v.get<std::string>();
}

std::string Section::text(const std::string& key, const std::string& fallback) {
  return has(key) ? text(key) : fallback;
}

Section Section::child(const std::string& key) { return Section(raw(key), join_path(where_, key)); }

void Section::finish() const {
  for (const auto& [k, v] : j_.items())
    if (!used_.count(k)) throw ConfigError("unknown key '" + join_path(where_, k) + "'");
}

// --- families ----------------------------------------------------------------------

CandidateParams parse_family(Section s) {
  const std::string name = s.text("name");
  CandidateParams p;
  if (name == "trapezoid") {
    p = TrapezoidFixedPoint{s.number("alpha"), s.number("beta"), s.number("m"), s.number("M")};
  } else if (name == "rectangle_releq_2d") {
    RectangleRelEq2D r{static_cast<int>(s.integer("sigma", 1)), s.number("alpha"), s.number("r"),
                       s.number("m", 1.0), 0.0};
    if (s.has("omega")) {
      r.omega = s.number("omega");
    } else {
      double w2 = 0.0;
      try {
        w2 = releq_2d_omega_squared(r.alpha, r.r, r.sigma, r.m, Balance::X);
      } catch (const Error& e) {
        throw ConfigError(std::string("cannot solve omega: ") + e.what());
      }
      if (!(w2 > 0.0)) throw ConfigError("cannot solve omega: omega^2 = " + brief(w2) + " <= 0");
      r.omega = std::sqrt(w2);
    }
    p = r;
  } else if (name == "positive_elliptic") {
    PositiveElliptic e{s.number("m", 1.0), s.number("theta", kPi / 2), 0.0, s.number("gamma"),
                       s.number("z0"), s.number("nu0", 0.0), s.number("alpha0", 0.0)};
    if (s.has("c_wx") == s.has("z_star"))
      throw ConfigError(s.where() + ": give exactly one of c_wx and z_star");
    e.c_wx = s.has("c_wx") ? s.number("c_wx")
                           : pe_equilibrium_momentum(e.m, e.theta, e.gamma, s.number("z_star"));
    p = e;
  } else if (name == "positive_elliptic_elliptic") {
    p = PositiveEllipticElliptic{s.number("m", 1.0), s.number("a"),  s.number("b"),
                                 s.number("c1"),      s.number("c2"), s.number("r0"),
                                 s.number("alpha0", 0.0), s.number("beta0", 0.0)};
  } else if (name == "negative_elliptic") {
    NegativeElliptic e{s.number("m", 1.0), s.number("theta", kPi / 2), 0.0, s.number("gamma"),
                       s.number("y0"), s.number("nu0", 0.0), s.number("alpha0", 0.0)};
    if (s.has("b_wx") == s.has("y_star"))
      throw ConfigError(s.where() + ": give exactly one of b_wx and y_star");
    e.b_wx = s.has("b_wx") ? s.number("b_wx")
                           : ne_equilibrium_momentum(e.m, e.theta, e.gamma, s.number("y_star"));
    p = e;
  } else if (name == "negative_hyperbolic") {
    p = NegativeHyperbolic{s.number("m", 1.0), s.number("phi"), s.number("a_mom"),
                           s.number("w0"),     s.number("x0"),  s.number("beta0", 0.0)};
  } else if (name == "negative_elliptic_hyperbolic") {
    p = NegativeEllipticHyperbolic{s.number("m", 1.0),      s.number("phi"), s.number("d1"),
                                   s.number("d2"),          s.number("r0"),  s.number("mu0", 0.0),
                                   s.number("alpha0", 0.0), s.number("beta0", 0.0)};
  } else {
    throw ConfigError("unknown family '" + name + "'");
  }
  s.finish();
  try {
    validate(p);
  } catch (const InvalidArgument& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return p;
}

CandidateParams seed_family(const std::string& name) {
  const std::string n = lower(name);
  if (n == "trapezoid") return TrapezoidFixedPoint{kPi / 3, 7 * kPi / 6, 1.0, 2.0};
  if (n == "rectangle_releq_2d" || n == "square") {
    RectangleRelEq2D r{1, kPi / 4, 0.8, 1.0, 0.0};
    r.omega = std::sqrt(releq_2d_omega_squared(r.alpha, r.r, r.sigma, r.m, Balance::X));
    return r;
  }
  if (n == "positive_elliptic")
    return PositiveElliptic{1.0, kPi / 2, pe_equilibrium_momentum(1.0, kPi / 2, 0.5, 0.5), 0.5, 0.5,
                            0.05, 0.0};
  if (n == "positive_elliptic_elliptic")
    return PositiveEllipticElliptic{1.0, kPi / 3, kPi / 4, 0.7, 0.4, 0.6, 0.2, 0.5};
  if (n == "negative_elliptic")
    return NegativeElliptic{1.0, kPi / 2, ne_equilibrium_momentum(1.0, kPi / 2, 2.0, 0.65), 2.0, 0.65,
                            0.02, 0.0};
  if (n == "negative_hyperbolic") return NegativeHyperbolic{1.0, 1.0, 0.3, 1.0, 0.5, 0.0};
  if (n == "negative_elliptic_hyperbolic")
    return NegativeEllipticHyperbolic{1.0, 1.0, 0.4, 0.3, 0.8, 0.1, 0.2, 0.3};
  throw ConfigError("unknown seed family '" + name + "'");
}

json family_to_json(const CandidateParams& params) {
  json j = std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TrapezoidFixedPoint>)
          return {{"alpha", p.alpha}, {"beta", p.beta}, {"m", p.m}, {"M", p.M}};
        else if constexpr (std::is_same_v<T, RectangleRelEq2D>)
          return {{"sigma", p.sigma}, {"alpha", p.alpha}, {"r", p.r}, {"m", p.m}, {"omega", p.omega}};
        else if constexpr (std::is_same_v<T, PositiveElliptic>)
          return {{"m", p.m},         {"theta", p.theta}, {"c_wx", p.c_wx},    {"gamma", p.gamma},
                  {"z0", p.z0},       {"nu0", p.nu0},     {"alpha0", p.alpha0}};
        else if constexpr (std::is_same_v<T, PositiveEllipticElliptic>)
          return {{"m", p.m},   {"a", p.a},   {"b", p.b},           {"c1", p.c1},
                  {"c2", p.c2}, {"r0", p.r0}, {"alpha0", p.alpha0}, {"beta0", p.beta0}};
        else if constexpr (std::is_same_v<T, NegativeElliptic>)
          return {{"m", p.m},   {"theta", p.theta}, {"b_wx", p.b_wx},    {"gamma", p.gamma},
                  {"y0", p.y0}, {"nu0", p.nu0},     {"alpha0", p.alpha0}};
        else if constexpr (std::is_same_v<T, NegativeHyperbolic>)
          return {{"m", p.m},   {"phi", p.phi}, {"a_mom", p.a_mom},
                  {"w0", p.w0}, {"x0", p.x0},   {"beta0", p.beta0}};
        else
          return {{"m", p.m},   {"phi", p.phi}, {"d1", p.d1},         {"d2", p.d2},
                  {"r0", p.r0}, {"mu0", p.mu0}, {"alpha0", p.alpha0}, {"beta0", p.beta0}};
      },
      params);
  j["name"] = family_name(params);
  return j;
}

// --- raw states ---------------------------------------------------------------------

SystemState parse_state(Section s) {
  SpaceSpec space = SpaceSpec::S2();
  try {
    space = SpaceSpec::parse(s.text("space"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(s.where() + ".space: " + e.what());
  }
  const double time = s.number("time", 0.0);
  const json& arr = s.raw("bodies");
  if (!arr.is_array()) throw ConfigError(s.where() + ".bodies: expected an array");
  std::vector<Body> bodies;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    Section b(arr[k], s.where() + ".bodies[" + std::to_string(k) + "]");
    const int dim = space.ambient_dim();
    Body body{b.number("mass"), parse_vec(b.raw("position"), b.where() + ".position", dim),
              parse_vec(b.raw("velocity"), b.where() + ".velocity", dim)};
    b.finish();
    const double scale = std::max(1.0, euclidean_norm2(body.position));
    if (std::abs(constraint_residual(body.position, space)) > 1e-9 * scale)
      throw ConfigError("body " + std::to_string(k + 1) + " is not on " + space.name());
    if (!space.spherical() && body.position[dim - 1] <= 0.0)
      throw ConfigError("body " + std::to_string(k + 1) + " is on the lower sheet");
    const double vscale = std::max(1.0, std::sqrt(scale * euclidean_norm2(body.velocity)));
    if (std::abs(inner(body.position, body.velocity, space)) > 1e-9 * vscale)
      throw ConfigError("velocity of body " + std::to_string(k + 1) + " is not tangent");
    bodies.push_back(body);
  }
  s.finish();
  try {
    return checked_state(space, std::move(bodies), time);
  } catch (const SingularPair&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

json state_to_json(const SystemState& state) {
  json bodies = json::array();
  for (const Body& b : state.bodies)
    bodies.push_back({{"mass", b.mass}, {"position", vec_json(b.position)}, {"velocity", vec_json(b.velocity)}});
  return {{"space", state.space.name()}, {"time", state.time}, {"bodies", bodies}};
}

// --- integrator --------------------------------------------------------------------

IntegratorConfig parse_integrator(Section s, IntegratorConfig cfg) {
  if (s.has("method")) {
    try {
      cfg.method = parse_method(s.text("method"));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  cfg.dt_initial = s.number("dt_initial", cfg.dt_initial);
  cfg.abs_tol = s.number("abs_tol", cfg.abs_tol);
  cfg.rel_tol = s.number("rel_tol", cfg.rel_tol);
  cfg.project_each_step = s.boolean("project_each_step", cfg.project_each_step);
  cfg.max_steps = s.integer("max_steps", cfg.max_steps);
  cfg.sample_dt = s.number("sample_dt", cfg.sample_dt);
  s.finish();
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("integrator: ") + e.what());
  }
  return cfg;
}

json integrator_to_json(const IntegratorConfig& cfg) {
  return {{"method", to_string(cfg.method)},
          {"dt_initial", cfg.dt_initial},
          {"abs_tol", cfg.abs_tol},
          {"rel_tol", cfg.rel_tol},
          {"project_each_step", cfg.project_each_step},
          {"max_steps", cfg.max_steps},
          {"sample_dt", cfg.sample_dt}};
}

// --- commands ----------------------------------------------------------------------

std::vector<std::string> split_overrides(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream in(s);
  while (std::getline(in, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

SimulateConfig parse_simulate(const json& doc, const std::optional<std::string>& seed) {
  Section s(doc, "");
  SimulateConfig c;
  const int sources = (s.has("family") ? 1 : 0) + (s.has("state") ? 1 : 0) + (seed ? 1 : 0);
  if (sources == 0) throw ConfigError("simulate needs a family, a state or --seed-family");
  if (sources > 1) throw ConfigError("give only one of family, state and --seed-family");
  if (seed) c.family = seed_family(*seed);
  if (s.has("family")) c.family = parse_family(s.child("family"));
  if (s.has("state")) c.state = parse_state(s.child("state"));
  c.t_end = s.number("t_end", c.t_end);
  if (!std::isfinite(c.t_end)) throw ConfigError("t_end must be finite");
  if (s.has("integrator")) c.integrator = parse_integrator(s.child("integrator"));
  c.out = s.text("output", "");
  s.finish();
  c.echo = {{"command", "simulate"}, {"t_end", c.t_end}, {"integrator", integrator_to_json(c.integrator)}};
  if (c.family) c.echo["family"] = family_to_json(*c.family);
  if (c.state) c.echo["state"] = state_to_json(*c.state);
  return c;
}

VerifyConfig parse_verify(const json& doc, const std::optional<std::string>& theorem,
                          const std::vector<std::string>& grid_overrides,
                          const std::vector<std::string>& tol_overrides,
                          const std::optional<std::string>& reading) {
  Section s(doc, "");
  VerifyConfig c;
  std::optional<std::string> id = theorem;
  if (s.has("theorem")) {
    const std::string t = s.text("theorem");
    if (id && *id != t) throw ConfigError("theorem '" + *id + "' conflicts with config '" + t + "'");
    id = t;
  }
  if (!id) throw ConfigError("verify needs a theorem id (T1..T7)");
  try {
    c.theorem = parse_theorem(*id);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  c.grid = default_grid(c.theorem);
  c.tolerances = default_tolerances(c.theorem);
  std::vector<std::string> grid;
  if (s.has("grid")) grid = grid_entries(s.child("grid"), s.raw("grid"));
  grid.insert(grid.end(), grid_overrides.begin(), grid_overrides.end());
  apply_grid(c.grid, grid);
  std::vector<std::string> tol;
  if (s.has("tolerances")) {
    Section t = s.child("tolerances");
    for (const auto& [k, v] : s.raw("tolerances").items()) {
      tol.push_back(k + "=" + format_double(t.number(k)));
      (void)v;
    }
  }
  tol.insert(tol.end(), tol_overrides.begin(), tol_overrides.end());
  for (const std::string& o : tol) {
    try {
      apply_tolerance_override(c.tolerances, o);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("tolerance override '") + o + "': " + e.what());
    }
  }
  std::optional<std::string> rd = reading;
  if (s.has("reading") && !rd) rd = s.text("reading");
  else if (s.has("reading")) s.raw("reading");
  if (rd) {
    try {
      c.options.reading = parse_reading(*rd);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  c.out = s.text("output", "");
  s.finish();
  c.echo = {{"command", "verify"}, {"theorem", to_string(c.theorem)}};
  if (c.options.reading) c.echo["reading"] = to_string(*c.options.reading);
  return c;
}

std::string to_string(ScanExpr e) {
  switch (e) {
    case ScanExpr::DetA: return "detA";
    case ScanExpr::Releq2dMismatch: return "releq2d_mismatch";
    case ScanExpr::PeIdentity: return "pe_identity";
    case ScanExpr::NeIdentity: return "ne_identity";
    case ScanExpr::NhIdentity: return "nh_identity";
    case ScanExpr::NehIdentity: return "neh_identity";
  }
  return "?";
}

ScanExpr parse_scan_expr(const std::string& s) {
  for (ScanExpr e : {ScanExpr::DetA, ScanExpr::Releq2dMismatch, ScanExpr::PeIdentity,
                     ScanExpr::NeIdentity, ScanExpr::NhIdentity, ScanExpr::NehIdentity})
    if (lower(s) == lower(to_string(e))) return e;
  throw ConfigError("unknown scan expression '" + s +
                    "' (detA, releq2d_mismatch, pe_identity, ne_identity, nh_identity, neh_identity)");
}

ScanGrid default_scan_grid(ScanExpr e) {
  ScanGrid g;
  switch (e) {
    case ScanExpr::DetA:
      // The half-step offset between the two axes keeps every node off the
      // beta - alpha = pi diagonal.
      g.ranges = {{"alpha", 1e-3, kPi / 2 - 0.017, 50}, {"beta", kPi + 0.017, 1.5 * kPi - 1e-3, 50}};
      g.exclusions = {{"beta_minus_alpha_ne_pi", 1e-3}, {"sin_alpha_plus_beta_ne_0", 1e-3}};
      break;
    case ScanExpr::Releq2dMismatch:
      g.ranges = {{"alpha", 0.01, kPi / 2 - 0.01, 1000}};
      g.fixed = {{"sigma", 1.0}, {"r", 0.8}, {"m", 1.0}};
      break;
    case ScanExpr::PeIdentity:
      g.ranges = {{"theta", kPi / 2000, kPi - kPi / 2000, 1000}};
      g.fixed = {{"z", 0.4}, {"gamma", 0.5}, {"m", 1.0}};
      break;
    case ScanExpr::NeIdentity:
      g.ranges = {{"theta", -kPi + kPi / 1000, kPi - kPi / 1000, 1000}};
      g.exclusions = {{"theta_ne_0", 1e-3}};
      g.fixed = {{"y", 1.0 / std::sqrt(2.0)}, {"gamma", 2.0}, {"m", 1.0}};
      break;
    case ScanExpr::NhIdentity:
      g.ranges = {{"phi", -3.0, 3.0, 1000}, {"eta", 1.1, 3.0, 10}};
      g.exclusions = {{"phi_ne_0", 1e-3}};
      g.fixed = {{"m", 1.0}};
      break;
    case ScanExpr::NehIdentity:
      g.ranges = {{"phi", -3.0, 3.0, 1000}, {"r", 0.2, 2.0, 10}};
      g.exclusions = {{"phi_ne_0", 1e-3}};
      g.fixed = {{"m", 1.0}};
      break;
  }
  return g;
}

ScanConfig parse_scan(const json& doc, const std::optional<std::string>& expr,
                      const std::vector<std::string>& grid_overrides,
                      const std::optional<std::string>& reading) {
  Section s(doc, "");
  ScanConfig c;
  std::optional<std::string> name = expr;
  if (s.has("expression")) {
    const std::string t = s.text("expression");
    if (name && lower(*name) != lower(t))
      throw ConfigError("expression '" + *name + "' conflicts with config '" + t + "'");
    name = t;
  }
  if (!name) throw ConfigError("scan needs an expression");
  c.expr = parse_scan_expr(*name);
  c.grid = default_scan_grid(c.expr);
  std::vector<std::string> grid;
  if (s.has("grid")) grid = grid_entries(s.child("grid"), s.raw("grid"));
  grid.insert(grid.end(), grid_overrides.begin(), grid_overrides.end());
  apply_grid(c.grid, grid);
  std::optional<std::string> rd = reading;
  if (s.has("reading") && !rd) rd = s.text("reading");
  else if (s.has("reading")) s.raw("reading");
  if (rd) {
    try {
      c.reading = parse_reading(*rd);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  c.out = s.text("output", "");
  s.finish();
  c.echo = {{"command", "scan"}, {"expression", to_string(c.expr)}};
  if (c.expr == ScanExpr::NhIdentity || c.expr == ScanExpr::NehIdentity)
    c.echo["reading"] = to_string(c.reading);
  return c;
}

ReducedConfig parse_reduced(const json& doc, const std::optional<std::string>& family) {
  Section s(doc, "");
  ReducedConfig c;
  std::optional<std::string> fam = family;
  if (s.has("family")) {
    const std::string t = s.text("family");
    if (fam && lower(*fam) != lower(t))
      throw ConfigError("family '" + *fam + "' conflicts with config '" + t + "'");
    fam = t;
  }
  if (!fam) throw ConfigError("reduced needs a family (pe or ne)");
  const std::string f = lower(*fam);
  if (f == "pe" || f == "positive_elliptic")
    c.family = ReducedFamily::PositiveElliptic;
  else if (f == "ne" || f == "negative_elliptic")
    c.family = ReducedFamily::NegativeElliptic;
  else
    throw ConfigError("unknown reduced family '" + *fam + "' (pe or ne)");
  const bool pe = c.family == ReducedFamily::PositiveElliptic;

  c.params = seed_family(pe ? "positive_elliptic" : "negative_elliptic");
  if (s.has("params")) {
    json p = s.raw("params");
    if (!p.is_object()) throw ConfigError("params: expected an object");
    if (p.contains("name")) throw ConfigError("params.name: the family is given by the command");
    p["name"] = pe ? "positive_elliptic" : "negative_elliptic";
    c.params = parse_family(Section(p, "params"));
  }
  c.t_end = s.number("t_end", c.t_end);
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) throw ConfigError("t_end must be finite and >= 0");
  const long samples = s.integer("samples", 100);
  if (samples < 1) throw ConfigError("samples must be positive");
  IntegratorConfig base;
  base.abs_tol = base.rel_tol = 1e-12;
  base.sample_dt = c.t_end > 0 ? c.t_end / static_cast<double>(samples) : 0.0;
  c.integrator = s.has("integrator") ? parse_integrator(s.child("integrator"), base) : base;
  c.out = s.text("output", "");
  s.finish();
  c.echo = {{"command", "reduced"},
            {"family", pe ? "pe" : "ne"},
            {"params", family_to_json(c.params)},
            {"t_end", c.t_end},
            {"integrator", integrator_to_json(c.integrator)}};
  return c;
}

}  // namespace curved_nbody::cli
