#include "curved_nbody/verify.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curved_nbody/errors.hpp"
#include "curved_nbody/format.hpp"

namespace curved_nbody {

namespace {

constexpr double kPi = std::numbers::pi;

double pow32(double base) { return base * std::sqrt(base); }

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

// --- trapezoid ----------------------------------------------------------------

std::map<std::string, double> trapezoid_entries(double alpha, double beta) {
  if (std::abs(std::remainder(beta - alpha - kPi, 2.0 * kPi)) < 1e-9)
    throw AntipodalConfiguration("beta - alpha = pi puts bodies 1 and 3 antipodal");
  const double xs[4] = {std::cos(alpha), -std::cos(alpha), std::cos(beta), -std::cos(beta)};
  const double ys[4] = {std::sin(alpha), std::sin(alpha), std::sin(beta), std::sin(beta)};
  auto q = [&](int i, int j) {
    const double a = xs[i] * xs[j] + ys[i] * ys[j];
    const double base = (1.0 - a) * (1.0 + a);
    return (xs[j] - a * xs[i]) / pow32(base);
  };
  return {{"12", q(0, 1)}, {"13", q(0, 2)}, {"14", q(0, 3)},
          {"31", q(2, 0)}, {"32", q(2, 1)}, {"34", q(2, 3)}};
}

double det_A_cartesian(double alpha, double beta) {
  const auto e = trapezoid_entries(alpha, beta);
  return e.at("12") * e.at("34") - (e.at("13") + e.at("14")) * (e.at("31") + e.at("32"));
}

std::string to_string(PolarForm f) {
  return f == PolarForm::Standard ? "standard" : "double_angle_variant";
}

double det_A_polar_first_term(double alpha, double beta) {
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double sa = std::sin(alpha), sb = std::sin(beta);
  return ca * cb / (16.0 * std::pow(std::abs(ca), 3) * std::pow(std::abs(cb), 3) * std::abs(sa) *
                    std::abs(sb));
}

double det_A_polar(double alpha, double beta, PolarForm form) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double sp4 = std::pow(std::sin(alpha + beta), 4);
  const double sm4 = std::pow(std::sin(alpha - beta), 4);
  double second = sa * sb * (sp4 - sm4) / (sm4 * sp4);
  if (form == PolarForm::DoubleAngleVariant) second *= std::sin(2.0 * alpha) * std::sin(2.0 * beta);
  return det_A_polar_first_term(alpha, beta) + second;
}

// --- rotating rectangle on S2 / H2 ---------------------------------------------

double releq_2d_omega_squared(double alpha, double r, int sigma, double m, Balance b) {
  if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double e[3] = {sigma - 2.0 * r * r * ca * ca, sigma - 2.0 * r * r,
                       sigma - 2.0 * r * r * sa * sa};
  const double numer_x[3] = {1.0 + sigma * e[0], 1.0 + sigma * e[1], -1.0 + sigma * e[2]};
  const double numer_y[3] = {-1.0 + sigma * e[0], 1.0 + sigma * e[1], 1.0 + sigma * e[2]};
  const double* numer = b == Balance::X ? numer_x : numer_y;
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double base = sigma * (1.0 - e[k]) * (1.0 + e[k]);
    if (!(base > 0.0)) throw SingularPair(0, k + 1, sigma > 0 && e[k] < 0 ? PairKind::Antipodal
                                                                            : PairKind::Collision,
                                          base);
    sum += numer[k] / pow32(base);
  }
  return m * sum / (1.0 - sigma * r * r);
}

double releq_2d_mismatch(double alpha, double r, int sigma, double m) {
  return releq_2d_omega_squared(alpha, r, sigma, m, Balance::X) -
         releq_2d_omega_squared(alpha, r, sigma, m, Balance::Y);
}

// --- S3 / H3 angular identities -----------------------------------------------

double pe_identity_residual(double theta, double z, double gamma, double m) {
  const double s = (gamma * gamma + 1.0) * z * z;
  if (!(s < 1.0)) throw DomainExit("positive elliptic: 1 - delta z^2 must be positive", 0.0);
  const double r = std::sqrt(1.0 - s);
  const double c = std::cos(theta);
  const double e12 = (1.0 - s) * c + s;
  const double e14 = (-1.0 + s) * c + s;
  return m * r * std::sin(theta) *
         (1.0 / pow32(std::abs((1.0 - e12) * (1.0 + e12))) -
          1.0 / pow32(std::abs((1.0 - e14) * (1.0 + e14))));
}

PeeRhs pee_rhs(double a, double b, double r, double m) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("r must be in (0, 1)");
  const double r2 = r * r, rho2 = (1.0 - r) * (1.0 + r);
  const double rho = std::sqrt(rho2);
  const double e13 = r2 * std::cos(a) + rho2 * std::cos(b);
  const double e14 = r2 * std::cos(a) - rho2 * std::cos(b);
  const double A = 1.0 / pow32((1.0 - e13) * (1.0 + e13));
  const double B = 1.0 / pow32((1.0 - e14) * (1.0 + e14));
  return {m * r * std::sin(a) * (A + B), -m * r * std::sin(a) * (A + B),
          m * rho * std::sin(b) * (A - B), -m * rho * std::sin(b) * (A - B)};
}

double ne_identity_residual(double theta, double y, double gamma, double m) {
  const double r2 = (gamma * gamma - 1.0) * y * y - 1.0;
  if (!(r2 >= 0.0)) throw DomainExit("negative elliptic: z^2 - y^2 - 1 must be >= 0", 0.0);
  const double c = std::cos(theta);
  const double mu12 = r2 * c - r2 - 1.0;
  const double mu14 = -r2 * c - r2 - 1.0;
  return m * std::sqrt(r2) * std::sin(theta) *
         (1.0 / pow32((mu12 - 1.0) * (mu12 + 1.0)) - 1.0 / pow32((mu14 - 1.0) * (mu14 + 1.0)));
}

std::string to_string(Reading r) { return r == Reading::CoshInside ? "cosh-inside" : "cos-inside"; }

Reading parse_reading(const std::string& s) {
  const std::string t = lower(s);
  if (t == "cosh-inside" || t == "coshinside" || t == "cosh") return Reading::CoshInside;
  if (t == "cos-inside" || t == "cosinside" || t == "cos") return Reading::CosInside;
  throw InvalidArgument("unknown reading '" + s + "' (expected cosh-inside or cos-inside)");
}

namespace {
double inside(double phi, Reading reading) {
  return reading == Reading::CoshInside ? std::cosh(phi) : std::cos(phi);
}
double inv32_abs(double u) {
  const double base = std::abs((u - 1.0) * (u + 1.0));
  return 1.0 / pow32(base);
}
}  // namespace

double nh_identity_residual(double phi, double eta, double m, Reading reading) {
  if (!(eta >= 1.0)) throw InvalidArgument("eta must be >= 1");
  const double e2 = eta * eta, c = inside(phi, reading);
  return m * eta * std::sinh(phi) *
         (inv32_abs(e2 - 1.0 - e2 * c) + inv32_abs(e2 - 1.0 + e2 * c));
}

double neh_identity_residual(double phi, double r, double m, Reading reading) {
  if (!(r >= 0.0)) throw InvalidArgument("r must be >= 0");
  const double r2 = r * r, e2 = r2 + 1.0, c = inside(phi, reading);
  return m * std::sqrt(e2) * std::sinh(phi) * (inv32_abs(r2 - e2 * c) + inv32_abs(r2 + e2 * c));
}

// --- roots ------------------------------------------------------------------------

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (!std::isfinite(fm)) {
      // Land on whichever side keeps a finite endpoint; a non-finite midpoint
      // means the bracket hugs a singularity.
      hi = mid;
      continue;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

std::vector<Crossing> locate_sign_changes(const std::function<double(double)>& f,
                                          const std::vector<double>& xs,
                                          const std::vector<double>& fs,
                                          const std::vector<bool>& contiguous) {
  std::vector<Crossing> out;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (!contiguous[k]) continue;
    const double f0 = fs[k], f1 = fs[k + 1];
    if (!std::isfinite(f0) || !std::isfinite(f1)) continue;
    if (f0 == 0.0) {
      out.push_back({xs[k], xs[k], xs[k], 0.0, false});
      continue;
    }
    if (f1 == 0.0 || (f0 < 0.0) == (f1 < 0.0)) continue;
    const double x = bisect(f, xs[k], xs[k + 1]);
    const double fx = f(x);
    // Near a root |f| shrinks below the bracket values; near a pole it grows.
    // Probe a little away from x, since f(x) itself may round to 0 or inf.
    const double d = 1e-6 * (xs[k + 1] - xs[k]);
    const double fl = f(std::max(xs[k], x - d)), fr = f(std::min(xs[k + 1], x + d));
    const double edge = std::max(std::abs(f0), std::abs(f1));
    const bool pole = !std::isfinite(fx) || !std::isfinite(fl) || !std::isfinite(fr) ||
                      std::max(std::abs(fl), std::abs(fr)) > edge;
    out.push_back({xs[k], xs[k + 1], x, fx, pole});
  }
  if (!xs.empty() && fs.back() == 0.0) out.push_back({xs.back(), xs.back(), xs.back(), 0.0, false});
  return out;
}

// --- grids ------------------------------------------------------------------------

std::vector<double> ParamRange::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  for (int k = 0; k < steps; ++k)
    out.push_back(k == steps - 1 ? hi : lo + (hi - lo) * k / (steps - 1));
  return out;
}

const ParamRange& ScanGrid::range(const std::string& name) const {
  for (const ParamRange& r : ranges)
    if (r.name == name) return r;
  throw InvalidArgument("grid has no range '" + name + "'");
}

double ScanGrid::margin(const std::string& rule) const {
  for (const Exclusion& e : exclusions)
    if (e.rule == rule) return e.margin;
  throw InvalidArgument("grid has no exclusion '" + rule + "'");
}

double ScanGrid::value(const std::string& name) const {
  const auto it = fixed.find(name);
  if (it == fixed.end()) throw InvalidArgument("grid has no fixed value '" + name + "'");
  return it->second;
}

const std::vector<double>& ScanGrid::list(const std::string& name) const {
  const auto it = lists.find(name);
  if (it == lists.end()) throw InvalidArgument("grid has no list '" + name + "'");
  return it->second;
}

void ScanGrid::validate() const {
  for (const ParamRange& r : ranges) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi))
      throw InvalidArgument("range '" + r.name + "' is empty: need lo < hi");
    if (r.steps < 2) throw InvalidArgument("range '" + r.name + "' needs at least 2 steps");
  }
  for (const Exclusion& e : exclusions)
    if (!(e.margin >= 0.0)) throw InvalidArgument("exclusion '" + e.rule + "' needs margin >= 0");
  for (const auto& [k, v] : lists)
    if (v.empty()) throw InvalidArgument("list '" + k + "' is empty");
}

nlohmann::json ScanGrid::to_json() const {
  nlohmann::json j;
  j["ranges"] = nlohmann::json::array();
  for (const ParamRange& r : ranges)
    j["ranges"].push_back({{"name", r.name}, {"lo", r.lo}, {"hi", r.hi}, {"steps", r.steps}});
  j["exclusions"] = nlohmann::json::array();
  for (const Exclusion& e : exclusions)
    j["exclusions"].push_back({{"rule", e.rule}, {"margin", e.margin}});
  j["fixed"] = fixed;
  j["lists"] = lists;
  return j;
}

namespace {

double parse_number(const std::string& s, const std::string& context) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  std::string token(first, last);
  // allow a few symbolic constants for angles
  const std::string t = lower(token);
  if (t == "pi") return kPi;
  if (t == "-pi") return -kPi;
  if (t == "pi/2") return kPi / 2;
  if (t == "pi/4") return kPi / 4;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw InvalidArgument("cannot parse number '" + s + "' in " + context);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void apply_grid_override(ScanGrid& grid, const std::string& entry) {
  const auto eq = entry.find('=');
  if (eq == std::string::npos || eq == 0)
    throw InvalidArgument("grid override '" + entry + "' must look like name=lo:hi:steps");
  const std::string name = entry.substr(0, eq);
  const std::string rhs = entry.substr(eq + 1);
  for (ParamRange& r : grid.ranges)
    if (r.name == name) {
      const auto parts = split(rhs, ':');
      if (parts.size() != 3)
        throw InvalidArgument("range override '" + entry + "' must be name=lo:hi:steps");
      const double steps = parse_number(parts[2], entry);
      if (steps != std::floor(steps) || steps < 0 || steps > 1e8)
        throw InvalidArgument("steps must be a non-negative integer in '" + entry + "'");
      ParamRange next{name, parse_number(parts[0], entry), parse_number(parts[1], entry),
                      static_cast<int>(steps)};
      ScanGrid probe;
      probe.ranges.push_back(next);
      probe.validate();
      r = next;
      return;
    }
  for (Exclusion& e : grid.exclusions)
    if (e.rule == name) {
      e.margin = parse_number(rhs, entry);
      if (!(e.margin >= 0.0)) throw InvalidArgument("exclusion margin must be >= 0");
      return;
    }
  if (auto it = grid.fixed.find(name); it != grid.fixed.end()) {
    it->second = parse_number(rhs, entry);
    return;
  }
  if (auto it = grid.lists.find(name); it != grid.lists.end()) {
    std::vector<double> values;
    for (const std::string& part : split(rhs, ';')) values.push_back(parse_number(part, entry));
    if (values.empty()) throw InvalidArgument("list override '" + entry + "' is empty");
    it->second = values;
    return;
  }
  throw InvalidArgument("unknown grid parameter '" + name + "'");
}

void apply_tolerance_override(Tolerances& tol, const std::string& entry) {
  const auto eq = entry.find('=');
  if (eq == std::string::npos || eq == 0)
    throw InvalidArgument("tolerance override '" + entry + "' must look like name=value");
  const std::string name = entry.substr(0, eq);
  const auto it = tol.find(name);
  if (it == tol.end()) throw InvalidArgument("unknown tolerance '" + name + "'");
  const double v = parse_number(entry.substr(eq + 1), entry);
  if (!(v > 0.0)) throw InvalidArgument("tolerance '" + name + "' must be positive");
  it->second = v;
}

// --- identifiers and reports ---------------------------------------------------------

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1_trapezoid";
    case TheoremId::T2: return "T2_rect_releq_2d";
    case TheoremId::T3: return "T3_pos_elliptic";
    case TheoremId::T4: return "T4_pos_ell_ell";
    case TheoremId::T5: return "T5_neg_elliptic";
    case TheoremId::T6: return "T6_neg_hyperbolic";
    case TheoremId::T7: return "T7_neg_ell_hyp";
  }
  return "?";
}

TheoremId parse_theorem(const std::string& s) {
  for (TheoremId id : {TheoremId::T1, TheoremId::T2, TheoremId::T3, TheoremId::T4, TheoremId::T5,
                       TheoremId::T6, TheoremId::T7}) {
    const std::string full = to_string(id);
    if (lower(s) == lower(full) || lower(s) == lower(full.substr(0, 2))) return id;
  }
  throw InvalidArgument("unknown theorem '" + s + "' (expected T1..T7)");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Confirmed: return "Confirmed";
    case Status::Violated: return "Violated";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["theorem"] = to_string(theorem);
  j["status"] = to_string(status);
  j["evidence"] = evidence;
  j["notes"] = notes;
  j["witness"] = witness;
  j["grid"] = grid.to_json();
  j["tolerances"] = tolerances;
  return j;
}

std::string VerificationReport::summary() const {
  std::ostringstream out;
  out << to_string(theorem) << ": " << to_string(status) << "\n";
  if (evidence.contains("checks")) {
    for (const auto& c : evidence["checks"]) {
      out << "  [" << (c.value("pass", false) ? "ok" : "FAIL") << "] " << c.value("name", "")
          << ": " << c.value("detail", "") << "\n";
    }
  }
  for (const std::string& n : notes) out << "  note: " << n << "\n";
  if (!witness.is_null()) out << "  witness: " << witness.dump() << "\n";
  return out.str();
}

}  // namespace curved_nbody
