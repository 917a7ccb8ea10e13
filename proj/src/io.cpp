#include "catgate/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace catgate {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("bad numeric value for " + what + ": '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("bad integer value for " + what + ": '" + s + "'");
  }
}

int infer_modes(int cutoff, size_t len) {
  size_t d = size_t(cutoff) + 1;
  if (len == d) return 1;
  if (len == d * d) return 2;
  throw IoError("state length " + std::to_string(len) +
                " does not match cutoff " + std::to_string(cutoff));
}

}  // namespace

json ket_to_json(const Ket& psi) {
  json j;
  j["cutoff"] = psi.cutoff;
  std::vector<double> re(psi.dim()), im(psi.dim());
  for (int i = 0; i < psi.dim(); ++i) {
    re[i] = psi.amps[i].real();
    im[i] = psi.amps[i].imag();
  }
  j["re"] = re;
  j["im"] = im;
  if (psi.modes == 2) j["modes"] = 2;
  return j;
}

Ket ket_from_json(const json& j) {
  if (!j.contains("cutoff") || !j.contains("re") || !j.contains("im"))
    throw IoError("ket json needs cutoff, re, im");
  int cutoff = j.at("cutoff").get<int>();
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw IoError("ket json: re/im length mismatch");
  int modes = infer_modes(cutoff, re.size());
  Ket k = make_ket(cutoff, modes);
  for (size_t i = 0; i < re.size(); ++i) k.amps[int(i)] = {re[i], im[i]};
  return k;
}

json density_to_json(const DensityOp& rho) {
  json j;
  j["cutoff"] = rho.cutoff;
  int d = rho.dim();
  std::vector<std::vector<double>> re(d, std::vector<double>(d)),
      im(d, std::vector<double>(d));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      re[r][c] = rho.mat(r, c).real();
      im[r][c] = rho.mat(r, c).imag();
    }
  j["re"] = re;
  j["im"] = im;
  if (rho.modes == 2) j["modes"] = 2;
  return j;
}

DensityOp density_from_json(const json& j) {
  if (!j.contains("cutoff") || !j.contains("re") || !j.contains("im"))
    throw IoError("density json needs cutoff, re, im");
  int cutoff = j.at("cutoff").get<int>();
  auto re = j.at("re").get<std::vector<std::vector<double>>>();
  auto im = j.at("im").get<std::vector<std::vector<double>>>();
  if (re.size() != im.size()) throw IoError("density json: re/im mismatch");
  int modes = infer_modes(cutoff, re.size());
  int d = int(re.size());
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    if (int(re[r].size()) != d || int(im[r].size()) != d)
      throw IoError("density json: ragged matrix");
    for (int c = 0; c < d; ++c) m(r, c) = {re[r][c], im[r][c]};
  }
  return density_from_matrix(m, cutoff, modes);
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

void save_json(const json& j, const std::string& path) {
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

void write_wigner_csv(const std::string& path, const WignerGrid& grid) {
  auto f = open_out(path);
  f << "x,p,w\n";
  for (int i = 0; i < grid.xs.size(); ++i)
    for (int j = 0; j < grid.ps.size(); ++j)
      f << fmt(grid.xs[i]) << ',' << fmt(grid.ps[j]) << ','
        << fmt(grid.values(i, j)) << '\n';
}

void write_quadrature_csv(const std::string& path,
                          const QuadratureRecord& rec) {
  auto f = open_out(path);
  f << "phase_rad,quadrature\n";
  for (const auto& s : rec.samples)
    f << fmt(s.phase) << ',' << fmt(s.value) << '\n';
}

QuadratureRecord read_quadrature_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(f, line) || trim(line) != "phase_rad,quadrature")
    throw IoError(path + ": expected header 'phase_rad,quadrature'");
  QuadratureRecord rec;
  size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t comma = t.find(',');
    if (comma == std::string::npos)
      throw IoError(path + ":" + std::to_string(lineno) + ": missing comma");
    QuadratureSample s;
    s.phase = parse_double(t.substr(0, comma), "phase_rad");
    s.value = parse_double(t.substr(comma + 1), "quadrature");
    rec.samples.push_back(s);
  }
  if (rec.samples.empty()) throw IoError(path + ": no samples");
  return rec;
}

void write_histogram_csv(const std::string& path,
                         const std::vector<Histogram>& hists) {
  auto f = open_out(path);
  f << "phase_rad,x_lo,x_hi,count\n";
  for (const auto& h : hists)
    for (int b = 0; b < h.counts.size(); ++b)
      f << fmt(h.phase) << ',' << fmt(h.edges[b]) << ',' << fmt(h.edges[b + 1])
        << ',' << h.counts[b] << '\n';
}

void write_map_csv(const std::string& path, const FidelityMap& map) {
  auto f = open_out(path);
  f << "theta_rad,phi_rad,fidelity\n";
  for (int i = 0; i < map.thetas.size(); ++i)
    for (int j = 0; j < map.phis.size(); ++j)
      f << fmt(map.thetas[i]) << ',' << fmt(map.phis[j]) << ','
        << fmt(map.values(i, j)) << '\n';
}

void write_curve_csv(const std::string& path, const std::string& varname,
                     const std::vector<CurvePoint>& curve) {
  auto f = open_out(path);
  f << varname << ",value\n";
  for (const auto& pt : curve) f << fmt(pt.x) << ',' << fmt(pt.value) << '\n';
}

json fit_report_json(const SqueezerFit& fit, double xi,
                     const ComparisonReport& cmp) {
  json j;
  j["s"] = fit.model.s;
  j["h"] = fit.model.h;
  j["xi"] = xi;
  std::vector<double> chi2, phases;
  for (const auto& pc : cmp.per_phase) {
    chi2.push_back(pc.chi2_reduced);
    phases.push_back(pc.phase);
  }
  j["chi2_per_phase"] = chi2;
  j["chi2_overall"] = cmp.chi2_overall;
  j["phases"] = phases;
  j["initial"] = {{"s", fit.initial.s}, {"h", fit.initial.h}};
  return j;
}

json characterization_report_json(const CharacterizationReport& rep) {
  json j;
  j["alpha"] = rep.alpha;
  j["gate"] = {{"transmissivity", rep.gate.transmissivity},
               {"xi", rep.gate.modal_purity},
               {"kappa", rep.gate.apd_efficiency},
               {"eta", rep.gate.homodyne_efficiency},
               {"cutoff", rep.gate.cutoff}};
  j["map"] = {{"min", rep.map.min},
              {"max", rep.map.max},
              {"mean", rep.map.mean},
              {"equator_mean", rep.map.equator_mean},
              {"pole_mean", rep.map.pole_mean}};
  j["entangled"] = {{"fidelity", rep.entangled.fidelity},
                    {"good", rep.entangled.good},
                    {"bad", rep.entangled.bad},
                    {"click_weight", rep.entangled.weight}};
  j["adequacy"] = rep.adequacy;
  j["success_rate"] = rep.success_rate;
  j["adequacy_vs_tanh_2a2"] = rep.adequacy_vs_tanh_2a2;
  j["adequacy_vs_tanh_a2"] = rep.adequacy_vs_tanh_a2;
  return j;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  RunConfig cfg;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected key=value");
    cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "alpha")
    alpha = parse_double(value, key);
  else if (key == "s")
    s = parse_double(value, key);
  else if (key == "h")
    h = parse_double(value, key);
  else if (key == "transmissivity")
    transmissivity = parse_double(value, key);
  else if (key == "xi")
    xi = parse_double(value, key);
  else if (key == "kappa")
    kappa = parse_double(value, key);
  else if (key == "eta")
    eta = parse_double(value, key);
  else if (key == "cutoff")
    cutoff = int(parse_int(value, key));
  else if (key == "two_mode_cutoff")
    two_mode_cutoff = int(parse_int(value, key));
  else if (key == "n_phases")
    n_phases = int(parse_int(value, key));
  else if (key == "samples_per_phase")
    samples_per_phase = int(parse_int(value, key));
  else if (key == "seed")
    seed = std::uint64_t(parse_int(value, key));
  else if (key == "bins")
    bins = int(parse_int(value, key));
  else if (key == "x_max")
    x_max = parse_double(value, key);
  else if (key == "n_theta")
    n_theta = int(parse_int(value, key));
  else if (key == "n_phi")
    n_phi = int(parse_int(value, key));
  else if (key == "theta")
    theta = parse_double(value, key);
  else if (key == "phi")
    phi = parse_double(value, key);
  else
    throw IoError("unknown config key: " + key);
}

std::string RunConfig::serialize() const {
  std::ostringstream o;
  o << "alpha = " << fmt(alpha) << "\n"
    << "s = " << fmt(s) << "\n"
    << "h = " << fmt(h) << "\n"
    << "transmissivity = " << fmt(transmissivity) << "\n"
    << "xi = " << fmt(xi) << "\n"
    << "kappa = " << fmt(kappa) << "\n"
    << "eta = " << fmt(eta) << "\n"
    << "cutoff = " << cutoff << "\n"
    << "two_mode_cutoff = " << two_mode_cutoff << "\n"
    << "n_phases = " << n_phases << "\n"
    << "samples_per_phase = " << samples_per_phase << "\n"
    << "seed = " << seed << "\n"
    << "bins = " << bins << "\n"
    << "x_max = " << fmt(x_max) << "\n"
    << "n_theta = " << n_theta << "\n"
    << "n_phi = " << n_phi << "\n"
    << "theta = " << fmt(theta) << "\n"
    << "phi = " << fmt(phi) << "\n";
  return o.str();
}

GateParams RunConfig::gate() const {
  GateParams p;
  p.transmissivity = transmissivity;
  p.modal_purity = xi;
  p.apd_efficiency = kappa;
  p.homodyne_efficiency = eta;
  p.cutoff = cutoff;
  return p;
}

SqueezerModel RunConfig::source() const { return {s, h}; }

CatQubitSpec RunConfig::qubit() const { return {alpha, cutoff}; }

BinGrid RunConfig::bin_grid() const { return {bins, x_max}; }

std::vector<double> RunConfig::phase_list() const {
  if (n_phases < 1) throw IoError("n_phases must be >= 1");
  std::vector<double> ps(n_phases);
  for (int k = 0; k < n_phases; ++k)
    ps[k] = k * std::numbers::pi / n_phases;
  return ps;
}

std::string resolve_outdir(const std::string& flag_value) {
  std::string dir = flag_value;
  if (dir.empty()) {
    const char* env = std::getenv("CATGATE_OUTDIR");
    dir = (env && *env) ? env : ".";
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
  return dir;
}

}  // namespace catgate
