#include "commands.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ruelle/diagnostics.hpp"
#include "ruelle/errors.hpp"
#include "ruelle/io.hpp"
#include "ruelle/zeta.hpp"

namespace ruelle::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Config {
  Config(TransitionStructure s, Potential p, MarkovMeasure m) : shift(std::move(s)), f(std::move(p)), mu(std::move(m)) {}

  TransitionStructure shift;
  Potential f;
  MarkovMeasure mu;
  json raw;

  int m_min = 2, m_max = 6;
  int q_min = 1, q_max = 8;
  int Q = 12;
  std::vector<int> trace_q{2, 3};

  double rank_tol = 1e-12;
  double cluster_tol = 1e-8;
  double birkhoff_tol = 1e-10;
  int quadrature_extra = 4;

  fs::path out_dir = "out";
  bool want_json = true;
  bool want_csv = false;

  double c2_scale = 1.0;
  ThetaProfile theta = ThetaProfile::geometric(1.0, 0.5);

  double alpha = 1.0;
  std::optional<double> R;
  std::optional<int> calibration_m;
  double lip_theta = 0.1, lip_theta_prime = 0.5;
  int k_max = 4;
  int phi_depth = 2;
  std::vector<Scalar> z_grid;

  SpectrumOptions spectrum_options() const { return {cluster_tol, rank_tol, 4096}; }
  bool local() const { return f.locality_depth().has_value(); }
  std::vector<int> m_range() const {
    std::vector<int> out;
    for (int m = m_min; m <= m_max; ++m) out.push_back(m);
    return out;
  }
};

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::pair<int, int> range_of(const json& j, const char* key, std::pair<int, int> fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& r = j.at(key);
  std::pair<int, int> out = r.is_array() ? std::pair{r.at(0).get<int>(), r.at(1).get<int>()}
                                         : std::pair{r.get<int>(), r.get<int>()};
  if (out.first > out.second) throw std::invalid_argument(std::string("empty range for \"") + key + "\"");
  return out;
}

Config load_config(const Options& options) {
  const json raw = io::read_json_file(options.config);
  const fs::path base = options.config.parent_path();
  TransitionStructure shift = [&] {
    if (raw.contains("matrix")) return io::matrix_from_json(raw.at("matrix"));
    if (raw.contains("matrix_file")) return io::matrix_from_json(io::read_json_file(base / raw.at("matrix_file").get<std::string>()));
    throw std::invalid_argument("config needs \"matrix\" or \"matrix_file\"");
  }();
  Potential f = raw.contains("potential") ? io::potential_from_json(shift, raw.at("potential"), base)
                                          : Potential::constant(0.0);
  MarkovMeasure mu = io::measure_from_json(shift, raw.value("measure", json("parry")));
  Config c(std::move(shift), std::move(f), std::move(mu));
  c.raw = raw;

  const json sched = raw.value("schedule", json::object());
  std::tie(c.m_min, c.m_max) = range_of(sched, "m", {c.m_min, c.m_max});
  std::tie(c.q_min, c.q_max) = range_of(sched, "q", {c.q_min, c.q_max});
  if (c.m_min < 1 || c.q_min < 1) throw std::invalid_argument("m and q ranges start at 1");
  c.Q = get_or(sched, "Q", c.Q);
  if (c.Q < 1) throw std::invalid_argument("Q must be >= 1");
  c.trace_q = get_or(sched, "trace_q", c.trace_q);
  if (sched.contains("z_grid"))
    for (const json& z : sched.at("z_grid")) c.z_grid.push_back(io::scalar_from_json(z));

  const json tol = raw.value("tolerances", json::object());
  c.rank_tol = get_or(tol, "eigensolve", c.rank_tol);
  c.cluster_tol = get_or(tol, "cluster", c.cluster_tol);
  c.birkhoff_tol = get_or(tol, "birkhoff", c.birkhoff_tol);
  c.quadrature_extra = get_or(tol, "quadrature_extra", c.quadrature_extra);
  if (!(c.rank_tol > 0 && c.cluster_tol > 0 && c.birkhoff_tol > 0) || c.quadrature_extra < 0)
    throw std::invalid_argument("tolerances must be positive");

  const json out = raw.value("output", json::object());
  c.out_dir = base / get_or<std::string>(out, "dir", "out");
  std::vector<std::string> formats = get_or(out, "formats", std::vector<std::string>{"json"});
  if (options.out) c.out_dir = *options.out;
  if (options.format) {
    if (*options.format == "both") formats = {"json", "csv"};
    else formats = {*options.format};
  }
  c.want_json = c.want_csv = false;
  for (const auto& fmt : formats) {
    if (fmt == "json") c.want_json = true;
    else if (fmt == "csv") c.want_csv = true;
    else throw std::invalid_argument("unknown output format \"" + fmt + "\"");
  }

  const json theta = raw.value("theta", json::object());
  const double default_r = c.f.geometric_rate().value_or(0.5);
  c.theta = ThetaProfile::geometric(get_or(theta, "D", 1.0), get_or(theta, "r", default_r));

  const json verify = raw.value("verify", json::object());
  c.alpha = get_or(verify, "alpha", c.alpha);
  if (verify.contains("R")) c.R = verify.at("R").get<double>();
  if (verify.contains("calibration_m")) c.calibration_m = verify.at("calibration_m").get<int>();
  c.lip_theta = get_or(verify, "theta", c.lip_theta);
  c.lip_theta_prime = get_or(verify, "theta_prime", c.lip_theta_prime);
  c.k_max = get_or(verify, "k_max", c.k_max);
  c.phi_depth = get_or(verify, "phi_depth", c.phi_depth);

  c.c2_scale = get_or(raw.value("corruption", json::object()), "c2_scale", 1.0);
  return c;
}

// ---------------------------------------------------------------------------
// Output

struct Table {
  std::string name;
  std::vector<std::string> columns;
  json rows = json::array();  // objects keyed by column
};

std::string csv_cell(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return v.dump();
}

std::string csv_text(const Table& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const json& row : t.rows) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_cell(row.at(t.columns[i]));
    out << "\n";
  }
  return out.str();
}

void emit(const Config& c, const std::string& stem, const json& doc, const std::vector<Table>& tables) {
  if (c.want_json) io::write_atomic(c.out_dir / (stem + ".json"), doc.dump(2) + "\n");
  if (c.want_csv)
    for (const Table& t : tables) io::write_atomic(c.out_dir / (t.name + ".csv"), csv_text(t));
}

json complex_json(Scalar z) { return io::to_json(z); }

TabulatedFunction local_table(const Config& c, int m) {
  if (auto d = c.f.locality_depth()) return sample_table(c.f, c.shift, *d, c.birkhoff_tol);
  return project_Em(c.f, m, c.mu, m + c.quadrature_extra, c.shift, c.birkhoff_tol);
}

// ---------------------------------------------------------------------------
// Commands

int cmd_entropy(const Config& c) {
  const PerronData p = perron(c.shift);
  const double h = std::log(p.root);
  json doc = {{"n", c.shift.size()}, {"perron_root", p.root}, {"h_top", h},
              {"aperiodicity_exponent", c.shift.aperiodicity_exponent()}};
  Table t{"entropy", {"quantity", "value"}};
  t.rows.push_back({{"quantity", "perron_root"}, {"value", doc["perron_root"]}});
  t.rows.push_back({{"quantity", "h_top"}, {"value", doc["h_top"]}});
  emit(c, "entropy", doc, {t});
  return kExitOk;
}

int cmd_words(const Config& c) {
  Table t{"words", {"m", "count"}};
  json lists = json::object();
  for (int m = 1; m <= c.m_max; ++m) {
    const std::uint64_t count = count_words(c.shift, m);
    t.rows.push_back({{"m", m}, {"count", count}});
    if (count <= 4096) {
      json words = json::array();
      const WordList list = enumerate_words(c.shift, m);
      for (std::size_t i = 0; i < list.size(); ++i) words.push_back(format_word(list[i], c.shift.size()));
      lists[std::to_string(m)] = words;
    }
  }
  emit(c, "words", {{"counts", t.rows}, {"words", lists}}, {t});
  return kExitOk;
}

int cmd_orbits(const Config& c) {
  Table t{"orbits", {"q", "count", "Z_re", "Z_im", "error"}};
  for (int q = c.q_min; q <= c.q_max; ++q) {
    const OrbitSum z = orbit_sum(c.f, c.shift, q, c.birkhoff_tol);
    t.rows.push_back({{"q", q}, {"count", z.points}, {"Z_re", z.value.real()}, {"Z_im", z.value.imag()},
                      {"error", z.error}});
  }
  emit(c, "orbits", {{"orbits", t.rows}}, {t});
  return kExitOk;
}

int cmd_spectrum(const Config& c) {
  const TabulatedFunction fm = local_table(c, c.m_max);
  const TransferMatrix m = build_matrix(fm);
  const SpectralData s = spectrum(m, c.spectrum_options());
  json doc = io::spectrum_to_json(s, m.basis_depth());
  doc["potential_depth"] = fm.depth();
  doc["projected"] = !c.local();
  Table t{"spectrum", {"re", "im", "multiplicity"}};
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    t.rows.push_back({{"re", doc["eigenvalues"][i][0]}, {"im", doc["eigenvalues"][i][1]},
                      {"multiplicity", s.multiplicities[i]}});
  emit(c, "spectrum", doc, {t});
  return kExitOk;
}

int cmd_pressure(const Config& c) {
  const PressureResult p = pressure(c.f, c.shift, c.m_max, c.mu, c.birkhoff_tol);
  json doc = {{"m", c.m_max}, {"value", p.value}, {"error", p.error}, {"lower", p.lower()}, {"upper", p.upper()},
              {"h_top", topological_entropy(c.shift)}};
  Table t{"pressure", {"quantity", "value"}};
  for (const char* key : {"value", "error", "lower", "upper", "h_top"})
    t.rows.push_back({{"quantity", key}, {"value", doc[key]}});
  emit(c, "pressure", doc, {t});
  return kExitOk;
}

json defect_json(const TraceCheck& check, Table& table) {
  json rows = json::array();
  for (const TraceRow& r : check.rows) {
    json row = {{"q", check.q}, {"m", r.m}, {"sum_re", r.spectral_sum.real()}, {"sum_im", r.spectral_sum.imag()},
                {"defect", r.defect}};
    rows.push_back(row);
    table.rows.push_back(row);
  }
  return {{"q", check.q}, {"Z", complex_json(check.orbit.value)}, {"orbit_error", check.orbit.error},
          {"rows", rows}, {"slope", check.slope ? json(*check.slope) : json(nullptr)}};
}

std::string plot_data(const TraceCheck& check) {
  std::string out = "# m defect\n";
  for (const TraceRow& r : check.rows) out += std::to_string(r.m) + " " + io::number_text(r.defect) + "\n";
  return out;
}

std::vector<TraceCheck> run_trace_checks(const Config& c) {
  std::vector<TraceCheck> out;
  const std::vector<int> ms = c.m_range();
  for (int q : c.trace_q)
    out.push_back(trace_formula_check(c.f, c.shift, q, ms, c.mu, c.birkhoff_tol, c.quadrature_extra));
  return out;
}

int cmd_zeta(const Config& c) {
  const std::vector<Scalar> Z = orbit_sums(c.f, c.shift, c.Q, c.birkhoff_tol);
  const std::vector<Scalar> c_orb = zeta_coeffs_from_orbits(Z);
  const TabulatedFunction fm = local_table(c, c.m_max);
  const TransferMatrix m = build_matrix(fm);
  const std::vector<Scalar> c_det = zeta_coeffs_from_determinant(m, c.Q);
  const SpectralData s = spectrum(m, c.spectrum_options());
  std::vector<Scalar> sums;
  for (int q = 1; q <= c.Q; ++q) sums.push_back(s.power_sum(q));
  const std::vector<Scalar> c_prod = newton_coefficients<Scalar>(sums);

  Table coeffs{"zeta_coeffs", {"k", "orbit_re", "orbit_im", "determinant_re", "determinant_im", "product_re", "product_im"}};
  double d_od = 0, d_op = 0, d_dp = 0;
  for (int k = 0; k <= c.Q; ++k) {
    const auto i = static_cast<std::size_t>(k);
    coeffs.rows.push_back({{"k", k}, {"orbit_re", c_orb[i].real()}, {"orbit_im", c_orb[i].imag()},
                           {"determinant_re", c_det[i].real()}, {"determinant_im", c_det[i].imag()},
                           {"product_re", c_prod[i].real()}, {"product_im", c_prod[i].imag()}});
    d_od = std::max(d_od, std::abs(c_orb[i] - c_det[i]));
    d_op = std::max(d_op, std::abs(c_orb[i] - c_prod[i]));
    d_dp = std::max(d_dp, std::abs(c_det[i] - c_prod[i]));
  }

  const double h = topological_entropy(c.shift);
  const int k0 = c.f.geometric_rate() ? k0_bound(*c.f.geometric_rate(), h).k0 : 0;
  const double l1 = std::abs(s.leading());
  std::vector<Scalar> grid = c.z_grid;
  if (grid.empty() && l1 > 0.0)
    for (double radius : {0.25, 0.5})
      for (int a = 0; a < 4; ++a) grid.push_back(std::polar(radius / l1, a * std::numbers::pi / 2));
  double eps = 0.0, b1 = 1.0;
  if (!c.local()) {
    eps = var_upper_bound(c.f, c.shift, c.m_max).value + var_upper_bound(c.f, c.shift, c.m_max + c.quadrature_extra).value;
    b1 = std::exp(max_real_upper(c.f, c.shift, 8));
  }
  Table products{"zeta_products", {"z_re", "z_im", "product_re", "product_im", "series_re", "series_im", "difference",
                                    "product_remainder", "series_remainder"}};
  for (Scalar z : grid) {
    const ProductValue p = spectral_product(s.nonzero, Z, z, k0);
    const double delta = perturbation_log_bound(c.shift, z, b1, eps);
    const double product_rem = p.remainder + std::abs(p.value) * std::expm1(delta);
    const Scalar series = evaluate_series(c_orb, z);
    products.rows.push_back({{"z_re", z.real()}, {"z_im", z.imag()}, {"product_re", p.value.real()},
                             {"product_im", p.value.imag()}, {"series_re", series.real()},
                             {"series_im", series.imag()}, {"difference", std::abs(p.value - series)},
                             {"product_remainder", product_rem},
                             {"series_remainder", series_remainder(s.nonzero, z, c.Q)}});
  }

  json doc = {{"Q", c.Q}, {"k0_upper_bound", k0}, {"basis_depth", m.basis_depth()},
              {"coefficients", coeffs.rows}, {"products", products.rows},
              {"deltas", {{"orbit_vs_determinant", d_od}, {"orbit_vs_product", d_op}, {"determinant_vs_product", d_dp}}}};
  json z_json = json::array();
  for (Scalar z : Z) z_json.push_back(complex_json(z));
  doc["Z"] = z_json;
  std::vector<Table> tables{coeffs, products};
  if (!c.local()) {
    Table defects{"zeta_defects", {"q", "m", "sum_re", "sum_im", "defect"}};
    json checks = json::array();
    for (const TraceCheck& t : run_trace_checks(c)) checks.push_back(defect_json(t, defects));
    doc["defects"] = checks;
    tables.push_back(defects);
  }
  emit(c, "zeta", doc, tables);
  return kExitOk;
}

int cmd_trace_check(const Config& c) {
  Table defects{"trace_check", {"q", "m", "sum_re", "sum_im", "defect"}};
  json checks = json::array();
  for (const TraceCheck& t : run_trace_checks(c)) {
    checks.push_back(defect_json(t, defects));
    io::write_atomic(c.out_dir / ("trace_check_q" + std::to_string(t.q) + ".dat"), plot_data(t));
  }
  emit(c, "trace_check", {{"checks", checks}}, {defects});
  return kExitOk;
}

ConstantSet corrupted(ConstantSet k, double scale) {
  k.C2 *= scale;
  return k;
}

std::vector<TabulatedFunction> sample_phis(const Config& c, int depth) {
  std::vector<TabulatedFunction> out;
  const WordList words = enumerate_words(c.shift, depth);
  for (std::size_t i = 0; i < words.size(); ++i) out.push_back(TabulatedFunction::indicator(c.shift, words[i]));
  return out;
}

int cmd_verify(const Config& c, bool strict, std::ostream& err) {
  std::vector<BoundReport> reports;
  const double h = topological_entropy(c.shift);
  const double R = c.R.value_or(1.25 * std::exp(h));
  const ConstantSet honest = constants_for(c.f, c.theta, c.shift);
  const ConstantSet k = corrupted(honest, c.c2_scale);
  const TabulatedFunction fm = local_table(c, c.m_max);
  const std::vector<TabulatedFunction> phis = sample_phis(c, c.phi_depth);

  for (const TabulatedFunction& phi : phis)
    for (int kk = 1; kk <= c.k_max; ++kk) reports.push_back(lasota_yorke_report(c.f, phi, kk));

  for (const TabulatedFunction& phi : phis) {
    for (int m = 1; m < phi.depth() + 1; ++m) {
      auto r = projection_reports(phi, m, c.lip_theta, c.lip_theta_prime, c.mu);
      reports.insert(reports.end(), r.begin(), r.end());
      const double ratio = lipschitz_norm(phi - project_Em(phi, m, c.mu), c.lip_theta_prime) /
                           lipschitz_norm(phi, c.lip_theta);
      reports.push_back(make_report("embedding", ratio, embedding_bound(c.lip_theta, c.lip_theta_prime, m, c.shift.size()).per_m,
                                    {{"m", m}, {"theta", c.lip_theta}, {"theta_prime", c.lip_theta_prime}}));
    }
  }

  const std::vector<TabulatedFunction> deeper = sample_phis(c, c.phi_depth + 1);
  for (int m = c.m_min; m <= c.m_max; ++m) {
    if (c.theta(m + 1) > 1.0) continue;
    for (const TabulatedFunction& phi : deeper)
      reports.push_back(projection_envelope_report(fm, phi, c.theta, k, m, c.mu));
  }

  // Eigenvalue counting, with c_alpha calibrated at one point on f = 0.
  const Potential zero = Potential::constant(0.0);
  const SpectralData s0 = spectrum(build_matrix(sample_table(zero, c.shift, 0)), c.spectrum_options());
  const ConstantSet k0_honest = constants_for(zero, c.theta, c.shift);
  const int cal_m = c.calibration_m.value_or(c.m_min);
  const std::vector<int> cal{cal_m};
  const double c_alpha = calibrate_c_alpha(s0, c.theta, k0_honest, c.alpha, R, cal);
  for (const BoundReport& r : counting_check(s0, c.theta, corrupted(k0_honest, c.c2_scale), c.alpha, R, c_alpha, cal, h))
    reports.push_back(r);
  const SpectralData sf = spectrum(build_matrix(fm), c.spectrum_options());
  const std::vector<int> ms = c.m_range();
  for (const BoundReport& r : counting_check(sf, c.theta, k, c.alpha, R, c_alpha, ms, h)) reports.push_back(r);

  // Cohomology obstruction.
  const CohomologyWitness w = cohomology_witness(c.shift);
  const auto depth = c.f.locality_depth();
  const Scalar base_defect = cohomology_defect(c.f, c.shift, w, 1, c.birkhoff_tol);
  if (depth && *depth <= 1)
    reports.push_back(make_report("cohomology_defect", std::abs(base_defect), 3 * c.birkhoff_tol, {{"m", 1}}));
  for (int n : {1, 2, 4}) {
    const Potential bumped = Potential::linear_combination(
        {{1.0, c.f}, {1.0, Potential::table(cohomology_perturbation(c.shift, w, 1, n))}});
    const Scalar d = cohomology_defect(bumped, c.shift, w, 1, c.birkhoff_tol);
    reports.push_back(make_report("cohomology_perturbation", 1.0 / n, std::abs(d - base_defect) + 3 * c.birkhoff_tol,
                                  {{"m", 1}, {"n", n}}));
  }

  std::string lines;
  Table t{"verify", {"name", "measured", "bound", "satisfied"}};
  int failures = 0;
  for (const BoundReport& r : reports) {
    const json j = io::report_to_json(r);
    lines += j.dump() + "\n";
    t.rows.push_back({{"name", j["name"]}, {"measured", j["measured"]}, {"bound", j["bound"]},
                      {"satisfied", j["satisfied"]}});
    if (!r.satisfied) ++failures;
  }
  if (c.want_json) io::write_atomic(c.out_dir / "verify.jsonl", lines);
  if (c.want_csv) io::write_atomic(c.out_dir / "verify.csv", csv_text(t));
  if (failures > 0) err << failures << " of " << reports.size() << " reports unsatisfied\n";
  return strict && failures > 0 ? kExitViolation : kExitOk;
}

int cmd_cohomology(const Config& c) {
  const CohomologyWitness w = cohomology_witness(c.shift);
  const int n = c.shift.size();
  json witness = {{"column", format_word(Word{w.column}, n)}, {"w_bar", format_word(w.w_bar, n)},
                  {"j1", format_word(Word{w.j1}, n)}, {"j2", format_word(Word{w.j2}, n)},
                  {"w_tilde", format_word(w.w_tilde, n)}, {"v", format_word(w.v, n)}};
  Table t{"cohomology", {"m", "defect_re", "defect_im"}};
  for (int m = 1; m <= std::min(c.m_max, 4); ++m) {
    const Scalar d = cohomology_defect(c.f, c.shift, w, m, c.birkhoff_tol);
    t.rows.push_back({{"m", m}, {"defect_re", d.real()}, {"defect_im", d.imag()}});
  }
  emit(c, "cohomology", {{"witness", witness}, {"defects", t.rows}}, {t});
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"entropy",  "words", "orbits",      "spectrum", "pressure",
                                              "zeta",     "trace-check", "verify", "cohomology"};
  return names;
}

int run_command(const std::string& name, const Options& options, std::ostream& err) {
  std::optional<Config> config;
  try {
    config.emplace(load_config(options));
  } catch (const NotAperiodic& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  const Config& c = *config;
  try {
    if (name == "entropy") return cmd_entropy(c);
    if (name == "words") return cmd_words(c);
    if (name == "orbits") return cmd_orbits(c);
    if (name == "spectrum") return cmd_spectrum(c);
    if (name == "pressure") return cmd_pressure(c);
    if (name == "zeta") return cmd_zeta(c);
    if (name == "trace-check") return cmd_trace_check(c);
    if (name == "verify") return cmd_verify(c, options.strict, err);
    if (name == "cohomology") return cmd_cohomology(c);
    err << "unknown command " << name << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitCompute;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ruelle transfer operators, spectra and zeta functions on topological Markov shifts"};
  app.require_subcommand(1);
  Options options;
  std::string out_dir, format;
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", options.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
    sub->add_flag("--strict", options.strict, "exit 1 when any report is unsatisfied");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }
  if (!out_dir.empty()) options.out = out_dir;
  if (!format.empty()) options.format = format;
  return run_command(app.get_subcommands().front()->get_name(), options, err);
}

}  // namespace ruelle::cli
