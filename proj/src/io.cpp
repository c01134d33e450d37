#include "ruelle/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ruelle::io {

json to_json(Scalar z) { return json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("expected a number or [re, im], got " + j.dump());
}

TransitionStructure matrix_from_json(const json& j) {
  const json& rows = j.is_array() ? j : j.at("rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (j.is_object() && j.contains("n") && j.at("n").get<Eigen::Index>() != n)
    throw std::invalid_argument("matrix \"n\" does not match the number of rows");
  Eigen::MatrixXi a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n) throw std::invalid_argument("matrix is not square");
    for (Eigen::Index k = 0; k < n; ++k) a(i, k) = row.at(static_cast<std::size_t>(k)).get<int>();
  }
  return TransitionStructure(a);
}

json matrix_to_json(const TransitionStructure& shift) {
  json rows = json::array();
  for (int i = 0; i < shift.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < shift.size(); ++k) row.push_back(shift.adjacency()(i, k));
    rows.push_back(row);
  }
  return {{"n", shift.size()}, {"rows", rows}};
}

TabulatedFunction table_from_json(const TransitionStructure& shift, const json& j) {
  const int depth = j.at("depth").get<int>();
  if (depth < 0) throw std::invalid_argument("table depth must be non-negative");
  auto basis = make_basis(shift, depth);
  const json& values = j.at("values");
  if (values.size() != basis->size())
    throw std::invalid_argument("table has " + std::to_string(values.size()) + " entries, expected " +
                                std::to_string(basis->size()));
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->size()));
  std::vector<bool> seen(basis->size(), false);
  for (const auto& [key, value] : values.items()) {
    const Word w = key.empty() ? Word{} : parse_word(key, shift.size());
    const std::ptrdiff_t idx = static_cast<int>(w.size()) == depth ? basis->index_of(w) : -1;
    if (idx < 0) throw std::invalid_argument("table word \"" + key + "\" is not an admissible depth-" +
                                             std::to_string(depth) + " word");
    v(idx) = scalar_from_json(value);
    seen[static_cast<std::size_t>(idx)] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("table does not cover every admissible word");
  return {basis, v};
}

json table_to_json(const TabulatedFunction& t) {
  json values = json::object();
  for (std::size_t i = 0; i < t.basis().size(); ++i)
    values[format_word(t.basis().words()[i], t.shift().size())] = to_json(t.values()(static_cast<Eigen::Index>(i)));
  return {{"depth", t.depth()}, {"values", values}};
}

Potential potential_from_json(const TransitionStructure& shift, const json& j, const std::filesystem::path& base) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "constant") return Potential::constant(scalar_from_json(j.value("value", json(0.0))));
  if (family == "geometric")
    return Potential::geometric(j.at("r").get<double>(), j.value("scale2", 0.5));
  if (family == "table") {
    if (j.contains("file")) return Potential::table(table_from_json(shift, read_json_file(base / j.at("file").get<std::string>())));
    return Potential::table(table_from_json(shift, j));
  }
  if (family == "linear_combination") {
    std::vector<std::pair<Scalar, Potential>> terms;
    for (const json& t : j.at("terms"))
      terms.emplace_back(scalar_from_json(t.at("coefficient")), potential_from_json(shift, t.at("potential"), base));
    return Potential::linear_combination(std::move(terms));
  }
  throw std::invalid_argument("unknown potential family \"" + family + "\"");
}

MarkovMeasure measure_from_json(const TransitionStructure& shift, const json& j) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "parry")) return MarkovMeasure::parry(shift);
  if (!j.is_object()) throw std::invalid_argument("measure must be \"parry\" or {\"p\", \"P\"}");
  const auto p = j.at("p").get<std::vector<double>>();
  const auto P = j.at("P").get<std::vector<std::vector<double>>>();
  const auto n = static_cast<Eigen::Index>(shift.size());
  if (static_cast<Eigen::Index>(p.size()) != n || static_cast<Eigen::Index>(P.size()) != n)
    throw std::invalid_argument("measure dimensions do not match the matrix");
  Eigen::VectorXd pv(n);
  Eigen::MatrixXd Pm(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    pv(i) = p[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(P[static_cast<std::size_t>(i)].size()) != n)
      throw std::invalid_argument("measure P is not square");
    for (Eigen::Index k = 0; k < n; ++k) Pm(i, k) = P[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  return MarkovMeasure(shift, pv, Pm);
}

json spectrum_to_json(const SpectralData& s, int basis_depth) {
  json eig = json::array();
  for (Scalar l : s.eigenvalues) eig.push_back(to_json(l));
  return {{"eigenvalues", eig}, {"multiplicities", s.multiplicities}, {"basis_depth", basis_depth}};
}

json report_to_json(const BoundReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  return {{"name", r.name}, {"measured", r.measured}, {"bound", r.bound}, {"satisfied", r.satisfied},
          {"parameters", params}};
}

std::string number_text(double x) { return json(x).dump(); }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ruelle::io
