#include "ruelle/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundReport report_with_slack(std::string name, double measured, double bound, double slack,
                              std::vector<std::pair<std::string, double>> parameters) {
  const bool ok = measured <= bound + 1e-9 * std::abs(bound) + slack;
  return {std::move(name), measured, bound, ok, std::move(parameters)};
}

}  // namespace

BoundReport make_report(std::string name, double measured, double bound,
                        std::vector<std::pair<std::string, double>> parameters) {
  return report_with_slack(std::move(name), measured, bound, 0.0, std::move(parameters));
}

ApproxEnvelope approx_bound(int n, int q, double r, double R, double C4, double h_top) {
  if (n < 2 || q < 1) throw std::invalid_argument("approx_bound needs n >= 2 and q >= 1");
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("approx_bound needs 0 < r < 1");
  if (!(R > std::exp(h_top))) throw RTooSmall("R must exceed e^{h_top}");
  const double exponent = 2.0 * q * std::log(1.0 / r) / std::log(R);
  const double value = std::pow(C4 / (r * r), q) * std::pow(static_cast<double>(n - 1), -exponent);
  return {value, exponent, exponent > 1.0};
}

RankStep rank_step_bound(int m, int q, double R, const ConstantSet& c, const TransitionStructure& shift) {
  if (!c.C4 || !c.D || !c.r) throw HypothesisViolated("rank step needs a geometric profile D r^m");
  if (m < 2) throw HypothesisViolated("rank step needs m >= 2");
  const double D = *c.D, r = *c.r;
  if (D * std::pow(r, m + 1) > 1.0) throw HypothesisViolated("D r^{m+1} > 1");
  const double rank = static_cast<double>(q) * static_cast<double>(count_words(shift, m));
  const double room = std::pow(R, m);
  if (rank > room)
    throw HypothesisViolated("q rank E_" + std::to_string(m) + " = " + std::to_string(rank) + " exceeds R^m");
  const double envelope = std::pow(*c.C4, q) * std::pow(r, 2.0 * m * q);
  return {make_report("rank_step", rank, room,
                      {{"m", m}, {"q", q}, {"R", R}, {"C4", *c.C4}, {"envelope", envelope}}),
          envelope};
}

int count_above(const SpectralData& s, double threshold) {
  return static_cast<int>(
      std::count_if(s.nonzero.begin(), s.nonzero.end(), [&](Scalar l) { return std::abs(l) > threshold; }));
}

namespace {

double counting_base(const ThetaProfile& theta, const ConstantSet& c, double alpha, double R, int m) {
  const double t = theta(m);
  if (!(t > 0.0)) throw HypothesisViolated("counting bound needs theta_" + std::to_string(m) + " > 0");
  return (c.C2 + 1.0) * std::pow(4.0 * c.C2, alpha) * std::pow(t, -alpha) * std::pow(R, m - 1);
}

}  // namespace

std::vector<BoundReport> counting_check(const SpectralData& s, const ThetaProfile& theta, const ConstantSet& c,
                                        double alpha, double R, double c_alpha, std::span<const int> ms,
                                        double h_top) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(R > std::exp(h_top))) throw RTooSmall("R must exceed e^{h_top}");
  std::vector<BoundReport> out;
  for (int m : ms) {
    const double bound = c_alpha * counting_base(theta, c, alpha, R, m);
    const int count = count_above(s, (c.C2 + 1.0) * theta(m));
    out.push_back(make_report("eigenvalue_count", count, bound,
                              {{"m", m}, {"alpha", alpha}, {"R", R}, {"C2", c.C2}, {"c_alpha", c_alpha}}));
  }
  return out;
}

double calibrate_c_alpha(const SpectralData& s, const ThetaProfile& theta, const ConstantSet& c, double alpha,
                         double R, std::span<const int> ms) {
  double best = 0.0;
  for (int m : ms) {
    // An empty count still calibrates to "one eigenvalue allowed".
    const int count = std::max(count_above(s, (c.C2 + 1.0) * theta(m)), 1);
    best = std::max(best, count / counting_base(theta, c, alpha, R, m));
  }
  return best;
}

EmbeddingBound embedding_bound(double theta, double theta_prime, int m, int n) {
  if (!(theta > 0.0 && theta < theta_prime && theta_prime < 1.0))
    throw std::invalid_argument("embedding bound needs 0 < theta < theta' < 1");
  if (m < 1) throw std::invalid_argument("embedding bound needs m >= 1");
  const double x = n * theta / theta_prime;
  EmbeddingBound b{3.0 * std::pow(theta / theta_prime, m), x < 1.0, kInf};
  if (b.summable) b.tail = 3.0 * (n - 1) * x / (1.0 - x);
  return b;
}

// ---------------------------------------------------------------------------
// Cohomology

namespace {

// Shortest path from a to b, lexicographically smallest among shortest.
Word shortest_path(const TransitionStructure& shift, Symbol a, Symbol b) {
  const int n = shift.size();
  // Distances to b, then walk forward greedily choosing the smallest
  // successor that stays on a shortest path.
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  dist[static_cast<std::size_t>(b)] = 0;
  std::deque<Symbol> queue{b};
  while (!queue.empty()) {
    const Symbol y = queue.front();
    queue.pop_front();
    for (Symbol x = 0; x < n; ++x) {
      if (shift.allowed(x, y) && dist[static_cast<std::size_t>(x)] < 0) {
        dist[static_cast<std::size_t>(x)] = dist[static_cast<std::size_t>(y)] + 1;
        queue.push_back(x);
      }
    }
  }
  if (dist[static_cast<std::size_t>(a)] < 0) throw std::logic_error("no path in an aperiodic shift");
  Word path{a};
  Symbol x = a;
  while (x != b) {
    for (Symbol y = 0; y < n; ++y) {
      if (shift.allowed(x, y) && dist[static_cast<std::size_t>(y)] == dist[static_cast<std::size_t>(x)] - 1) {
        x = y;
        break;
      }
    }
    path.push_back(x);
  }
  return path;
}

bool contains(const Word& w, Symbol s) { return std::find(w.begin(), w.end(), s) != w.end(); }

}  // namespace

CohomologyWitness cohomology_witness(const TransitionStructure& shift) {
  const BranchingSymbol branch = branching_symbol(shift);
  const Symbol i = branch.column;
  CohomologyWitness out{};
  out.column = i;
  out.w_bar = shift.tail_cycle(i);
  out.w_bar.push_back(i);
  out.j1 = out.w_bar[out.w_bar.size() - 2];
  out.j2 = -1;
  for (Symbol j = 0; j < shift.size(); ++j) {
    if (j != out.j1 && shift.allowed(j, i)) {
      out.j2 = j;
      break;
    }
  }
  if (out.j2 < 0) throw std::logic_error("branching column has a single source");
  out.v = shortest_path(shift, i, out.j2);
  const Word unit(out.w_bar.begin(), out.w_bar.end() - 1);
  while (out.w_tilde.size() < out.v.size()) out.w_tilde.insert(out.w_tilde.end(), unit.begin(), unit.end());

  const Word& w = out.w_tilde;
  const Word& v = out.v;
  bool ok = shift.admissible(w) && shift.admissible(v) && w.front() == v.front() &&
            shift.allowed(w.back(), w.front()) && shift.allowed(v.back(), v.front()) && w.size() >= v.size() &&
            !contains(w, v.back());
  for (std::size_t a = 0; ok && a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) ok = ok && v[a] != v[b];
  if (!ok) throw std::logic_error("cohomology witness violates its defining properties");
  return out;
}

Word witness_power(const CohomologyWitness& w, int m) {
  if (m < 1) throw std::invalid_argument("witness power needs m >= 1");
  Word out;
  for (int k = 0; k < m; ++k) out.insert(out.end(), w.w_tilde.begin(), w.w_tilde.end());
  return out;
}

Scalar cohomology_defect(const Potential& phi, const TransitionStructure& shift, const CohomologyWitness& w,
                         int m, double tol) {
  const Word wm = witness_power(w, m);
  Word wv = wm;
  wv.insert(wv.end(), w.v.begin(), w.v.end());
  Word wwv = wm;
  wwv.insert(wwv.end(), wv.begin(), wv.end());
  const double each = tol / 3.0;
  return birkhoff_sum(phi, shift, wwv, each) - birkhoff_sum(phi, shift, wm, each) -
         birkhoff_sum(phi, shift, wv, each);
}

TabulatedFunction cohomology_perturbation(const TransitionStructure& shift, const CohomologyWitness& w, int m,
                                          int n) {
  if (n < 1) throw std::invalid_argument("perturbation index n must be >= 1");
  Word wwv = witness_power(w, m);
  const Word wm = wwv;
  wwv.insert(wwv.end(), wm.begin(), wm.end());
  wwv.insert(wwv.end(), w.v.begin(), w.v.end());
  return Scalar(1.0 / n) * TabulatedFunction::indicator(shift, wwv);
}

std::vector<double> ideal_partial_sums(std::span<const Scalar> lambda, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  std::vector<double> out;
  double sum = 0.0;
  for (Scalar l : lambda) {
    sum += std::pow(std::abs(l), p);
    out.push_back(sum);
  }
  return out;
}

double trace_norm_envelope(const ConstantSet& c, const ThetaProfile& theta, int m, int q, double R, double h_top) {
  if (!c.C4 || !c.r) return kInf;
  const double r = *c.r;
  const ApproxEnvelope a = approx_bound(2, q, r, R, *c.C4, h_top);
  if (!a.summable || theta(m) > 1.0 || theta(m + 1) > 1.0) return kInf;
  const double e = a.exponent;
  const double head = q * std::pow(c.C2, q - 1) * c.C3 * theta(m);
  const double scale = std::pow(*c.C4 / (r * r), q);
  double best = kInf;
  for (double n0 = 2.0; n0 < 1e12; n0 = std::ceil(n0 * 1.25)) {
    const double k = n0 - 1.0;
    const double tail = std::pow(k, -e) + std::pow(k, 1.0 - e) / (e - 1.0);
    best = std::min(best, 2.0 * n0 * head + 4.0 * scale * tail);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Inequality suite

std::vector<BoundReport> projection_reports(const TabulatedFunction& phi, int m, double theta,
                                            double theta_prime, const MarkovMeasure& mu) {
  if (!(theta < theta_prime)) throw std::invalid_argument("need theta < theta'");
  const TabulatedFunction em = project_Em(phi, m, mu);
  const TabulatedFunction diff = phi - em;
  const double slack = 1e-12 * std::max(1.0, phi.sup_norm());
  const auto params = std::vector<std::pair<std::string, double>>{
      {"m", m}, {"theta", theta}, {"theta_prime", theta_prime}, {"depth", phi.depth()}};
  std::vector<BoundReport> out;
  if (phi.is_real()) {
    out.push_back(report_with_slack("projection_max", em.values().real().maxCoeff(),
                                    phi.values().real().maxCoeff(), slack, params));
  }
  const std::vector<double> var_phi = phi.refined(std::max(phi.depth(), m)).variations();
  const std::vector<double> var_em = em.refined(std::max(phi.depth(), m)).variations();
  double worst = -kInf, worst_bound = 0.0;
  for (std::size_t k = 0; k < var_phi.size(); ++k) {
    if (var_em[k] - var_phi[k] > worst - worst_bound) {
      worst = var_em[k];
      worst_bound = var_phi[k];
    }
  }
  out.push_back(report_with_slack("projection_variation", worst, worst_bound, slack, params));
  const LipschitzSeminorm v = lipschitz_seminorm(phi, theta);
  out.push_back(report_with_slack("projection_sup", diff.sup_norm(), v.tail(m) * std::pow(theta, m), slack, params));
  out.push_back(report_with_slack("projection_lipschitz", lipschitz_norm(diff, theta_prime),
                                  3.0 * v.tail(m) * std::pow(theta / theta_prime, m), slack, params));
  return out;
}

BoundReport lasota_yorke_report(const Potential& f, const TabulatedFunction& phi, int k) {
  const LasotaYorke ly = lasota_yorke_check(f, phi, k);
  return make_report("lasota_yorke", ly.lhs, ly.rhs, {{"k", k}, {"depth", phi.depth()}});
}

BoundReport projection_envelope_report(const TabulatedFunction& f, const TabulatedFunction& phi,
                                       const ThetaProfile& theta, const ConstantSet& c, int m,
                                       const MarkovMeasure& mu) {
  const double next = theta(m + 1);
  if (next > 1.0) throw HypothesisViolated("theta_{m+1} > 1");
  const TabulatedFunction diff = phi - project_Em(phi, m, mu);
  const double norm = banach_norm(phi, theta);
  const double measured = norm > 0.0 ? banach_norm(apply(f, diff), theta) / norm : 0.0;
  return report_with_slack("finite_rank_step", measured, c.C2 * next, 1e-12,
                           {{"m", m}, {"C2", c.C2}, {"theta_next", next}});
}

}  // namespace ruelle
