#include "otrl/ot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace otrl {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double cost_power(double d, double p) {
  if (p == 1.0) return d;
  if (p == 2.0) return d * d;
  return std::pow(d, p);
}

double cost_root(double c, double p) {
  if (p == 1.0) return c;
  if (p == 2.0) return std::sqrt(c);
  return std::pow(c, 1.0 / p);
}

void validate_instance(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  require(mu.space() == nu.space(), Errc::space_mismatch,
          "measures live on different spaces: " + mu.space().to_string() + " vs " +
              nu.space().to_string());
  require(std::isfinite(p) && p >= 1.0, Errc::invalid_argument,
          "the order p must be a real number >= 1, got " + format_double(p));
}

// Exact transportation simplex on the dense bipartite instance. The basis is
// a spanning tree of rows+columns; Bland's rule (first negative reduced cost,
// lexicographically smallest leaving cell) prevents cycling on the heavily
// degenerate instances produced by Dirac mixtures.
class TransportSimplex {
 public:
  TransportSimplex(int m, int n, std::vector<double> cost, std::vector<double> supply,
                   std::vector<double> demand)
      : m_(m),
        n_(n),
        cost_(std::move(cost)),
        supply_(std::move(supply)),
        demand_(std::move(demand)),
        flow_(static_cast<std::size_t>(m) * n, 0.0),
        basic_(static_cast<std::size_t>(m) * n, false) {
    double scale = 0.0;
    for (double c : cost_) scale = std::max(scale, std::abs(c));
    eps_ = 1e-13 * (1.0 + scale);
  }

  std::vector<double> solve() {
    northwest_init();
    const long max_pivots = 20000L + 200L * (m_ + n_) * (m_ + n_);
    std::vector<double> u(m_), v(n_);
    for (long pivot = 0;; ++pivot) {
      require(pivot < max_pivots, Errc::internal, "transportation simplex failed to converge");
      compute_potentials(u, v);
      int ei = -1, ej = -1;
      for (int i = 0; i < m_ && ei < 0; ++i) {
        for (int j = 0; j < n_; ++j) {
          if (basic_[idx(i, j)]) continue;
          if (cost_[idx(i, j)] - u[i] - v[j] < -eps_) {
            ei = i;
            ej = j;
            break;
          }
        }
      }
      if (ei < 0) break;  // optimal
      pivot_step(ei, ej);
    }
    for (double& f : flow_) {
      if (f < 0.0) f = 0.0;  // clear subtraction dust
    }
    return flow_;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  void northwest_init() {
    std::vector<double> a = supply_, b = demand_;
    int i = 0, j = 0;
    while (true) {
      double t = std::max(0.0, std::min(a[i], b[j]));
      flow_[idx(i, j)] = t;
      basic_[idx(i, j)] = true;
      a[i] -= t;
      b[j] -= t;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (i == m_ - 1) {
        ++j;
      } else if (j == n_ - 1) {
        ++i;
      } else if (a[i] <= b[j]) {
        ++i;  // ties advance the row, leaving a zero basic cell in the column
      } else {
        ++j;
      }
    }
  }

  // Nodes 0..m-1 are rows, m..m+n-1 columns; basic cells are tree edges.
  void compute_potentials(std::vector<double>& u, std::vector<double>& v) const {
    std::vector<std::vector<std::pair<int, int>>> adj(m_ + n_);  // node -> (peer, cell)
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (!basic_[idx(i, j)]) continue;
        adj[i].push_back({m_ + j, static_cast<int>(idx(i, j))});
        adj[m_ + j].push_back({i, static_cast<int>(idx(i, j))});
      }
    }
    std::vector<char> known(m_ + n_, 0);
    std::vector<int> stack{0};
    u[0] = 0.0;
    known[0] = 1;
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      for (auto [peer, cell] : adj[node]) {
        if (known[peer]) continue;
        if (peer >= m_) {
          v[peer - m_] = cost_[cell] - u[node];
        } else {
          u[peer] = cost_[cell] - v[node - m_];
        }
        known[peer] = 1;
        stack.push_back(peer);
      }
    }
    require(std::count(known.begin(), known.end(), 1) == m_ + n_, Errc::internal,
            "transportation basis is not a spanning tree");
  }

  // Unique tree path from row `ei` to column node m_+ej, as a list of cells.
  std::vector<int> tree_path(int ei, int ej) const {
    std::vector<std::vector<std::pair<int, int>>> adj(m_ + n_);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (!basic_[idx(i, j)]) continue;
        adj[i].push_back({m_ + j, static_cast<int>(idx(i, j))});
        adj[m_ + j].push_back({i, static_cast<int>(idx(i, j))});
      }
    }
    std::vector<int> parent(m_ + n_, -1), parent_cell(m_ + n_, -1);
    std::vector<int> stack{ei};
    parent[ei] = ei;
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      if (node == m_ + ej) break;
      for (auto [peer, cell] : adj[node]) {
        if (parent[peer] >= 0) continue;
        parent[peer] = node;
        parent_cell[peer] = cell;
        stack.push_back(peer);
      }
    }
    require(parent[m_ + ej] >= 0, Errc::internal, "transportation basis is disconnected");
    std::vector<int> cells;
    for (int node = m_ + ej; node != ei; node = parent[node]) {
      cells.push_back(parent_cell[node]);
    }
    return cells;  // ordered from the column end back to the entering row
  }

  void pivot_step(int ei, int ej) {
    std::vector<int> path = tree_path(ei, ej);
    // Cycle: entering cell (+), then alternating signs along the path; the
    // path has odd length, so signs pair up consistently.
    std::vector<int> cycle{static_cast<int>(idx(ei, ej))};
    cycle.insert(cycle.end(), path.begin(), path.end());
    double theta = std::numeric_limits<double>::infinity();
    int leave_pos = -1;
    for (std::size_t k = 1; k < cycle.size(); k += 2) {
      double f = flow_[cycle[k]];
      if (f < theta || (f == theta && leave_pos >= 0 && cycle[k] < cycle[leave_pos])) {
        theta = f;
        leave_pos = static_cast<int>(k);
      }
    }
    require(leave_pos > 0, Errc::internal, "degenerate transportation cycle");
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      flow_[cycle[k]] += (k % 2 == 0) ? theta : -theta;
    }
    flow_[cycle[leave_pos]] = 0.0;
    basic_[cycle[leave_pos]] = false;
    basic_[idx(ei, ej)] = true;
  }

  int m_, n_;
  std::vector<double> cost_;
  std::vector<double> supply_;
  std::vector<double> demand_;
  std::vector<double> flow_;
  std::vector<char> basic_;
  double eps_;
};

// Exact minimum-cost assignment (Hungarian algorithm with potentials,
// O(n^3)); cost is an n x n row-major matrix.
double assignment_min_cost(int n, const std::vector<double>& cost) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) {
    total += cost[static_cast<std::size_t>(match[j] - 1) * n + (j - 1)];
  }
  return total;
}

}  // namespace

Coupling::Coupling(DiscreteMeasure row, DiscreteMeasure col, std::vector<double> weights)
    : row_(std::move(row)), col_(std::move(col)), weights_(std::move(weights)) {
  require(weights_.size() == row_.size() * col_.size(), Errc::invalid_argument,
          "coupling weights must form a rows x cols matrix");
  require(row_.space() == col_.space(), Errc::space_mismatch,
          "coupling marginals live on different spaces");
  for (double w : weights_) {
    require(std::isfinite(w), Errc::invalid_argument, "coupling entries must be finite");
  }
}

Coupling Coupling::diagonal(const DiscreteMeasure& mu) {
  const std::size_t n = mu.size();
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = mu.atom(i).weight;
  return Coupling(mu, mu, std::move(w));
}

Coupling Coupling::product(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<double> w;
  w.reserve(mu.size() * nu.size());
  for (const auto& a : mu.atoms()) {
    for (const auto& b : nu.atoms()) {
      w.push_back(a.weight * b.weight);
    }
  }
  return Coupling(mu, nu, std::move(w));
}

double Coupling::cost(double p) const {
  require(std::isfinite(p) && p >= 1.0, Errc::invalid_argument,
          "the order p must be a real number >= 1");
  const GroundSpace& space = row_.space();
  double total = 0.0;
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      double w = at(i, j);
      if (w == 0.0) continue;
      total += w * cost_power(space.distance(row_.atom(i).point, col_.atom(j).point), p);
    }
  }
  return total;
}

CouplingCheck check_coupling(const Coupling& plan, double marginal_tol, double negativity_tol) {
  CouplingCheck out;
  double worst_marginal = 0.0;
  double worst_negative = 0.0;
  for (std::size_t i = 0; i < plan.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < plan.cols(); ++j) {
      sum += plan.at(i, j);
      worst_negative = std::max(worst_negative, -plan.at(i, j));
    }
    worst_marginal = std::max(worst_marginal, std::abs(sum - plan.row_measure().atom(i).weight));
  }
  for (std::size_t j = 0; j < plan.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < plan.rows(); ++i) sum += plan.at(i, j);
    worst_marginal = std::max(worst_marginal, std::abs(sum - plan.col_measure().atom(j).weight));
  }
  out.worst_violation = std::max(worst_marginal, worst_negative);
  out.pass = worst_marginal <= marginal_tol && worst_negative <= negativity_tol;
  if (out.pass) {
    out.detail = "marginals and nonnegativity hold (worst deviation " +
                 format_double(out.worst_violation) + ")";
  } else if (worst_negative > negativity_tol) {
    out.detail = "negative entry of magnitude " + format_double(worst_negative);
  } else {
    out.detail = "marginal deviation " + format_double(worst_marginal) + " exceeds " +
                 format_double(marginal_tol);
  }
  return out;
}

OTResult solve_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  validate_instance(mu, nu, p);
  if (mu == nu) {
    Coupling plan = Coupling::diagonal(mu);
    return OTResult{p, 0.0, 0.0, std::move(plan)};
  }
  if (mu.size() == 1 || nu.size() == 1) {
    // The product plan is the only coupling when either side is a Dirac.
    Coupling plan = Coupling::product(mu, nu);
    double cost = plan.cost(p);
    return OTResult{p, cost, cost_root(cost, p), std::move(plan)};
  }
  const int m = static_cast<int>(mu.size());
  const int n = static_cast<int>(nu.size());
  std::vector<double> cost(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      cost[static_cast<std::size_t>(i) * n + j] =
          cost_power(mu.space().distance(mu.atom(i).point, nu.atom(j).point), p);
    }
  }
  std::vector<double> supply, demand;
  supply.reserve(m);
  demand.reserve(n);
  for (const auto& a : mu.atoms()) supply.push_back(a.weight);
  for (const auto& b : nu.atoms()) demand.push_back(b.weight);
  TransportSimplex simplex(m, n, cost, std::move(supply), std::move(demand));
  std::vector<double> flow = simplex.solve();
  double total = 0.0;
  for (std::size_t k = 0; k < flow.size(); ++k) {
    if (flow[k] != 0.0) total += flow[k] * cost[k];
  }
  total = std::max(total, 0.0);
  Coupling plan(mu, nu, std::move(flow));
  return OTResult{p, total, cost_root(total, p), std::move(plan)};
}

double w1_interval_closed_form(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require(mu.space().kind() == GroundSpace::Kind::Interval &&
              nu.space().kind() == GroundSpace::Kind::Interval,
          Errc::wrong_space, "the closed form applies to measures on the interval");
  // Merge the two sorted supports; between consecutive breakpoints both CDFs
  // are constant, so the integral is a finite sum of |F_mu - F_nu| * gap.
  std::vector<double> breaks;
  breaks.reserve(mu.size() + nu.size());
  for (const auto& a : mu.atoms()) breaks.push_back(a.point.coordinate());
  for (const auto& b : nu.atoms()) breaks.push_back(b.point.coordinate());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double integral = 0.0;
  double f_mu = 0.0, f_nu = 0.0;
  std::size_t i = 0, j = 0;
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const double x = breaks[k];
    while (i < mu.size() && mu.atom(i).point.coordinate() <= x) f_mu += mu.atom(i++).weight;
    while (j < nu.size() && nu.atom(j).point.coordinate() <= x) f_nu += nu.atom(j++).weight;
    const double next = (k + 1 < breaks.size()) ? breaks[k + 1] : 1.0;
    integral += std::abs(f_mu - f_nu) * (next - x);
  }
  return integral;
}

double brute_force_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                          int denominator) {
  validate_instance(mu, nu, p);
  require(denominator >= 1, Errc::invalid_argument, "the denominator must be positive");
  require(denominator <= 512, Errc::instance_too_large,
          "oracle instances are capped at denominator 512");
  auto expand = [&](const DiscreteMeasure& m) {
    std::vector<GroundPoint> points;
    points.reserve(denominator);
    for (const auto& a : m.atoms()) {
      const double scaled = a.weight * denominator;
      const double rounded = std::round(scaled);
      require(std::abs(scaled - rounded) <= 1e-9 && rounded >= 1.0, Errc::weights_not_multiple,
              "weight " + format_double(a.weight) + " is not a multiple of 1/" +
                  std::to_string(denominator));
      for (long k = 0; k < static_cast<long>(rounded); ++k) points.push_back(a.point);
    }
    require(points.size() == static_cast<std::size_t>(denominator), Errc::weights_not_multiple,
            "weights do not tile 1 into " + std::to_string(denominator) + " unit atoms");
    return points;
  };
  const std::vector<GroundPoint> xs = expand(mu);
  const std::vector<GroundPoint> ys = expand(nu);
  const int n = denominator;
  std::vector<double> cost(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cost[static_cast<std::size_t>(i) * n + j] =
          cost_power(mu.space().distance(xs[i], ys[j]), p);
    }
  }
  double best;
  if (n <= 8) {
    // Full permutation scan: a second, assumption-free route for tiny sizes.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    best = std::numeric_limits<double>::infinity();
    do {
      double total = 0.0;
      for (int j = 0; j < n; ++j) total += cost[static_cast<std::size_t>(perm[j]) * n + j];
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    best = assignment_min_cost(n, cost);
  }
  return cost_root(best / n, p);
}

const ExtReal* DualPotentials::lookup_psi(const GroundPoint& p) const noexcept {
  for (const auto& [point, value] : psi) {
    if (point == p) return &value;
  }
  return nullptr;
}

const ExtReal* DualPotentials::lookup_phi(const GroundPoint& p) const noexcept {
  for (const auto& [point, value] : phi) {
    if (point == p) return &value;
  }
  return nullptr;
}

CertificateCheck check_dual_certificate(const GroundSpace& space, const DualPotentials& pot,
                                        const Coupling& plan, double tol) {
  CertificateCheck out;
  out.primal_cost = plan.cost(2.0);
  std::string why;

  // (a) Feasibility phi(z) - psi(x) <= d(x,z)^2 on every tabulated pair.
  // Pairs with phi = -inf or psi = +inf hold vacuously; psi = -inf or
  // phi = +inf would make the pair infeasible outright.
  for (const auto& [x, psi_x] : pot.psi) {
    for (const auto& [z, phi_z] : pot.phi) {
      if (phi_z.tag == ExtReal::Tag::NegInf || psi_x.tag == ExtReal::Tag::PosInf) continue;
      if (phi_z.tag == ExtReal::Tag::PosInf || psi_x.tag == ExtReal::Tag::NegInf) {
        why = "infinite potential of the wrong sign at (" + x.to_string() + ", " +
              z.to_string() + ")";
        out.worst_feasibility = std::numeric_limits<double>::max();
        continue;
      }
      const double d = space.distance(x, z);
      const double slack = phi_z.value - psi_x.value - d * d;
      out.worst_feasibility = std::max(out.worst_feasibility, slack);
      if (slack > tol && why.empty()) {
        why = "feasibility violated by " + format_double(slack) + " at (" + x.to_string() +
              ", " + z.to_string() + ")";
      }
    }
  }

  // (b) Equality on pairs carrying plan mass.
  bool support_covered = true;
  for (std::size_t i = 0; i < plan.rows(); ++i) {
    for (std::size_t j = 0; j < plan.cols(); ++j) {
      if (plan.at(i, j) <= 0.0) continue;
      const GroundPoint& x = plan.row_measure().atom(i).point;
      const GroundPoint& z = plan.col_measure().atom(j).point;
      const ExtReal* psi_x = pot.lookup_psi(x);
      const ExtReal* phi_z = pot.lookup_phi(z);
      if (psi_x == nullptr || phi_z == nullptr || !psi_x->is_finite() || !phi_z->is_finite()) {
        support_covered = false;
        if (why.empty()) {
          why = "potentials are missing or infinite on the mass pair (" + x.to_string() +
                ", " + z.to_string() + ")";
        }
        continue;
      }
      const double d = space.distance(x, z);
      const double gap = std::abs(phi_z->value - psi_x->value - d * d);
      out.worst_support_gap = std::max(out.worst_support_gap, gap);
      if (gap > tol && why.empty()) {
        why = "complementary slackness off by " + format_double(gap) + " at (" +
              x.to_string() + ", " + z.to_string() + ")";
      }
    }
  }

  // (c) Dual value against the plan cost; needs finite potentials on every
  // atom that carries marginal mass.
  bool dual_finite = true;
  double dual = 0.0;
  for (const auto& b : plan.col_measure().atoms()) {
    const ExtReal* phi_z = pot.lookup_phi(b.point);
    if (phi_z == nullptr || !phi_z->is_finite()) {
      dual_finite = false;
      break;
    }
    dual += b.weight * phi_z->value;
  }
  if (dual_finite) {
    for (const auto& a : plan.row_measure().atoms()) {
      const ExtReal* psi_x = pot.lookup_psi(a.point);
      if (psi_x == nullptr || !psi_x->is_finite()) {
        dual_finite = false;
        break;
      }
      dual -= a.weight * psi_x->value;
    }
  }
  if (dual_finite) {
    out.dual_value = dual;
    if (std::abs(dual - out.primal_cost) > tol && why.empty()) {
      why = "dual value " + format_double(dual) + " differs from plan cost " +
            format_double(out.primal_cost);
    }
  } else if (why.empty()) {
    why = "dual value is not finite on the marginal supports";
  }

  out.pass = why.empty() && support_covered && dual_finite &&
             out.worst_feasibility <= tol && out.worst_support_gap <= tol &&
             std::abs(out.dual_value - out.primal_cost) <= tol;
  out.detail = out.pass ? "certificate verifies the plan (cost " +
                              format_double(out.primal_cost) + ")"
                        : why;
  return out;
}

double kr_lower_bound(const std::vector<std::pair<GroundPoint, double>>& witness,
                      const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require(mu.space() == nu.space(), Errc::space_mismatch,
          "measures live on different spaces");
  const GroundSpace& space = mu.space();
  for (const auto& [point, value] : witness) {
    space.require_admits(point);
    require(std::isfinite(value), Errc::invalid_argument, "witness values must be finite");
  }
  for (std::size_t i = 0; i < witness.size(); ++i) {
    for (std::size_t j = i + 1; j < witness.size(); ++j) {
      const double d = space.distance(witness[i].first, witness[j].first);
      const double gap = std::abs(witness[i].second - witness[j].second);
      require(gap <= d + 1e-12, Errc::not_lipschitz,
              "witness is not 1-Lipschitz: |f(" + witness[i].first.to_string() + ") - f(" +
                  witness[j].first.to_string() + ")| = " + format_double(gap) + " > d = " +
                  format_double(d));
    }
  }
  auto value_at = [&](const GroundPoint& p) {
    for (const auto& [point, value] : witness) {
      if (point == p) return value;
    }
    fail(Errc::invalid_argument, "witness is not tabulated at " + p.to_string());
  };
  double total = 0.0;
  for (const auto& b : nu.atoms()) total += b.weight * value_at(b.point);
  for (const auto& a : mu.atoms()) total -= a.weight * value_at(a.point);
  return total;
}

}  // namespace otrl
