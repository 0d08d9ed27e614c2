#include "otrl/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otrl/rng.hpp"

namespace otrl {

namespace {

constexpr double kPi = 3.14159265358979323846;

Check eq_check(std::string desc, std::string anchor, std::vector<double> computed,
               std::vector<double> expected, double tol) {
  Check c{std::move(desc), std::move(anchor), std::move(computed), std::move(expected), tol,
          false};
  c.pass = c.computed.size() == c.expected.size();
  if (c.pass) {
    for (std::size_t i = 0; i < c.computed.size(); ++i) {
      if (!(std::abs(c.computed[i] - c.expected[i]) <= c.tol)) {
        c.pass = false;
        break;
      }
    }
  }
  return c;
}

// Lower-bound check: passes when value >= threshold (expected holds the threshold).
Check ge_check(std::string desc, std::string anchor, double value, double threshold) {
  Check c{std::move(desc), std::move(anchor), {value}, {threshold}, 0.0, false};
  c.pass = value >= threshold;
  return c;
}

Check flag_check(std::string desc, std::string anchor, bool ok) {
  Check c{std::move(desc), std::move(anchor), {ok ? 1.0 : 0.0}, {1.0}, 0.0, ok};
  return c;
}

SuiteReport make_report(std::string name, std::vector<Check> checks) {
  SuiteReport report{std::move(name), std::move(checks), true};
  for (const Check& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

double w1(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return solve_exact(a, b, 1.0).distance;
}

double w2(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return solve_exact(a, b, 2.0).distance;
}

using Atom = DiscreteMeasure::Atom;

std::vector<double> random_weights(Rng& rng, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& x : w) {
    x = 0.05 + rng.uniform01();
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

DiscreteMeasure random_interval_base(Rng& rng, int max_atoms) {
  const int n = static_cast<int>(rng.uniform_int(1, max_atoms));
  const std::vector<double> w = random_weights(rng, n);
  std::vector<Atom> atoms;
  atoms.reserve(w.size());
  for (int i = 0; i < n; ++i) {
    atoms.push_back({GroundPoint::interval(rng.uniform01()), w[static_cast<std::size_t>(i)]});
  }
  return DiscreteMeasure(GroundSpace::interval(), std::move(atoms));
}

DiscreteMeasure random_plane_base(Rng& rng, int max_atoms, double radius) {
  const int n = static_cast<int>(rng.uniform_int(1, max_atoms));
  const std::vector<double> w = random_weights(rng, n);
  std::vector<Atom> atoms;
  atoms.reserve(w.size());
  for (int i = 0; i < n; ++i) {
    const double r = radius * rng.uniform01();
    const double phi = 2.0 * kPi * rng.uniform01();
    atoms.push_back({GroundPoint::plane(r * std::cos(phi), r * std::sin(phi)),
                     w[static_cast<std::size_t>(i)]});
  }
  return DiscreteMeasure(GroundSpace::plane(), std::move(atoms));
}

// (1-b) delta_q + b * base with b drawn in [b_floor, 1]; b == 1 with
// probability ~0.1 to also cover q-free measures.
DiscreteMeasure random_plus_q_measure(const GroundSpace& space, Rng& rng, double b_floor,
                                      int max_atoms, double radius) {
  double b = b_floor + (1.0 - b_floor) * rng.uniform01();
  if (rng.bernoulli(0.1)) b = 1.0;
  const DiscreteMeasure base = space.interval_based() ? random_interval_base(rng, max_atoms)
                                                      : random_plane_base(rng, max_atoms, radius);
  return recompose(space, b, base);
}

}  // namespace

int SuiteReport::failed_count() const {
  int n = 0;
  for (const Check& c : checks) {
    if (!c.pass) ++n;
  }
  return n;
}

void VerifyConfig::validate() const {
  require(std::isfinite(far_distance) && far_distance > 1.0, Errc::invalid_argument,
          "the far distance D must be a finite real > 1");
  require(samples > 0, Errc::invalid_argument, "samples must be positive");
}

SuiteReport verify_delta_q_characterization(double far_distance, std::uint64_t seed) {
  const GroundSpace space = GroundSpace::interval_plus_q(far_distance);
  const double D = far_distance;
  Rng rng(seed ^ fnv1a64("delta_q_characterization"));
  std::vector<Check> checks;

  const DiscreteMeasure dq = DiscreteMeasure::dirac(space, GroundPoint::q());
  const DiscreteMeasure d0 = DiscreteMeasure::dirac(space, GroundPoint::interval(0.0));
  const DiscreteMeasure d1 = DiscreteMeasure::dirac(space, GroundPoint::interval(1.0));
  checks.push_back(eq_check(
      "the pair (delta_0, delta_1) realizes the distance triple (D, D, 1) at apex delta_q",
      "witness-triple", {w1(dq, d0), w1(dq, d1), w1(d0, d1)}, {D, D, 1.0}, 1e-9));

  // Candidate family: Diracs, grid mixtures of delta_q with endpoint Diracs
  // (grid step 1/32), and 20 seeded random mixtures.
  std::vector<DiscreteMeasure> family{dq, d0, d1,
                                      DiscreteMeasure::dirac(space, GroundPoint::interval(0.5))};
  for (int k : {8, 16, 24}) {
    const double c = static_cast<double>(k) / 32.0;
    for (double pos : {0.0, 1.0}) {
      family.push_back(DiscreteMeasure(
          space, {{GroundPoint::q(), 1.0 - c}, {GroundPoint::interval(pos), c}}));
    }
  }
  for (int j = 0; j < 20; ++j) {
    const double c = 1.0 / 32.0 + (31.0 / 32.0) * rng.uniform01();
    DiscreteMeasure base = random_interval_base(rng, 2);
    family.push_back(recompose(space, c, base));
  }

  const std::size_t F = family.size();
  std::vector<double> pair_dist(F * F, 0.0);
  for (std::size_t i = 0; i < F; ++i) {
    for (std::size_t j = i + 1; j < F; ++j) {
      pair_dist[i * F + j] = w1(family[i], family[j]);
    }
  }

  double min_violation = std::numeric_limits<double>::infinity();
  double min_apex_base_mass = std::numeric_limits<double>::infinity();
  for (int apex = 0; apex < 50; ++apex) {
    const DiscreteMeasure mu = random_plus_q_measure(space, rng, 1.0 / 32.0, 4, 0.0);
    min_apex_base_mass = std::min(min_apex_base_mass, slice_mass(mu));
    std::vector<double> dist_to(F);
    for (std::size_t k = 0; k < F; ++k) dist_to[k] = w1(mu, family[k]);
    for (std::size_t i = 0; i < F; ++i) {
      for (std::size_t j = i + 1; j < F; ++j) {
        const double violation =
            std::max({std::abs(dist_to[i] - D), std::abs(dist_to[j] - D),
                      std::abs(pair_dist[i * F + j] - 1.0)});
        min_violation = std::min(min_violation, violation);
      }
    }
  }
  checks.push_back(ge_check(
      "all 50 sampled apexes are distinct from delta_q (base mass at least 1/32)",
      "apex-floor", min_apex_base_mass, 1.0 / 32.0 - 1e-15));
  checks.push_back(ge_check(
      "no candidate pair realizes (D, D, 1) at any sampled non-delta_q apex "
      "(finite-family evidence): smallest deviation from the triple across all pairs",
      "apex-rejection", min_violation, 1e-9));
  return make_report("delta_q_characterization", std::move(checks));
}

SuiteReport verify_mass_identity(double far_distance, int samples, std::uint64_t seed) {
  const GroundSpace space = GroundSpace::interval_plus_q(far_distance);
  const double D = far_distance;
  Rng rng(seed ^ fnv1a64("mass_identity"));
  std::vector<Check> checks;

  const DiscreteMeasure dq = DiscreteMeasure::dirac(space, GroundPoint::q());
  checks.push_back(eq_check("pure q mass: base mass 0 and distance 0 to delta_q",
                            "example-delta-q", {slice_mass(dq), w1(dq, dq)}, {0.0, 0.0}, 0.0));

  const DiscreteMeasure d03 = DiscreteMeasure::dirac(space, GroundPoint::interval(0.3));
  checks.push_back(eq_check("full base mass: distance to delta_q equals D",
                            "example-full-base", {slice_mass(d03), w1(dq, d03)}, {1.0, D},
                            1e-9));

  const DiscreteMeasure mixed(
      space, {{GroundPoint::q(), 0.25}, {GroundPoint::interval(0.5), 0.75}});
  checks.push_back(eq_check("mixed example: base mass 0.75, distance 0.75*D",
                            "example-mixed", {slice_mass(mixed), w1(dq, mixed)},
                            {0.75, 0.75 * D}, 1e-9));

  double max_dev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const DiscreteMeasure mu = random_plus_q_measure(space, rng, 0.0, 6, 0.0);
    max_dev = std::max(max_dev, std::abs(slice_mass(mu) - w1(dq, mu) / D));
  }
  checks.push_back(eq_check(
      "random measures: largest deviation of base mass from (distance to delta_q)/D",
      "random-family", {max_dev}, {0.0}, 1e-9));
  return make_report("mass_identity", std::move(checks));
}

SuiteReport verify_slice_scaling(double far_distance, int samples, std::uint64_t seed) {
  const GroundSpace space = GroundSpace::interval_plus_q(far_distance);
  Rng rng(seed ^ fnv1a64("slice_scaling"));
  std::vector<Check> checks;

  const DiscreteMeasure base0 = DiscreteMeasure::dirac(GroundSpace::interval(), GroundPoint::interval(0.0));
  const DiscreteMeasure base1 = DiscreteMeasure::dirac(GroundSpace::interval(), GroundPoint::interval(1.0));
  checks.push_back(eq_check("t = 1 reduces to the plain interval distance",
                            "example-full-slice",
                            {w1(recompose(space, 1.0, base0), recompose(space, 1.0, base1))},
                            {1.0}, 1e-9));
  checks.push_back(eq_check("t = 1/2 halves the endpoint distance", "example-half-slice",
                            {w1(recompose(space, 0.5, base0), recompose(space, 0.5, base1))},
                            {0.5}, 1e-9));
  const DiscreteMeasure same = random_interval_base(rng, 4);
  checks.push_back(eq_check("equal base parts are at distance 0", "example-equal",
                            {w1(recompose(space, 0.7, same), recompose(space, 0.7, same))},
                            {0.0}, 1e-12));

  double max_dev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 0.02 + 0.98 * rng.uniform01();
    const DiscreteMeasure mu_base = random_interval_base(rng, 5);
    const DiscreteMeasure nu_base = random_interval_base(rng, 5);
    const double lhs = w1(recompose(space, t, mu_base), recompose(space, t, nu_base));
    const double rhs = t * w1_interval_closed_form(mu_base, nu_base);
    max_dev = std::max(max_dev, std::abs(lhs - rhs));
  }
  checks.push_back(eq_check(
      "random slices: largest deviation from t times the base distance "
      "(base side via the 1D closed form)",
      "random-family", {max_dev}, {0.0}, 1e-9));
  return make_report("slice_scaling", std::move(checks));
}

SuiteReport verify_thm1_counterexample(double far_distance, double t) {
  require(std::isfinite(far_distance) && far_distance > 1.0, Errc::invalid_argument,
          "the far distance D must be a finite real > 1");
  require(std::isfinite(t) && t > 0.0 && t <= 1.0, Errc::invalid_argument,
          "t must lie in (0, 1]");
  const GroundSpace space = GroundSpace::interval_plus_q(far_distance);
  const double D = far_distance;
  std::vector<Check> checks;

  auto q_mix = [&](double mass, double position) {
    std::vector<Atom> atoms;
    if (mass < 1.0) atoms.push_back({GroundPoint::q(), 1.0 - mass});
    if (mass > 0.0) atoms.push_back({GroundPoint::interval(position), mass});
    return DiscreteMeasure(space, std::move(atoms));
  };

  // The distorting pair: mu spreads its base mass over both endpoints, nu
  // concentrates 2t/3 at 0.
  std::vector<Atom> mu_atoms{{GroundPoint::interval(0.0), t / 2.0},
                             {GroundPoint::interval(1.0), t / 2.0}};
  if (t < 1.0) mu_atoms.insert(mu_atoms.begin(), {GroundPoint::q(), 1.0 - t});
  const DiscreteMeasure mu(space, std::move(mu_atoms));
  const DiscreteMeasure nu = q_mix(2.0 * t / 3.0, 0.0);
  const double d_before = w1(mu, nu);
  checks.push_back(eq_check("distance between the original pair equals t*(D/3 + 1/6)",
                            "headline-pair", {d_before}, {t * (D / 3.0 + 1.0 / 6.0)}, 1e-9));

  // Apply the slice-wise CDF-transpose action to both measures; the image of
  // nu under the identity choice is nu itself, under the transpose it moves
  // the base Dirac to 1.
  const MeasureMap flip_action =
      slice_action(space, [](double) { return SliceIsometry::Flip; });
  const DiscreteMeasure mu_image = flip_action(mu);
  const DiscreteMeasure nu_image_1 = flip_action(nu);
  const double d_after_0 = w1(mu_image, nu);
  const double d_after_1 = w1(mu_image, nu_image_1);
  const double expected_after = t * (D / 3.0 + 1.0 / 3.0);
  checks.push_back(eq_check(
      "both image choices (base Dirac at 0 or at 1) sit at distance t*(D/3 + 1/3)",
      "headline-images", {d_after_0, d_after_1}, {expected_after, expected_after}, 1e-9));
  checks.push_back(eq_check("the distortion gap equals t/6", "headline-gap",
                            {d_after_0 - d_before, d_after_1 - d_before},
                            {t / 6.0, t / 6.0}, 1e-9));
  checks.push_back(ge_check("the action strictly increases the distance", "headline-strict",
                            std::min(d_after_0, d_after_1) - d_before, 1e-9));

  // Cross-slice grids over t, t' in {0.2, 0.4, 0.6, 0.8, 1.0}: mu_t puts its
  // base mass at 0, nu_t' at 1.
  const std::vector<double> grid{0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<double> mm_computed, mm_expected;
  std::vector<double> mn_computed, mn_claimed, mn_optimum, mn_witness;
  for (double ti : grid) {
    for (double tj : grid) {
      const DiscreteMeasure mu_i = q_mix(ti, 0.0);
      const DiscreteMeasure mu_j = q_mix(tj, 0.0);
      const DiscreteMeasure nu_j = q_mix(tj, 1.0);
      mm_computed.push_back(w1(mu_i, mu_j));
      mm_expected.push_back(D * std::abs(ti - tj));
      const double d = w1(mu_i, nu_j);
      mn_computed.push_back(d);
      mn_claimed.push_back((D + 1.0) * std::abs(ti - tj));
      mn_optimum.push_back(D * std::abs(ti - tj) + std::min(ti, tj));
      // 1-Lipschitz witness certifying the optimum: f(q) = 0 and f(x) = x - D
      // when ti >= tj, f(x) = D - 1 + x otherwise.
      std::vector<std::pair<GroundPoint, double>> witness{{GroundPoint::q(), 0.0}};
      for (double x : {0.0, 1.0}) {
        witness.push_back({GroundPoint::interval(x), ti >= tj ? x - D : D - 1.0 + x});
      }
      mn_witness.push_back(kr_lower_bound(witness, mu_i, nu_j));
    }
  }
  checks.push_back(eq_check(
      "same-endpoint grid: d(mu_t, mu_t') = D|t - t'| on the 5x5 grid", "grid-mu-mu",
      std::move(mm_computed), std::move(mm_expected), 1e-9));
  checks.push_back(eq_check(
      "cross-endpoint grid: asserted identity d(mu_t, nu_t') = (D+1)|t - t'| on the 5x5 "
      "grid; the transport optimum is D|t - t'| + min(t, t') (certified below), so the "
      "asserted value is off wherever min(t, t') differs from |t - t'|",
      "grid-mu-nu-asserted", std::vector<double>(mn_computed), std::move(mn_claimed), 1e-9));
  checks.push_back(eq_check(
      "cross-endpoint grid: solver optimum equals D|t - t'| + min(t, t')",
      "grid-mu-nu-optimum", std::vector<double>(mn_computed), std::move(mn_optimum), 1e-9));
  checks.push_back(eq_check(
      "cross-endpoint grid: a 1-Lipschitz witness meets the solver value, certifying "
      "optimality",
      "grid-mu-nu-certificate", std::move(mn_witness), std::move(mn_computed), 1e-9));
  return make_report("thm1_counterexample", std::move(checks));
}

SuiteReport verify_pi0_optimality(int samples, std::uint64_t seed) {
  const GroundSpace space = GroundSpace::plane_plus_q();
  Rng rng(seed ^ fnv1a64("pi0_optimality"));
  std::vector<Check> checks;

  auto instance_values = [&](const DiscreteMeasure& mu) {
    const SliceDecomposition dec = slice_decompose(mu);
    double second_moment = 0.0;
    if (dec.rest.has_value()) {
      for (const auto& a : dec.rest->atoms()) {
        second_moment += a.weight * squared_norm(a.point.position());
      }
    }
    const Coupling pi0 = collapse_plan(mu);
    const DiscreteMeasure nu = pi0.col_measure();
    const CertificateCheck cert =
        check_dual_certificate(space, collapse_plan_potentials(mu, nu), pi0);
    const double solver_cost = solve_exact(mu, nu, 2.0).cost;
    struct Values {
      double plan_cost, moment_cost, dual, solver, feas;
      bool cert_pass;
    };
    return Values{pi0.cost(2.0), dec.t * second_moment, cert.dual_value, solver_cost,
                  cert.worst_feasibility, cert.pass};
  };

  {
    const DiscreteMeasure mu(
        space, {{GroundPoint::q(), 0.5}, {GroundPoint::plane(3.0, 4.0), 0.5}});
    const auto v = instance_values(mu);
    checks.push_back(eq_check(
        "half the mass at (3,4): plan cost, moment form, dual value, and solver all 12.5",
        "example-three-four", {v.plan_cost, v.moment_cost, v.dual, v.solver},
        {12.5, 12.5, 12.5, 12.5}, 1e-9));
  }
  {
    const DiscreteMeasure mu = recompose(
        space, 0.5, DiscreteMeasure::dirac(GroundSpace::plane(), GroundPoint::plane(0.0, 0.0)));
    const auto v = instance_values(mu);
    checks.push_back(eq_check("base mass already at the origin: all costs vanish",
                              "example-degenerate", {v.plan_cost, v.dual, v.solver},
                              {0.0, 0.0, 0.0}, 1e-12));
  }
  {
    const DiscreteMeasure base(GroundSpace::plane(), {{GroundPoint::plane(1.0, 0.0), 0.5},
                                                      {GroundPoint::plane(0.0, 1.0), 0.5}});
    const auto v = instance_values(recompose(space, 1.0, base));
    checks.push_back(eq_check("full base mass on two unit atoms: cost 1",
                              "example-unit-atoms", {v.plan_cost, v.dual, v.solver},
                              {1.0, 1.0, 1.0}, 1e-9));
  }

  double max_dev_moment = 0.0, max_dev_dual = 0.0, max_dev_solver = 0.0, worst_feas = 0.0;
  bool all_certified = true;
  for (int i = 0; i < samples; ++i) {
    const DiscreteMeasure mu = random_plus_q_measure(space, rng, 0.02, 5, 3.0);
    const auto v = instance_values(mu);
    max_dev_moment = std::max(max_dev_moment, std::abs(v.plan_cost - v.moment_cost));
    max_dev_dual = std::max(max_dev_dual, std::abs(v.plan_cost - v.dual));
    max_dev_solver = std::max(max_dev_solver, std::abs(v.plan_cost - v.solver));
    worst_feas = std::max(worst_feas, v.feas);
    all_certified = all_certified && v.cert_pass;
  }
  checks.push_back(eq_check(
      "random instances: plan cost matches t times the base second moment",
      "random-moment", {max_dev_moment}, {0.0}, 1e-9));
  checks.push_back(eq_check(
      "random instances: dual value of the squared-distance potentials matches the plan cost",
      "random-dual", {max_dev_dual}, {0.0}, 1e-9));
  checks.push_back(eq_check(
      "random instances: exact solver confirms the plan cost is optimal", "random-solver",
      {max_dev_solver}, {0.0}, 1e-9));
  checks.push_back(flag_check("every certificate passes feasibility and support equality",
                              "random-certificates", all_certified));
  checks.push_back(eq_check("worst feasibility slack across instances is numerical noise",
                            "random-feasibility", {worst_feas}, {0.0}, 1e-10));
  return make_report("pi0_optimality", std::move(checks));
}

SuiteReport verify_mass_holder_bound(int samples, std::uint64_t seed) {
  const GroundSpace space = GroundSpace::plane_plus_q();
  Rng rng(seed ^ fnv1a64("mass_holder_bound"));
  std::vector<Check> checks;

  const DiscreteMeasure dq = DiscreteMeasure::dirac(space, GroundPoint::q());
  const DiscreteMeasure d_origin =
      DiscreteMeasure::dirac(space, GroundPoint::plane(0.0, 0.0));
  const double tight = w2(dq, d_origin);
  checks.push_back(eq_check(
      "tight case delta_q vs delta_origin: squared distance and mass difference both 1",
      "example-tight", {tight * tight, std::abs(slice_mass(dq) - slice_mass(d_origin))},
      {1.0, 1.0}, 1e-12));
  checks.push_back(eq_check("equal measures: both sides 0", "example-equal",
                            {w2(dq, dq), std::abs(slice_mass(dq) - slice_mass(dq))},
                            {0.0, 0.0}, 0.0));
  {
    const DiscreteMeasure nu(
        space, {{GroundPoint::q(), 0.5}, {GroundPoint::plane(3.0, 4.0), 0.5}});
    const double d = w2(dq, nu);
    checks.push_back(eq_check(
        "half mass at (3,4): squared distance 13 dominates mass difference 1/2",
        "example-far-atom", {d * d, std::abs(slice_mass(dq) - slice_mass(nu))},
        {13.0, 0.5}, 1e-9));
  }

  double min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const DiscreteMeasure mu = random_plus_q_measure(space, rng, 0.0, 4, 2.0);
    const DiscreteMeasure nu = random_plus_q_measure(space, rng, 0.0, 4, 2.0);
    const double d = w2(mu, nu);
    min_slack = std::min(min_slack, d * d - std::abs(slice_mass(mu) - slice_mass(nu)));
  }
  checks.push_back(ge_check(
      "random pairs: squared distance dominates the base-mass difference (slack floor)",
      "random-family", min_slack, -1e-10));
  return make_report("mass_holder_bound", std::move(checks));
}

SuiteReport verify_nu_t_minimizer(int candidates, std::uint64_t seed) {
  require(candidates >= 1, Errc::invalid_argument, "need at least one candidate per grid t");
  const GroundSpace space = GroundSpace::plane_plus_q();
  Rng rng(seed ^ fnv1a64("nu_t_minimizer"));
  std::vector<Check> checks;

  const DiscreteMeasure dq = DiscreteMeasure::dirac(space, GroundPoint::q());
  std::vector<double> grid_computed, grid_expected;
  double min_margin = std::numeric_limits<double>::infinity();
  double min_increase = std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (int k = 0; k <= 25; ++k) {
    const double t = static_cast<double>(k) / 25.0;
    const double d = w2(origin_mixture(space, t), dq);
    grid_computed.push_back(d);
    grid_expected.push_back(std::sqrt(t));
    if (k > 0) {
      min_increase = std::min(min_increase, d - prev);
      // `candidates` perturbed members of the same slice, mixing a grid-step
      // share of the base mass into an off-origin atom.
      for (int i = 0; i < candidates; ++i) {
        const int numer = 8 + (24 * i) / std::max(1, candidates - 1);
        const double a = static_cast<double>(numer) / 32.0;
        const double r = 0.3 + 0.7 * rng.uniform01();
        const double phi = 2.0 * kPi * rng.uniform01();
        const GroundPoint x = GroundPoint::plane(r * std::cos(phi), r * std::sin(phi));
        std::vector<Atom> atoms;
        if (t < 1.0) atoms.push_back({GroundPoint::q(), 1.0 - t});
        if (a < 1.0) atoms.push_back({GroundPoint::plane(0.0, 0.0), t * (1.0 - a)});
        atoms.push_back({x, t * a});
        const DiscreteMeasure candidate(space, std::move(atoms));
        min_margin = std::min(min_margin, w2(candidate, dq) - std::sqrt(t));
      }
    }
    prev = d;
  }
  checks.push_back(eq_check("distance from the origin mixture to delta_q equals sqrt(t) on "
                            "the grid t = k/25",
                            "sqrt-law", std::move(grid_computed), std::move(grid_expected),
                            1e-10));
  checks.push_back(ge_check("sqrt(t) strictly increases along the grid", "monotone",
                            min_increase, 1e-9));
  checks.push_back(ge_check(
      "every perturbed same-slice candidate is strictly farther from delta_q "
      "(finite-family evidence): smallest margin",
      "candidate-margin", min_margin, 1e-9));
  {
    const DiscreteMeasure candidate =
        DiscreteMeasure::dirac(space, GroundPoint::plane(0.1, 0.0));
    checks.push_back(eq_check("full-slice candidate at (0.1, 0): distance sqrt(1.01) > 1",
                              "example-full-slice", {w2(candidate, dq)},
                              {std::sqrt(1.01)}, 1e-12));
  }
  return make_report("nu_t_minimizer", std::move(checks));
}

SuiteReport verify_geodesic_slice_characterization(int samples, std::uint64_t seed) {
  const GroundSpace space = GroundSpace::plane_plus_q();
  Rng rng(seed ^ fnv1a64("geodesic_slices"));
  std::vector<Check> checks;

  auto speed_deviation = [&](const DiscreteMeasure& mu) {
    const Coupling pi0 = collapse_plan(mu);
    const double total = w2(mu, pi0.col_measure());
    std::vector<DiscreteMeasure> points;
    points.reserve(11);
    for (int i = 0; i <= 10; ++i) {
      points.push_back(geodesic_point(pi0, static_cast<double>(i) / 10.0));
    }
    double dev = 0.0;
    for (int i = 0; i <= 10; ++i) {
      for (int j = i + 1; j <= 10; ++j) {
        const double expected = total * (static_cast<double>(j - i) / 10.0);
        dev = std::max(dev, std::abs(w2(points[static_cast<std::size_t>(i)],
                                        points[static_cast<std::size_t>(j)]) -
                                     expected));
      }
    }
    return dev;
  };

  {
    const DiscreteMeasure mu(
        space, {{GroundPoint::q(), 0.5}, {GroundPoint::plane(3.0, 4.0), 0.5}});
    checks.push_back(eq_check(
        "interpolating the collapse plan of (delta_q + delta_(3,4))/2 has constant speed "
        "on the 11-point grid",
        "example-constant-speed", {speed_deviation(mu)}, {0.0}, 1e-8));
  }
  checks.push_back(eq_check("a measure already at its target interpolates trivially",
                            "example-stationary",
                            {speed_deviation(origin_mixture(space, 0.3))}, {0.0}, 1e-12));

  double max_dev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 0.05 + 0.95 * rng.uniform01();
    max_dev = std::max(
        max_dev, speed_deviation(recompose(space, t, random_plane_base(rng, 4, 2.0))));
  }
  checks.push_back(eq_check(
      "random slice measures: largest constant-speed deviation across all grid pairs",
      "random-constant-speed", {max_dev}, {0.0}, 1e-8));

  // Midpoint obstruction between distant slices: when the squared distance is
  // below twice the base-mass gap, the two mass-transport bounds leave no room
  // for a measure equidistant from both ends, so the candidate scan must come
  // up empty.
  const int obstruction_instances = std::max(1, samples / 10);
  double min_regime_margin = std::numeric_limits<double>::infinity();
  int near_midpoints = 0;
  for (int i = 0; i < obstruction_instances; ++i) {
    const double t_low = 0.04 + 0.46 * rng.uniform01();
    const double t_high = std::min(1.0, t_low + 0.25 + 0.25 * rng.uniform01());
    const DiscreteMeasure base = random_plane_base(rng, 3, 0.4);
    const DiscreteMeasure mu = recompose(space, t_high, base);
    const DiscreteMeasure nu = origin_mixture(space, t_low);
    const double d = w2(mu, nu);
    const double gap = std::abs(slice_mass(mu) - slice_mass(nu));
    min_regime_margin = std::min(min_regime_margin, 2.0 * gap - d * d);
    const double half = d / 2.0;

    std::vector<DiscreteMeasure> family;
    const DiscreteMeasure bases[] = {
        DiscreteMeasure::dirac(GroundSpace::plane(), GroundPoint::plane(0.0, 0.0)),
        DiscreteMeasure::dirac(GroundSpace::plane(), GroundPoint::plane(barycenter(base))),
        base};
    for (int numer = 0; numer <= 32; ++numer) {
      for (const DiscreteMeasure& b : bases) {
        family.push_back(recompose(space, static_cast<double>(numer) / 32.0, b));
      }
    }
    for (int j = 0; j < 20; ++j) {
      family.push_back(
          recompose(space, rng.uniform01(), random_plane_base(rng, 2, 1.0)));
    }
    for (const DiscreteMeasure& sigma : family) {
      if (std::abs(w2(mu, sigma) - half) <= 1e-6 &&
          std::abs(w2(sigma, nu) - half) <= 1e-6) {
        ++near_midpoints;
      }
    }
  }
  checks.push_back(ge_check(
      "obstruction regime holds: twice the base-mass gap exceeds the squared distance",
      "obstruction-regime", min_regime_margin, 1e-9));
  checks.push_back(eq_check(
      "no candidate in the generated family is equidistant (within 1e-6) from both ends "
      "(finite-family evidence)",
      "obstruction-scan", {static_cast<double>(near_midpoints)}, {0.0}, 0.0));
  return make_report("geodesic_slices", std::move(checks));
}

SuiteReport verify_thm2_counterexample() {
  const GroundSpace pq = GroundSpace::plane_plus_q();
  const GroundSpace plane = GroundSpace::plane();
  std::vector<Check> checks;

  const DiscreteMeasure mu(
      pq, {{GroundPoint::q(), 1.0 / 3.0}, {GroundPoint::plane(1.0, 0.0), 2.0 / 3.0}});
  const DiscreteMeasure mu_prime(
      plane, {{GroundPoint::plane(0.0, 0.0), 1.0 / 3.0},
              {GroundPoint::plane(1.0, 0.0), 2.0 / 3.0}});

  auto flatten = [](const DiscreteMeasure& m) {
    std::vector<double> out;
    for (const auto& a : m.atoms()) {
      const Vec2 v = a.point.position();
      out.push_back(v.x);
      out.push_back(v.y);
      out.push_back(a.weight);
    }
    return out;
  };

  checks.push_back(eq_check(
      "projecting the q mass to the origin gives exactly (delta_0 + 2 delta_(1,0))/3",
      "projection-image", flatten(project_q_to_origin(mu)), flatten(mu_prime), 0.0));

  checks.push_back(eq_check(
      "the zero-angle motion leaves the projected measure unchanged", "identity-angle",
      flatten(kloeckner_isometry(BaseIsometry::plane_motion(0.0), mu_prime)),
      flatten(mu_prime), 0.0));

  const GroundPoint origin = GroundPoint::plane(0.0, 0.0);
  double max_origin_mass = 0.0;
  double min_deficit = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 36; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / 37.0;
    const DiscreteMeasure image =
        kloeckner_isometry(BaseIsometry::plane_motion(theta), mu_prime);
    const double origin_mass = image.weight_at(origin);
    max_origin_mass = std::max(max_origin_mass, origin_mass);
    min_deficit = std::min(min_deficit, 1.0 / 3.0 - origin_mass);
  }
  checks.push_back(eq_check(
      "at 36 angles in (0, 2pi) the rotated image carries no mass at the origin",
      "rotated-origin-mass", {max_origin_mass}, {0.0}, 0.0));
  checks.push_back(ge_check(
      "slice preservation would demand origin mass at least 1/3; the deficit is uniform",
      "origin-mass-deficit", min_deficit, 1.0 / 3.0 - 1e-12));

  checks.push_back(eq_check(
      "half-turn image sits at (1/3, 0) and (4/3, 0) with swapped weights", "half-turn",
      flatten(kloeckner_isometry(BaseIsometry::plane_motion(kPi), mu_prime)),
      {1.0 / 3.0, 0.0, 2.0 / 3.0, 4.0 / 3.0, 0.0, 1.0 / 3.0}, 1e-12));
  return make_report("thm2_counterexample", std::move(checks));
}

SuiteReport verify_projection_commutes(int samples, std::uint64_t seed) {
  const GroundSpace space = GroundSpace::plane_plus_q();
  Rng rng(seed ^ fnv1a64("projection_commutes"));
  std::vector<Check> checks;

  auto routes_agree = [&](const BaseIsometry& iso, const DiscreteMeasure& mu) {
    return project_q_to_origin(pushforward(iso, mu)) ==
           pushforward(iso, project_q_to_origin(mu));
  };

  const DiscreteMeasure mu_example(
      space, {{GroundPoint::q(), 1.0 / 3.0}, {GroundPoint::plane(1.0, 0.0), 2.0 / 3.0}});
  {
    const BaseIsometry quarter = BaseIsometry::plane_motion(kPi / 2.0);
    checks.push_back(flag_check(
        "quarter turn: projecting then rotating equals rotating then projecting, exactly",
        "example-quarter-turn", routes_agree(quarter, mu_example)));
    const DiscreteMeasure image = project_q_to_origin(pushforward(quarter, mu_example));
    std::vector<double> flat;
    for (const auto& a : image.atoms()) {
      flat.push_back(a.point.position().x);
      flat.push_back(a.point.position().y);
      flat.push_back(a.weight);
    }
    checks.push_back(eq_check("quarter turn image is (delta_0 + 2 delta_(0,1))/3",
                              "example-quarter-turn-image", flat,
                              {0.0, 0.0, 1.0 / 3.0, 0.0, 1.0, 2.0 / 3.0}, 1e-12));
  }
  checks.push_back(flag_check("identity: both routes agree trivially", "example-identity",
                              routes_agree(BaseIsometry::identity(), mu_example)));
  {
    const DiscreteMeasure mu(
        space, {{GroundPoint::q(), 0.5}, {GroundPoint::plane(1.0, 1.0), 0.5}});
    const BaseIsometry reflect = BaseIsometry::plane_motion(0.0, true);
    checks.push_back(flag_check("x-axis reflection: both routes agree exactly",
                                "example-reflection", routes_agree(reflect, mu)));
  }

  bool all_agree = true;
  double max_slice_dev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const BaseIsometry iso =
        BaseIsometry::plane_motion(2.0 * kPi * rng.uniform01(), rng.bernoulli(0.5));
    const DiscreteMeasure mu = random_plus_q_measure(space, rng, 0.0, 4, 2.0);
    all_agree = all_agree && routes_agree(iso, mu);
    max_slice_dev = std::max(
        max_slice_dev, std::abs(slice_mass(pushforward(iso, mu)) - slice_mass(mu)));
  }
  checks.push_back(flag_check(
      "random origin-fixing motions and measures: the two routes agree exactly",
      "random-commutation", all_agree));
  checks.push_back(eq_check(
      "base isometries preserve slices: base mass never changes under the lift",
      "random-slice-preservation", {max_slice_dev}, {0.0}, 0.0));
  return make_report("projection_commutes", std::move(checks));
}

std::vector<std::string> suite_group_members(const std::string& group) {
  static const std::vector<std::string> kAll{
      "delta_q_characterization", "mass_identity",     "slice_scaling",
      "thm1_counterexample",      "pi0_optimality",    "mass_holder_bound",
      "nu_t_minimizer",           "geodesic_slices",   "thm2_counterexample",
      "projection_commutes"};
  if (group == "all") return kAll;
  if (group == "thm1") {
    return {"delta_q_characterization", "mass_identity", "slice_scaling",
            "thm1_counterexample"};
  }
  if (group == "thm2") return {"thm2_counterexample", "projection_commutes"};
  if (group == "duality") return {"pi0_optimality"};
  if (group == "geodesics") return {"geodesic_slices"};
  if (group == "slices") return {"nu_t_minimizer", "mass_holder_bound"};
  fail(Errc::invalid_argument, "unknown suite group '" + group +
                                   "' (expected all, thm1, thm2, duality, geodesics, or "
                                   "slices)");
}

AggregateReport run_suites(const std::string& group, const VerifyConfig& config) {
  config.validate();
  AggregateReport out;
  out.pass = true;
  for (const std::string& name : suite_group_members(group)) {
    SuiteReport report = [&] {
      if (name == "delta_q_characterization") {
        return verify_delta_q_characterization(config.far_distance, config.seed);
      }
      if (name == "mass_identity") {
        return verify_mass_identity(config.far_distance, config.samples, config.seed);
      }
      if (name == "slice_scaling") {
        return verify_slice_scaling(config.far_distance, config.samples, config.seed);
      }
      if (name == "thm1_counterexample") {
        return verify_thm1_counterexample(config.far_distance);
      }
      if (name == "pi0_optimality") return verify_pi0_optimality(config.samples, config.seed);
      if (name == "mass_holder_bound") {
        return verify_mass_holder_bound(config.samples, config.seed);
      }
      if (name == "nu_t_minimizer") {
        return verify_nu_t_minimizer(std::max(1, config.samples / 10), config.seed);
      }
      if (name == "geodesic_slices") {
        return verify_geodesic_slice_characterization(config.samples, config.seed);
      }
      if (name == "thm2_counterexample") return verify_thm2_counterexample();
      if (name == "projection_commutes") {
        return verify_projection_commutes(config.samples, config.seed);
      }
      fail(Errc::internal, "unmapped suite name: " + name);
    }();
    out.pass = out.pass && report.pass;
    out.suites.push_back(std::move(report));
  }
  return out;
}

DiscreteMeasure origin_mixture(const GroundSpace& space, double t) {
  require(space.has_q(), Errc::wrong_space, "origin mixtures live on a plus-q space");
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, Errc::invalid_argument,
          "the base mass t must lie in [0, 1]");
  if (t == 0.0) return DiscreteMeasure::dirac(space, GroundPoint::q());
  if (t == 1.0) return DiscreteMeasure::dirac(space, space.base_origin());
  return DiscreteMeasure(space,
                         {{GroundPoint::q(), 1.0 - t}, {space.base_origin(), t}});
}

Coupling collapse_plan(const DiscreteMeasure& mu) {
  require(mu.space().has_q(), Errc::wrong_space, "the collapse plan needs a plus-q space");
  const DiscreteMeasure nu = origin_mixture(mu.space(), slice_mass(mu));
  // nu is delta_q, delta_origin, or {q, origin} with q first in atom order.
  std::size_t q_col = nu.size(), origin_col = nu.size();
  for (std::size_t j = 0; j < nu.size(); ++j) {
    (nu.atom(j).point.is_q() ? q_col : origin_col) = j;
  }
  std::vector<double> weights(mu.size() * nu.size(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const std::size_t j = mu.atom(i).point.is_q() ? q_col : origin_col;
    require(j < nu.size(), Errc::internal, "collapse target column missing");
    weights[i * nu.size() + j] = mu.atom(i).weight;
  }
  return Coupling(mu, nu, std::move(weights));
}

DualPotentials collapse_plan_potentials(const DiscreteMeasure& mu,
                                        const DiscreteMeasure& nu) {
  const GroundSpace& space = mu.space();
  require(space.plane_based() && space.has_q(), Errc::wrong_space,
          "the collapse potentials are defined on the plane-plus-q space");
  require(nu.space() == space, Errc::space_mismatch,
          "potentials need both measures on the same space");
  DualPotentials pot;
  bool saw_q = false;
  for (const auto& a : mu.atoms()) {
    if (a.point.is_q()) {
      saw_q = true;
      pot.psi.push_back({a.point, ExtReal::finite(0.0)});
    } else {
      pot.psi.push_back({a.point, ExtReal::finite(-squared_norm(a.point.position()))});
    }
  }
  if (!saw_q) pot.psi.push_back({GroundPoint::q(), ExtReal::finite(0.0)});
  const GroundPoint origin = space.base_origin();
  bool saw_phi_q = false, saw_phi_origin = false;
  for (const auto& b : nu.atoms()) {
    if (b.point.is_q()) {
      saw_phi_q = true;
      pot.phi.push_back({b.point, ExtReal::finite(0.0)});
    } else if (b.point == origin) {
      saw_phi_origin = true;
      pot.phi.push_back({b.point, ExtReal::finite(0.0)});
    } else {
      pot.phi.push_back({b.point, ExtReal::neg_inf()});
    }
  }
  if (!saw_phi_q) pot.phi.push_back({GroundPoint::q(), ExtReal::finite(0.0)});
  if (!saw_phi_origin) pot.phi.push_back({origin, ExtReal::finite(0.0)});
  return pot;
}

}  // namespace otrl
