#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otrl/maps.hpp"

namespace otrl {

// One verified identity, inequality, or exact-equality flag: computed values
// against expected values with an absolute tolerance. The anchor is a stable
// identifier for the claim being checked. Universal statements are verified
// on finite generated families only, and their descriptions say so.
struct Check {
  std::string desc;
  std::string anchor;
  std::vector<double> computed;
  std::vector<double> expected;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool pass = false;  // conjunction over checks

  int failed_count() const;
};

struct VerifyConfig {
  double far_distance = 10.0;  // D for the interval-plus-q space
  std::uint64_t seed = 42;
  int samples = 200;

  void validate() const;  // requires far_distance > 1 and samples > 0
};

// delta_q is the unique apex of the distance triple (D, D, 1): the witness
// pair (delta_0, delta_1) realizes it at delta_q, and no candidate pair does
// at >= 50 random non-delta_q apexes.
SuiteReport verify_delta_q_characterization(double far_distance, std::uint64_t seed = 42);

// W1(delta_q, mu) = D * (base mass of mu) on random measures.
SuiteReport verify_mass_identity(double far_distance, int samples, std::uint64_t seed = 42);

// W1((1-t)delta_q + t mu', (1-t)delta_q + t nu') = t * W1(mu', nu').
SuiteReport verify_slice_scaling(double far_distance, int samples, std::uint64_t seed = 42);

// The two-measure counterexample showing a slice-wise flip action distorts
// W1, plus the cross-slice distance grids for mu_t = (1-t)delta_q + t delta_0
// and nu_t = (1-t)delta_q + t delta_1.
SuiteReport verify_thm1_counterexample(double far_distance, double t = 0.6);

// The collapse plan (q stays, base mass to the origin) is optimal for W2:
// primal cost, dual certificate value, and solver optimum agree.
SuiteReport verify_pi0_optimality(int samples, std::uint64_t seed = 42);

// |slice_mass(mu) - slice_mass(nu)| <= W2(mu, nu)^2 on the plane-plus-q
// space, tight at delta_q vs delta_{(0,0)}.
SuiteReport verify_mass_holder_bound(int samples, std::uint64_t seed = 42);

// nu_t = (1-t)delta_q + t delta_0 minimizes the W2 distance to delta_q over
// S_t with value sqrt(t); perturbed candidates lose by a strict margin.
// `candidates` is the number of perturbed competitors per grid point.
SuiteReport verify_nu_t_minimizer(int candidates, std::uint64_t seed = 42);

// Displacement interpolants of the collapse plan have constant speed; between
// different slices no candidate midpoint exists (mass-Hoelder obstruction).
SuiteReport verify_geodesic_slice_characterization(int samples, std::uint64_t seed = 42);

// The rotated-image counterexample: the barycenter-fixing rotation preserves
// the projection constraint only at theta = 0; at 36 angles in (0, 2pi) the
// image carries no mass at the origin although slice preservation demands
// at least 1/3.
SuiteReport verify_thm2_counterexample();

// Projection commutes with origin-fixing rigid motions, exactly on atom sets.
SuiteReport verify_projection_commutes(int samples, std::uint64_t seed = 42);

struct AggregateReport {
  std::vector<SuiteReport> suites;
  bool pass = false;
};

// Suite groups accepted by run_suites and the CLI: "all", "thm1", "thm2",
// "duality", "geodesics", "slices". Throws invalid_argument for anything else.
std::vector<std::string> suite_group_members(const std::string& group);

AggregateReport run_suites(const std::string& group, const VerifyConfig& config);

// Helpers shared by the suites and the tests.

// (1-t) delta_q + t delta_origin on a plus-q space.
DiscreteMeasure origin_mixture(const GroundSpace& space, double t);

// The plan from mu to origin_mixture(space, slice_mass(mu)) that keeps the
// q mass in place and sends every base atom to the origin.
Coupling collapse_plan(const DiscreteMeasure& mu);

// The squared-distance potentials certifying optimality of collapse_plan on
// the plane-plus-q space: psi(x) = -|x|^2, psi(q) = 0; phi = 0 on {q, origin}
// and -inf on every other tabulated point.
DualPotentials collapse_plan_potentials(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace otrl
