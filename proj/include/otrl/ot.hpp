#pragma once

#include <span>
#include <utility>
#include <vector>

#include "otrl/measure.hpp"

namespace otrl {

// Joint weights on the product of two atom lists. The constructor validates
// the shape only; check_coupling produces the marginal/nonnegativity verdict,
// so deliberately broken plans can still be represented and diagnosed.
class Coupling {
 public:
  Coupling(DiscreteMeasure row, DiscreteMeasure col, std::vector<double> weights);

  static Coupling diagonal(const DiscreteMeasure& mu);  // identity plan mu -> mu
  static Coupling product(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

  const DiscreteMeasure& row_measure() const noexcept { return row_; }
  const DiscreteMeasure& col_measure() const noexcept { return col_; }
  std::size_t rows() const noexcept { return row_.size(); }
  std::size_t cols() const noexcept { return col_.size(); }
  double at(std::size_t i, std::size_t j) const { return weights_[i * cols() + j]; }
  std::span<const double> weights() const noexcept { return weights_; }

  // Sum of pi_ij * d(x_i, y_j)^p over the plan.
  double cost(double p) const;

 private:
  DiscreteMeasure row_;
  DiscreteMeasure col_;
  std::vector<double> weights_;  // rows() * cols(), row-major
};

struct CouplingCheck {
  bool pass = false;
  double worst_violation = 0.0;  // max of marginal deviation and entry negativity
  std::string detail;
};

CouplingCheck check_coupling(const Coupling& plan, double marginal_tol = 1e-10,
                             double negativity_tol = 1e-12);

struct OTResult {
  double order;     // p
  double cost;      // sum pi * d^p
  double distance;  // cost^(1/p)
  Coupling plan;
};

// Exact optimal transport between two measures on the same space with cost
// d^p: transportation simplex with Bland's rule, no regularization. Identical
// measures short-circuit to the diagonal plan; single-atom sides to the
// product plan (the only coupling in that case).
OTResult solve_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

// W1 on the interval via the closed form: integral over [0,1] of |F_mu - F_nu|.
double w1_interval_closed_form(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Independent oracle: expands both measures into `denominator` atoms of mass
// 1/denominator and solves the balanced assignment problem exactly, by full
// permutation scan for tiny instances and by the Hungarian algorithm
// otherwise. Every weight must be an integer multiple of 1/denominator
// (within 1e-9 of one). Returns the Wasserstein-p distance.
double brute_force_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                          int denominator);

// Extended real with explicit infinity tags; infinities never enter
// floating-point arithmetic.
struct ExtReal {
  enum class Tag { Finite, PosInf, NegInf };
  Tag tag = Tag::Finite;
  double value = 0.0;

  static ExtReal finite(double v) { return {Tag::Finite, v}; }
  static ExtReal pos_inf() { return {Tag::PosInf, 0.0}; }
  static ExtReal neg_inf() { return {Tag::NegInf, 0.0}; }
  bool is_finite() const noexcept { return tag == Tag::Finite; }
};

// Kantorovich potentials for the squared-distance cost, tabulated on the
// union of the two supports plus any designated extra points. psi lives on
// the mu side (may be +inf), phi on the nu side (may be -inf).
struct DualPotentials {
  std::vector<std::pair<GroundPoint, ExtReal>> psi;
  std::vector<std::pair<GroundPoint, ExtReal>> phi;

  const ExtReal* lookup_psi(const GroundPoint& p) const noexcept;
  const ExtReal* lookup_phi(const GroundPoint& p) const noexcept;
};

struct CertificateCheck {
  bool pass = false;
  double worst_feasibility = 0.0;  // max over evaluated pairs of phi - psi - d^2
  double worst_support_gap = 0.0;  // max |phi - psi - d^2| over pairs carrying mass
  double primal_cost = 0.0;        // sum pi * d^2
  double dual_value = 0.0;         // integral of phi dnu - integral of psi dmu
  std::string detail;
};

// Verifies a p=2 optimality certificate: feasibility phi(z) - psi(x) <= d(x,z)^2
// on every tabulated pair, equality on pairs carrying plan mass, and agreement
// of the dual value with the plan cost, all within tol.
CertificateCheck check_dual_certificate(const GroundSpace& space, const DualPotentials& pot,
                                        const Coupling& plan, double tol = 1e-10);

// Kantorovich-Rubinstein lower bound: integral of f d(nu - mu) for a witness
// tabulated on both supports. The 1-Lipschitz property is checked on all
// table pairs and violations are rejected.
double kr_lower_bound(const std::vector<std::pair<GroundPoint, double>>& witness,
                      const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace otrl
