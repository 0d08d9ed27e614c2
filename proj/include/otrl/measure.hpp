#pragma once

#include <optional>
#include <span>
#include <vector>

#include "otrl/ground.hpp"

namespace otrl {

// A finitely supported probability measure on a ground space. Atoms are kept
// in canonical order (q first, then base points ascending) with exactly equal
// points merged. Weights are strictly positive and sum to one: the sum is
// validated against mass_tol and the weights are then kept bit-for-bit, never
// rescaled, so rebuilding a measure from its own atoms is the identity.
class DiscreteMeasure {
 public:
  struct Atom {
    GroundPoint point;
    double weight;
    friend bool operator==(const Atom&, const Atom&) = default;
  };

  static constexpr double kValidationMassTol = 1e-12;  // internal constructions
  static constexpr double kInputMassTol = 1e-9;        // user-supplied JSON

  DiscreteMeasure(GroundSpace space, std::vector<Atom> atoms,
                  double mass_tol = kValidationMassTol);

  static DiscreteMeasure dirac(const GroundSpace& space, const GroundPoint& point);

  const GroundSpace& space() const noexcept { return space_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  const Atom& atom(std::size_t i) const { return atoms_.at(i); }
  double weight_at(const GroundPoint& p) const noexcept;  // 0 when p is not an atom
  double total_mass() const noexcept;

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  GroundSpace space_;
  std::vector<Atom> atoms_;
};

// F(x) = mu([0, x]) for a measure on the interval (right-continuous step
// function). Requires 0 <= x <= 1.
double cdf(const DiscreteMeasure& mu, double x);

// Generalized inverse F^{-1}(y) = inf{x : F(x) >= y} for y in (0, 1].
double quantile(const DiscreteMeasure& mu, double y);

DiscreteMeasure pushforward(const BaseIsometry& iso, const DiscreteMeasure& mu);

// Mass carried by the base space: t = 1 - mu({q}).
double slice_mass(const DiscreteMeasure& mu);

struct SliceDecomposition {
  double t = 0.0;                       // base mass
  std::optional<DiscreteMeasure> rest;  // normalized base part, on the base space; absent iff t == 0
};

// Splits mu = (1-t) delta_q + t * rest. Defined on plus-q spaces.
SliceDecomposition slice_decompose(const DiscreteMeasure& mu);

// (1-t) delta_q + t * rest on the given plus-q space; rest lives on its base.
// rest may be absent only when t == 0.
DiscreteMeasure recompose(const GroundSpace& space, double t,
                          const std::optional<DiscreteMeasure>& rest);

// Mean of a plane measure. Rejects measures carrying q mass.
Vec2 barycenter(const DiscreteMeasure& mu);

}  // namespace otrl
