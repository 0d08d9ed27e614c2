#pragma once

#include <functional>
#include <string>

#include "otrl/ot.hpp"

namespace otrl {

// A named transformation of measures on a fixed space.
class MeasureMap {
 public:
  using Rule = std::function<DiscreteMeasure(const DiscreteMeasure&)>;

  MeasureMap(std::string name, GroundSpace space, Rule rule);

  const std::string& name() const noexcept { return name_; }
  const GroundSpace& space() const noexcept { return space_; }

  // Applies the rule; the measure must live on the map's space.
  DiscreteMeasure operator()(const DiscreteMeasure& mu) const;

 private:
  std::string name_;
  GroundSpace space_;
  Rule rule_;
};

// Pushforward by a base isometry, as a map named "trivial:<iso>".
MeasureMap lift(const GroundSpace& space, const BaseIsometry& iso);

// CDF transpose of an atomic measure on the interval: for sorted atoms
// x_1 < ... < x_n with cumulative sums c_0 = 0, ..., c_n = 1, the image is
// sum over i of (x_{i+1} - x_i) delta_{c_i} with x_0 := 0 and x_{n+1} := 1,
// dropping zero-gap terms. An involution that exchanges atom positions and
// cumulative weights.
DiscreteMeasure flip(const DiscreteMeasure& mu);
MeasureMap flip_map();

// Kloeckner's barycenter-fixing isometry of W2 over the plane:
// mu -> phi_#(mu - g) + g where g is the barycenter of mu and phi a linear
// rigid motion (rotation and/or reflection, zero translation).
DiscreteMeasure kloeckner_isometry(const BaseIsometry& motion, const DiscreteMeasure& mu);
MeasureMap kloeckner_map(double theta, bool reflect = false);

// Relocates the q mass to the base origin (interval 0 / plane (0,0)),
// landing in the slice of full base mass.
DiscreteMeasure project_q_to_origin(const DiscreteMeasure& mu);
MeasureMap projection_map(const GroundSpace& space);

// The four isometries of W1([0,1]) that a slice-wise action can apply.
enum class SliceIsometry { Identity, Reflect, Flip, ReflectFlip };

// Slice-wise action on the interval-plus-q space: decomposes
// mu = (1-t) delta_q + t mu', applies the isometry assigned to t on the base
// part, and recomposes. delta_q maps to itself.
MeasureMap slice_action(const GroundSpace& space,
                        std::function<SliceIsometry(double)> assignment);

// Displacement interpolation of a plan on the plane-plus-q space at time s in
// [0,1]: q-q mass stays at q, plane pairs move along segments; plans that
// couple q with plane points are rejected.
DiscreteMeasure geodesic_point(const Coupling& plan, double s);

struct DistortionReport {
  double max_distortion = 0.0;
  std::size_t argmax = 0;        // index into the pair list
  double distance_before = 0.0;  // at the argmax pair
  double distance_after = 0.0;
};

// Max |d(map mu, map nu) - d(mu, nu)| over the given pairs for W_p.
DistortionReport isometry_distortion(
    const MeasureMap& map,
    std::span<const std::pair<DiscreteMeasure, DiscreteMeasure>> pairs, double p);

}  // namespace otrl
