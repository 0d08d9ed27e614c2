#include "otrl/maps.hpp"

#include <algorithm>
#include <cmath>

namespace otrl {

MeasureMap::MeasureMap(std::string name, GroundSpace space, Rule rule)
    : name_(std::move(name)), space_(space), rule_(std::move(rule)) {
  require(static_cast<bool>(rule_), Errc::invalid_argument, "map rule must be callable");
}

DiscreteMeasure MeasureMap::operator()(const DiscreteMeasure& mu) const {
  require(mu.space() == space_, Errc::space_mismatch,
          "map " + name_ + " expects measures on " + space_.to_string() + ", got " +
              mu.space().to_string());
  return rule_(mu);
}

MeasureMap lift(const GroundSpace& space, const BaseIsometry& iso) {
  require(iso.applicable_to(space), Errc::wrong_space,
          "isometry " + iso.name() + " does not act on " + space.to_string());
  return MeasureMap("trivial:" + iso.name(), space,
                    [iso](const DiscreteMeasure& mu) { return pushforward(iso, mu); });
}

DiscreteMeasure flip(const DiscreteMeasure& mu) {
  require(mu.space().kind() == GroundSpace::Kind::Interval, Errc::wrong_space,
          "the flip acts on measures on the interval");
  // Gaps between consecutive positions (padded with 0 and 1) become weights;
  // cumulative weights become positions. c_n is forced to exactly 1 so the
  // image always passes mass validation.
  const std::size_t n = mu.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + mu.atom(i).weight;
  cum[n] = 1.0;
  for (std::size_t i = 1; i < n; ++i) cum[i] = std::min(cum[i], 1.0);
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double lo = (i == 0) ? 0.0 : mu.atom(i - 1).point.coordinate();
    const double hi = (i == n) ? 1.0 : mu.atom(i).point.coordinate();
    if (hi - lo <= 0.0) continue;  // zero gaps carry no mass
    atoms.push_back({GroundPoint::interval(cum[i]), hi - lo});
  }
  return DiscreteMeasure(mu.space(), std::move(atoms));
}

MeasureMap flip_map() {
  return MeasureMap("flip", GroundSpace::interval(),
                    [](const DiscreteMeasure& mu) { return flip(mu); });
}

DiscreteMeasure kloeckner_isometry(const BaseIsometry& motion, const DiscreteMeasure& mu) {
  require(mu.space().kind() == GroundSpace::Kind::Plane, Errc::wrong_space,
          "the barycenter-fixing isometry acts on measures on the plane");
  require(motion.kind() == BaseIsometry::Kind::Identity || motion.is_linear_plane_motion(),
          Errc::invalid_argument,
          "the barycenter-fixing isometry requires a linear rigid motion, got " +
              motion.name());
  const Vec2 g = barycenter(mu);
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) {
    const Vec2 centered = a.point.position() - g;
    const Vec2 moved = motion.apply(GroundPoint::plane(centered)).position();
    atoms.push_back({GroundPoint::plane(moved + g), a.weight});
  }
  return DiscreteMeasure(mu.space(), std::move(atoms));
}

MeasureMap kloeckner_map(double theta, bool reflect) {
  require(std::isfinite(theta), Errc::invalid_argument, "the angle must be finite");
  const BaseIsometry motion = BaseIsometry::plane_motion(theta, reflect);
  return MeasureMap("kloeckner:" + motion.name(), GroundSpace::plane(),
                    [motion](const DiscreteMeasure& mu) {
                      return kloeckner_isometry(motion, mu);
                    });
}

DiscreteMeasure project_q_to_origin(const DiscreteMeasure& mu) {
  require(mu.space().has_q(), Errc::wrong_space,
          "the projection acts on measures on a plus-q space");
  const GroundPoint origin = mu.space().base_origin();
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) {
    atoms.push_back({a.point.is_q() ? origin : a.point, a.weight});
  }
  return DiscreteMeasure(mu.space(), std::move(atoms));
}

MeasureMap projection_map(const GroundSpace& space) {
  require(space.has_q(), Errc::wrong_space,
          "the projection acts on measures on a plus-q space");
  return MeasureMap("project", space,
                    [](const DiscreteMeasure& mu) { return project_q_to_origin(mu); });
}

namespace {

DiscreteMeasure apply_slice_isometry(SliceIsometry which, const DiscreteMeasure& rest) {
  switch (which) {
    case SliceIsometry::Identity:
      return rest;
    case SliceIsometry::Reflect:
      return pushforward(BaseIsometry::reflect_interval(), rest);
    case SliceIsometry::Flip:
      return flip(rest);
    case SliceIsometry::ReflectFlip:
      return pushforward(BaseIsometry::reflect_interval(), flip(rest));
  }
  fail(Errc::internal, "unknown slice isometry");
}

}  // namespace

MeasureMap slice_action(const GroundSpace& space,
                        std::function<SliceIsometry(double)> assignment) {
  require(space.kind() == GroundSpace::Kind::IntervalPlusQ, Errc::wrong_space,
          "slice actions act on measures on the interval-plus-q space");
  require(static_cast<bool>(assignment), Errc::invalid_argument,
          "slice assignment must be callable");
  return MeasureMap("slice-action", space, [assignment](const DiscreteMeasure& mu) {
    const SliceDecomposition dec = slice_decompose(mu);
    if (!dec.rest.has_value()) return mu;  // delta_q is fixed by every action
    const SliceIsometry which = assignment(dec.t);
    // The identity action must be the identity map bit-for-bit; the
    // recompose route would divide and re-multiply the weights by t.
    if (which == SliceIsometry::Identity) return mu;
    return recompose(mu.space(), dec.t, apply_slice_isometry(which, *dec.rest));
  });
}

DiscreteMeasure geodesic_point(const Coupling& plan, double s) {
  require(std::isfinite(s) && s >= 0.0 && s <= 1.0, Errc::invalid_argument,
          "interpolation time must lie in [0, 1]");
  const GroundSpace& space = plan.row_measure().space();
  require(space.kind() == GroundSpace::Kind::PlanePlusQ, Errc::wrong_space,
          "displacement interpolation runs on the plane-plus-q space");
  std::vector<DiscreteMeasure::Atom> atoms;
  for (std::size_t i = 0; i < plan.rows(); ++i) {
    for (std::size_t j = 0; j < plan.cols(); ++j) {
      const double w = plan.at(i, j);
      if (w == 0.0) continue;
      require(w > 0.0, Errc::invalid_argument, "plan entries must be nonnegative");
      const GroundPoint& x = plan.row_measure().atom(i).point;
      const GroundPoint& y = plan.col_measure().atom(j).point;
      if (x.is_q() && y.is_q()) {
        atoms.push_back({GroundPoint::q(), w});
        continue;
      }
      require(!x.is_q() && !y.is_q(), Errc::mixed_q_pairing,
              "no geodesic passes through a pairing of q with a plane point");
      atoms.push_back(
          {GroundPoint::plane((1.0 - s) * x.position() + s * y.position()), w});
    }
  }
  return DiscreteMeasure(space, std::move(atoms));
}

DistortionReport isometry_distortion(
    const MeasureMap& map, std::span<const std::pair<DiscreteMeasure, DiscreteMeasure>> pairs,
    double p) {
  require(!pairs.empty(), Errc::invalid_argument, "need at least one pair");
  DistortionReport out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double before = solve_exact(pairs[k].first, pairs[k].second, p).distance;
    const double after = solve_exact(map(pairs[k].first), map(pairs[k].second), p).distance;
    const double distortion = std::abs(after - before);
    if (distortion >= out.max_distortion) {
      out.max_distortion = distortion;
      out.argmax = k;
      out.distance_before = before;
      out.distance_after = after;
    }
  }
  return out;
}

}  // namespace otrl
