#include "otrl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace otrl {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(GroundSpace space, std::vector<Atom> atoms, double mass_tol)
    : space_(space), atoms_(std::move(atoms)) {
  require(!atoms_.empty(), Errc::empty_support, "a measure needs at least one atom");
  for (const Atom& a : atoms_) {
    space_.require_admits(a.point);
    require(std::isfinite(a.weight) && a.weight > 0.0, Errc::nonpositive_weight,
            "atom weights must be strictly positive, got " + format_double(a.weight) + " at " +
                a.point.to_string());
  }
  // stable_sort keeps equal points in input order, so merged weights
  // accumulate deterministically.
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& a, const Atom& b) { return point_less(a.point, b.point); });
  // Merge exactly equal points.
  std::size_t out = 0;
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (atoms_[i].point == atoms_[out].point) {
      atoms_[out].weight += atoms_[i].weight;
    } else {
      atoms_[++out] = atoms_[i];
    }
  }
  atoms_.erase(atoms_.begin() + static_cast<std::ptrdiff_t>(out + 1), atoms_.end());
  double sum = 0.0;
  for (const Atom& a : atoms_) sum += a.weight;
  require(std::abs(sum - 1.0) <= mass_tol, Errc::mass_not_one,
          "atom weights must sum to 1 within " + format_double(mass_tol) + ", got " +
              format_double(sum));
}

DiscreteMeasure DiscreteMeasure::dirac(const GroundSpace& space, const GroundPoint& point) {
  return DiscreteMeasure(space, {Atom{point, 1.0}});
}

double DiscreteMeasure::weight_at(const GroundPoint& p) const noexcept {
  for (const Atom& a : atoms_) {
    if (a.point == p) return a.weight;
  }
  return 0.0;
}

double DiscreteMeasure::total_mass() const noexcept {
  double sum = 0.0;
  for (const Atom& a : atoms_) sum += a.weight;
  return sum;
}

double cdf(const DiscreteMeasure& mu, double x) {
  require(mu.space().kind() == GroundSpace::Kind::Interval, Errc::wrong_space,
          "cdf is defined for measures on the interval");
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, Errc::invalid_argument,
          "cdf argument must lie in [0,1]");
  double sum = 0.0;
  for (const auto& a : mu.atoms()) {
    if (a.point.coordinate() <= x) sum += a.weight;
  }
  return sum;
}

double quantile(const DiscreteMeasure& mu, double y) {
  require(mu.space().kind() == GroundSpace::Kind::Interval, Errc::wrong_space,
          "quantile is defined for measures on the interval");
  require(std::isfinite(y) && y > 0.0 && y <= 1.0, Errc::invalid_argument,
          "quantile argument must lie in (0,1]");
  double cum = 0.0;
  for (const auto& a : mu.atoms()) {
    cum += a.weight;
    if (cum >= y) return a.point.coordinate();
  }
  // Weights sum to 1 up to rounding; y close to 1 can overshoot the last
  // cumulative by a few ulp. The infimum is then the last atom.
  return mu.atoms().back().point.coordinate();
}

DiscreteMeasure pushforward(const BaseIsometry& iso, const DiscreteMeasure& mu) {
  require(iso.applicable_to(mu.space()), Errc::wrong_space,
          "isometry " + iso.name() + " does not act on " + mu.space().to_string());
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) {
    atoms.push_back({iso.apply(a.point), a.weight});
  }
  return DiscreteMeasure(mu.space(), std::move(atoms));
}

double slice_mass(const DiscreteMeasure& mu) {
  require(mu.space().has_q(), Errc::wrong_space,
          "slice mass is defined on plus-q spaces");
  return 1.0 - mu.weight_at(GroundPoint::q());
}

SliceDecomposition slice_decompose(const DiscreteMeasure& mu) {
  require(mu.space().has_q(), Errc::wrong_space,
          "slice decomposition is defined on plus-q spaces");
  std::vector<DiscreteMeasure::Atom> base;
  double t = 0.0;  // base mass summed directly, so rest renormalizes cleanly
  for (const auto& a : mu.atoms()) {
    if (a.point.is_q()) continue;
    base.push_back(a);
    t += a.weight;
  }
  SliceDecomposition out;
  out.t = base.empty() ? 0.0 : t;
  if (!base.empty()) {
    for (auto& a : base) a.weight /= t;
    out.rest = DiscreteMeasure(mu.space().base(), std::move(base));
  }
  return out;
}

DiscreteMeasure recompose(const GroundSpace& space, double t,
                          const std::optional<DiscreteMeasure>& rest) {
  require(space.has_q(), Errc::wrong_space, "recompose targets plus-q spaces");
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, Errc::invalid_argument,
          "slice mass t must lie in [0,1]");
  if (t == 0.0) return DiscreteMeasure::dirac(space, GroundPoint::q());
  require(rest.has_value(), Errc::invalid_argument,
          "recompose needs a base measure when t > 0");
  require(rest->space() == space.base(), Errc::wrong_space,
          "the base part of a recomposition must live on " + space.base().to_string());
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(rest->size() + 1);
  if (t < 1.0) atoms.push_back({GroundPoint::q(), 1.0 - t});
  for (const auto& a : rest->atoms()) atoms.push_back({a.point, t * a.weight});
  return DiscreteMeasure(space, std::move(atoms));
}

Vec2 barycenter(const DiscreteMeasure& mu) {
  require(mu.space().plane_based(), Errc::wrong_space,
          "barycenter is defined for plane measures");
  require(mu.weight_at(GroundPoint::q()) == 0.0, Errc::q_mass_present,
          "barycenter is undefined for measures carrying q mass");
  Vec2 g{};
  for (const auto& a : mu.atoms()) {
    g = g + a.weight * a.point.position();
  }
  return g;
}

}  // namespace otrl
