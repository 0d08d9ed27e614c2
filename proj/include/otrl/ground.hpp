#pragma once

#include <string>

#include "otrl/error.hpp"

namespace otrl {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

double squared_norm(Vec2 v);
double norm(Vec2 v);

// A point of one of the ground spaces: the isolated point q, a coordinate in
// [0,1], or a point of the plane. Coordinates are validated at construction
// (finite, and inside [0,1] for interval points); they are never clamped.
class GroundPoint {
 public:
  enum class Kind { Q, Interval, Plane };

  static GroundPoint q() noexcept { return GroundPoint(Kind::Q, 0.0, 0.0); }
  static GroundPoint interval(double x);
  static GroundPoint plane(double x, double y);
  static GroundPoint plane(Vec2 v) { return plane(v.x, v.y); }

  Kind kind() const noexcept { return kind_; }
  bool is_q() const noexcept { return kind_ == Kind::Q; }
  double coordinate() const;  // interval points only
  Vec2 position() const;      // plane points only

  std::string to_string() const;

  // Atom identity is exact coordinate equality.
  friend bool operator==(const GroundPoint&, const GroundPoint&) = default;

 private:
  GroundPoint(Kind k, double x, double y) : kind_(k), x_(x), y_(y) {}

  Kind kind_;
  double x_;  // interval coordinate, or plane x
  double y_;  // plane y
};

// Canonical order: q first, then interval/plane points by coordinates.
// No NaN can reach here, so this is a strict weak order.
bool point_less(const GroundPoint& a, const GroundPoint& b) noexcept;

// One of the four ground spaces. Plus-q variants adjoin the isolated point q;
// on the interval its distance to every base point is the far distance D > 1,
// on the plane it is sqrt(1 + |x|^2) (the point (0,0,1) one level above R^2).
class GroundSpace {
 public:
  enum class Kind { Interval, IntervalPlusQ, Plane, PlanePlusQ };

  static GroundSpace interval() { return GroundSpace(Kind::Interval, 0.0); }
  static GroundSpace interval_plus_q(double far_distance);
  static GroundSpace plane() { return GroundSpace(Kind::Plane, 0.0); }
  static GroundSpace plane_plus_q() { return GroundSpace(Kind::PlanePlusQ, 0.0); }

  Kind kind() const noexcept { return kind_; }
  bool has_q() const noexcept { return kind_ == Kind::IntervalPlusQ || kind_ == Kind::PlanePlusQ; }
  bool interval_based() const noexcept {
    return kind_ == Kind::Interval || kind_ == Kind::IntervalPlusQ;
  }
  bool plane_based() const noexcept { return kind_ == Kind::Plane || kind_ == Kind::PlanePlusQ; }

  double far_distance() const;    // IntervalPlusQ only
  GroundSpace base() const;       // plus-q spaces: the space with q removed
  GroundPoint base_origin() const;  // interval(0) or plane(0,0)

  bool admits(const GroundPoint& p) const noexcept;
  void require_admits(const GroundPoint& p) const;

  // The ground metric. Throws point_not_in_space for inadmissible points.
  double distance(const GroundPoint& a, const GroundPoint& b) const;

  std::string to_string() const;

  friend bool operator==(const GroundSpace&, const GroundSpace&) = default;

 private:
  GroundSpace(Kind k, double far) : kind_(k), far_(far) {}

  Kind kind_;
  double far_;  // D for IntervalPlusQ, otherwise 0
};

// Distance-preserving self-maps of the ground spaces that fix q: the
// identity, the interval reflection x -> 1-x, and rigid motions of the
// plane (rotation composed with an optional reflection across the x-axis,
// applied before the rotation, followed by a translation).
class BaseIsometry {
 public:
  enum class Kind { Identity, ReflectInterval, PlaneMotion };

  static BaseIsometry identity();
  static BaseIsometry reflect_interval();
  static BaseIsometry plane_motion(double theta, bool reflect = false, Vec2 translation = {});

  Kind kind() const noexcept { return kind_; }
  // True when the map fixes the base origin (identity, or a plane motion
  // with zero translation). The interval reflection moves 0 to 1.
  bool fixes_origin() const noexcept;
  bool is_linear_plane_motion() const noexcept;

  // Applies the map to a point; q is always fixed. Interval maps reject
  // plane points and vice versa.
  GroundPoint apply(const GroundPoint& p) const;

  // Composition: (a.compose(b))(p) == a(b(p)). Mixing interval and plane
  // kinds is rejected.
  BaseIsometry compose(const BaseIsometry& inner) const;

  std::string name() const;

  bool applicable_to(const GroundSpace& space) const noexcept;

 private:
  BaseIsometry(Kind k) : kind_(k) {}

  Kind kind_;
  // Plane motion state: x -> M x + t with M = [[m00, m01], [m10, m11]].
  double m00_ = 1.0, m01_ = 0.0, m10_ = 0.0, m11_ = 1.0;
  Vec2 trans_{};
};

}  // namespace otrl
