#include "otrl/ground.hpp"

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

double squared_norm(Vec2 v) { return v.x * v.x + v.y * v.y; }
double norm(Vec2 v) { return std::sqrt(squared_norm(v)); }

GroundPoint GroundPoint::interval(double x) {
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, Errc::invalid_argument,
          "interval coordinate must lie in [0,1], got " + format_double(x));
  if (x == 0.0) x = 0.0;  // canonicalize -0.0
  return GroundPoint(Kind::Interval, x, 0.0);
}

GroundPoint GroundPoint::plane(double x, double y) {
  require(std::isfinite(x) && std::isfinite(y), Errc::invalid_argument,
          "plane coordinates must be finite");
  if (x == 0.0) x = 0.0;  // canonicalize -0.0 so atom identity and
  if (y == 0.0) y = 0.0;  // serialization never see signed zeros
  return GroundPoint(Kind::Plane, x, y);
}

double GroundPoint::coordinate() const {
  require(kind_ == Kind::Interval, Errc::invalid_argument,
          "coordinate() is defined for interval points only");
  return x_;
}

Vec2 GroundPoint::position() const {
  require(kind_ == Kind::Plane, Errc::invalid_argument,
          "position() is defined for plane points only");
  return {x_, y_};
}

std::string GroundPoint::to_string() const {
  switch (kind_) {
    case Kind::Q:
      return "q";
    case Kind::Interval:
      return format_double(x_);
    case Kind::Plane:
      return "(" + format_double(x_) + ", " + format_double(y_) + ")";
  }
  return {};
}

bool point_less(const GroundPoint& a, const GroundPoint& b) noexcept {
  auto rank = [](const GroundPoint& p) {
    switch (p.kind()) {
      case GroundPoint::Kind::Q:
        return 0;
      case GroundPoint::Kind::Interval:
        return 1;
      case GroundPoint::Kind::Plane:
        return 2;
    }
    return 3;
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  switch (a.kind()) {
    case GroundPoint::Kind::Q:
      return false;
    case GroundPoint::Kind::Interval:
      return a.coordinate() < b.coordinate();
    case GroundPoint::Kind::Plane: {
      Vec2 u = a.position(), v = b.position();
      if (u.x != v.x) return u.x < v.x;
      return u.y < v.y;
    }
  }
  return false;
}

GroundSpace GroundSpace::interval_plus_q(double far_distance) {
  require(std::isfinite(far_distance) && far_distance > 1.0, Errc::invalid_argument,
          "far distance D must exceed 1, got " + format_double(far_distance));
  return GroundSpace(Kind::IntervalPlusQ, far_distance);
}

double GroundSpace::far_distance() const {
  require(kind_ == Kind::IntervalPlusQ, Errc::invalid_argument,
          "far_distance() is defined for the interval-plus-q space only");
  return far_;
}

GroundSpace GroundSpace::base() const {
  switch (kind_) {
    case Kind::IntervalPlusQ:
      return interval();
    case Kind::PlanePlusQ:
      return plane();
    default:
      fail(Errc::invalid_argument, "base() is defined for plus-q spaces only");
  }
}

GroundPoint GroundSpace::base_origin() const {
  return interval_based() ? GroundPoint::interval(0.0) : GroundPoint::plane(0.0, 0.0);
}

bool GroundSpace::admits(const GroundPoint& p) const noexcept {
  switch (p.kind()) {
    case GroundPoint::Kind::Q:
      return has_q();
    case GroundPoint::Kind::Interval:
      return interval_based();
    case GroundPoint::Kind::Plane:
      return plane_based();
  }
  return false;
}

void GroundSpace::require_admits(const GroundPoint& p) const {
  require(admits(p), Errc::point_not_in_space,
          "point " + p.to_string() + " does not belong to " + to_string());
}

double GroundSpace::distance(const GroundPoint& a, const GroundPoint& b) const {
  require_admits(a);
  require_admits(b);
  if (a.is_q() && b.is_q()) return 0.0;
  if (a.is_q() || b.is_q()) {
    const GroundPoint& other = a.is_q() ? b : a;
    if (interval_based()) return far_;
    return std::sqrt(1.0 + squared_norm(other.position()));
  }
  if (interval_based()) return std::abs(a.coordinate() - b.coordinate());
  return norm(a.position() - b.position());
}

std::string GroundSpace::to_string() const {
  switch (kind_) {
    case Kind::Interval:
      return "interval";
    case Kind::IntervalPlusQ:
      return "interval_q(D=" + format_double(far_) + ")";
    case Kind::Plane:
      return "plane";
    case Kind::PlanePlusQ:
      return "plane_q";
  }
  return {};
}

BaseIsometry BaseIsometry::identity() { return BaseIsometry(Kind::Identity); }

BaseIsometry BaseIsometry::reflect_interval() { return BaseIsometry(Kind::ReflectInterval); }

BaseIsometry BaseIsometry::plane_motion(double theta, bool reflect, Vec2 translation) {
  require(std::isfinite(theta) && std::isfinite(translation.x) && std::isfinite(translation.y),
          Errc::invalid_argument, "plane motion parameters must be finite");
  BaseIsometry iso(Kind::PlaneMotion);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Rotation applied after the optional reflection across the x-axis.
  iso.m00_ = c;
  iso.m01_ = reflect ? s : -s;
  iso.m10_ = s;
  iso.m11_ = reflect ? -c : c;
  iso.trans_ = translation;
  return iso;
}

bool BaseIsometry::fixes_origin() const noexcept {
  switch (kind_) {
    case Kind::Identity:
      return true;
    case Kind::ReflectInterval:
      return false;
    case Kind::PlaneMotion:
      return trans_.x == 0.0 && trans_.y == 0.0;
  }
  return false;
}

bool BaseIsometry::is_linear_plane_motion() const noexcept {
  return kind_ == Kind::PlaneMotion && trans_.x == 0.0 && trans_.y == 0.0;
}

GroundPoint BaseIsometry::apply(const GroundPoint& p) const {
  if (p.is_q()) return p;
  switch (kind_) {
    case Kind::Identity:
      return p;
    case Kind::ReflectInterval:
      require(p.kind() == GroundPoint::Kind::Interval, Errc::wrong_space,
              "the interval reflection applies to interval points only");
      return GroundPoint::interval(1.0 - p.coordinate());
    case Kind::PlaneMotion: {
      require(p.kind() == GroundPoint::Kind::Plane, Errc::wrong_space,
              "a plane motion applies to plane points only");
      const Vec2 v = p.position();
      return GroundPoint::plane(m00_ * v.x + m01_ * v.y + trans_.x,
                                m10_ * v.x + m11_ * v.y + trans_.y);
    }
  }
  fail(Errc::internal, "unreachable isometry kind");
}

BaseIsometry BaseIsometry::compose(const BaseIsometry& inner) const {
  if (kind_ == Kind::Identity) return inner;
  if (inner.kind_ == Kind::Identity) return *this;
  if (kind_ == Kind::ReflectInterval && inner.kind_ == Kind::ReflectInterval)
    return identity();
  require(kind_ == Kind::PlaneMotion && inner.kind_ == Kind::PlaneMotion, Errc::invalid_argument,
          "cannot compose interval and plane isometries");
  BaseIsometry out(Kind::PlaneMotion);
  out.m00_ = m00_ * inner.m00_ + m01_ * inner.m10_;
  out.m01_ = m00_ * inner.m01_ + m01_ * inner.m11_;
  out.m10_ = m10_ * inner.m00_ + m11_ * inner.m10_;
  out.m11_ = m10_ * inner.m01_ + m11_ * inner.m11_;
  out.trans_ = {m00_ * inner.trans_.x + m01_ * inner.trans_.y + trans_.x,
                m10_ * inner.trans_.x + m11_ * inner.trans_.y + trans_.y};
  return out;
}

std::string BaseIsometry::name() const {
  switch (kind_) {
    case Kind::Identity:
      return "id";
    case Kind::ReflectInterval:
      return "r";
    case Kind::PlaneMotion: {
      std::string out = "motion[" + format_double(m00_) + "," + format_double(m01_) + ";" +
                        format_double(m10_) + "," + format_double(m11_) + "]";
      if (trans_.x != 0.0 || trans_.y != 0.0)
        out += "+(" + format_double(trans_.x) + "," + format_double(trans_.y) + ")";
      return out;
    }
  }
  return {};
}

bool BaseIsometry::applicable_to(const GroundSpace& space) const noexcept {
  switch (kind_) {
    case Kind::Identity:
      return true;
    case Kind::ReflectInterval:
      return space.interval_based();
    case Kind::PlaneMotion:
      return space.plane_based();
  }
  return false;
}

}  // namespace otrl
