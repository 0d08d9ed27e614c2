#include <cmath>
#include <limits>

#include <doctest.h>

#include "gen.hpp"
#include "otrl/ground.hpp"

using namespace otrl;

TEST_CASE("interval points validate their coordinate") {
  CHECK(GroundPoint::interval(0.5).coordinate() == 0.5);
  CHECK(gen::thrown_code([] { GroundPoint::interval(1.5); }) == Errc::invalid_argument);
  CHECK(gen::thrown_code([] { GroundPoint::interval(-0.1); }) == Errc::invalid_argument);
  CHECK(gen::thrown_code([] { GroundPoint::interval(std::nan("")); }) == Errc::invalid_argument);
  CHECK(gen::thrown_code([] {
          GroundPoint::plane(std::numeric_limits<double>::infinity(), 0.0);
        }) == Errc::invalid_argument);
}

TEST_CASE("signed zero folds onto plus zero at construction") {
  CHECK(GroundPoint::interval(-0.0) == GroundPoint::interval(0.0));
  CHECK(!std::signbit(GroundPoint::interval(-0.0).coordinate()));
  CHECK(GroundPoint::plane(-0.0, -0.0) == GroundPoint::plane(0.0, 0.0));
  CHECK(!std::signbit(GroundPoint::plane(-0.0, 0.0).position().x));
}

TEST_CASE("spaces admit exactly their own points") {
  const auto q = GroundPoint::q();
  CHECK(GroundSpace::interval_plus_q(10.0).admits(q));
  CHECK(GroundSpace::plane_plus_q().admits(q));
  CHECK(!GroundSpace::interval().admits(q));
  CHECK(!GroundSpace::plane().admits(q));
  CHECK(GroundSpace::interval().admits(GroundPoint::interval(1.0)));
  CHECK(!GroundSpace::interval().admits(GroundPoint::plane(0.5, 0.0)));
  CHECK(!GroundSpace::plane_plus_q().admits(GroundPoint::interval(0.5)));
  CHECK(gen::thrown_code([] {
          GroundSpace::plane().distance(GroundPoint::q(), GroundPoint::plane(0.0, 0.0));
        }) == Errc::point_not_in_space);
}

TEST_CASE("the far distance rules the interval-plus-q space") {
  const auto space = GroundSpace::interval_plus_q(10.0);
  const auto q = GroundPoint::q();
  CHECK(space.far_distance() == 10.0);
  CHECK(space.distance(q, q) == 0.0);
  CHECK(space.distance(q, GroundPoint::interval(0.0)) == 10.0);
  CHECK(space.distance(GroundPoint::interval(1.0), q) == 10.0);
  CHECK(space.distance(GroundPoint::interval(0.25), GroundPoint::interval(0.75)) == 0.5);
  CHECK(gen::thrown_code([] { GroundSpace::interval_plus_q(1.0); }) == Errc::invalid_argument);
  CHECK(gen::thrown_code([] { GroundSpace::interval_plus_q(0.5); }) == Errc::invalid_argument);
  CHECK(gen::thrown_code([] {
          GroundSpace::interval_plus_q(std::numeric_limits<double>::infinity());
        }) == Errc::invalid_argument);
  CHECK(gen::thrown_code([] { GroundSpace::interval().far_distance(); }) ==
        Errc::invalid_argument);
}

TEST_CASE("the isolated plane point sits one level above the plane") {
  const auto space = GroundSpace::plane_plus_q();
  const auto q = GroundPoint::q();
  CHECK(space.distance(q, GroundPoint::plane(0.0, 0.0)) == 1.0);
  CHECK(space.distance(q, GroundPoint::plane(3.0, 4.0)) ==
        doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
  CHECK(space.distance(GroundPoint::plane(1.0, 2.0), GroundPoint::plane(4.0, 6.0)) == 5.0);
}

TEST_CASE("base and origin of the plus-q spaces") {
  CHECK(GroundSpace::interval_plus_q(3.0).base() == GroundSpace::interval());
  CHECK(GroundSpace::plane_plus_q().base() == GroundSpace::plane());
  CHECK(GroundSpace::interval_plus_q(3.0).base_origin() == GroundPoint::interval(0.0));
  CHECK(GroundSpace::plane_plus_q().base_origin() == GroundPoint::plane(0.0, 0.0));
  CHECK(gen::thrown_code([] { GroundSpace::plane().base(); }) == Errc::invalid_argument);
}

TEST_CASE("metric axioms hold on random triples in every space") {
  Rng rng(2026);
  const GroundSpace spaces[] = {GroundSpace::interval(), GroundSpace::interval_plus_q(10.0),
                                GroundSpace::plane(), GroundSpace::plane_plus_q()};
  for (const auto& space : spaces) {
    for (int k = 0; k < 2500; ++k) {
      const auto a = gen::random_point(space, rng);
      const auto b = gen::random_point(space, rng);
      const auto c = gen::random_point(space, rng);
      const double ab = space.distance(a, b);
      CHECK(ab >= 0.0);
      CHECK(ab == space.distance(b, a));
      CHECK((ab == 0.0) == (a == b));
      CHECK(ab <= space.distance(a, c) + space.distance(c, b) + 1e-12);
    }
  }
}

TEST_CASE("canonical point order is a strict weak order consistent with equality") {
  Rng rng(5);
  const auto space = GroundSpace::plane_plus_q();
  CHECK(point_less(GroundPoint::q(), GroundPoint::plane(-2.0, 0.0)));
  CHECK(point_less(GroundPoint::plane(0.0, 1.0), GroundPoint::plane(1.0, 0.0)));
  CHECK(point_less(GroundPoint::plane(1.0, 0.0), GroundPoint::plane(1.0, 2.0)));
  for (int k = 0; k < 2000; ++k) {
    const auto a = gen::random_point(space, rng);
    const auto b = gen::random_point(space, rng);
    CHECK(!point_less(a, a));
    const int rel = point_less(a, b) ? 1 : (point_less(b, a) ? -1 : 0);
    CHECK((rel == 0) == (a == b));
  }
}

TEST_CASE("the interval reflection is a distance-preserving involution") {
  Rng rng(7);
  const auto space = GroundSpace::interval_plus_q(10.0);
  const auto r = BaseIsometry::reflect_interval();
  CHECK(r.apply(GroundPoint::q()) == GroundPoint::q());
  CHECK(r.apply(GroundPoint::interval(0.0)) == GroundPoint::interval(1.0));
  CHECK(r.apply(GroundPoint::interval(0.25)) == GroundPoint::interval(0.75));
  for (int k = 0; k < 1000; ++k) {
    const auto a = gen::random_point(space, rng);
    const auto b = gen::random_point(space, rng);
    CHECK(std::abs(space.distance(r.apply(a), r.apply(b)) - space.distance(a, b)) <= 1e-12);
  }
  CHECK(gen::thrown_code([&] { r.apply(GroundPoint::plane(0.0, 0.0)); }) == Errc::wrong_space);
}

TEST_CASE("plane motions preserve distances and fix q") {
  Rng rng(8);
  const auto plane = GroundSpace::plane();
  const auto space = GroundSpace::plane_plus_q();
  for (int k = 0; k < 500; ++k) {
    // arbitrary rigid motions are isometries of the bare plane
    const auto m =
        BaseIsometry::plane_motion(gen::kTau * rng.uniform01(), rng.bernoulli(0.5),
                                   {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    CHECK(m.apply(GroundPoint::q()) == GroundPoint::q());
    const auto a = gen::random_point(plane, rng);
    const auto b = gen::random_point(plane, rng);
    CHECK(std::abs(plane.distance(m.apply(a), m.apply(b)) - plane.distance(a, b)) <= 1e-12);
    // only the origin-fixing ones also preserve the apex distance
    // sqrt(1 + |x|^2), since a translation changes |x|
    const auto linear = BaseIsometry::plane_motion(gen::kTau * rng.uniform01(),
                                                   rng.bernoulli(0.5));
    const auto c = gen::random_point(space, rng);
    const auto d = gen::random_point(space, rng);
    CHECK(std::abs(space.distance(linear.apply(c), linear.apply(d)) - space.distance(c, d)) <=
          1e-12);
  }
  // quarter turn sends (1, 0) next to (0, 1); cos(pi/2) only rounds to ~6e-17
  const auto quarter = BaseIsometry::plane_motion(gen::kTau / 4.0);
  const auto image = quarter.apply(GroundPoint::plane(1.0, 0.0)).position();
  CHECK(std::abs(image.x - 0.0) <= 1e-12);
  CHECK(std::abs(image.y - 1.0) <= 1e-12);
  CHECK(gen::thrown_code([] {
          BaseIsometry::plane_motion(std::nan(""));
        }) == Errc::invalid_argument);
  CHECK(gen::thrown_code([&] { quarter.apply(GroundPoint::interval(0.5)); }) ==
        Errc::wrong_space);
}

TEST_CASE("the zero-angle motion is the bitwise identity on the plane") {
  Rng rng(9);
  const auto m = BaseIsometry::plane_motion(0.0);
  for (int k = 0; k < 200; ++k) {
    const auto p = gen::plane_dyadic_point(rng);
    CHECK(m.apply(p) == p);
  }
}

TEST_CASE("composition matches sequential application") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto f =
        BaseIsometry::plane_motion(gen::kTau * rng.uniform01(), rng.bernoulli(0.5),
                                   {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    const auto g =
        BaseIsometry::plane_motion(gen::kTau * rng.uniform01(), rng.bernoulli(0.5),
                                   {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    const auto p = GroundPoint::plane(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const auto lhs = f.compose(g).apply(p).position();
    const auto rhs = f.apply(g.apply(p)).position();
    CHECK(std::abs(lhs.x - rhs.x) <= 1e-12);
    CHECK(std::abs(lhs.y - rhs.y) <= 1e-12);
  }
  const auto r = BaseIsometry::reflect_interval();
  CHECK(r.compose(r).kind() == BaseIsometry::Kind::Identity);
  CHECK(BaseIsometry::identity().compose(r).kind() == BaseIsometry::Kind::ReflectInterval);
  CHECK(gen::thrown_code([&] { r.compose(BaseIsometry::plane_motion(1.0)); }) ==
        Errc::invalid_argument);
}

TEST_CASE("origin fixing and applicability are reported correctly") {
  CHECK(BaseIsometry::identity().fixes_origin());
  CHECK(!BaseIsometry::reflect_interval().fixes_origin());
  CHECK(BaseIsometry::plane_motion(1.0).fixes_origin());
  CHECK(!BaseIsometry::plane_motion(1.0, false, {0.5, 0.0}).fixes_origin());
  CHECK(BaseIsometry::plane_motion(1.0).is_linear_plane_motion());
  CHECK(!BaseIsometry::plane_motion(1.0, false, {0.5, 0.0}).is_linear_plane_motion());
  CHECK(BaseIsometry::identity().applicable_to(GroundSpace::plane()));
  CHECK(BaseIsometry::reflect_interval().applicable_to(GroundSpace::interval_plus_q(2.0)));
  CHECK(!BaseIsometry::reflect_interval().applicable_to(GroundSpace::plane()));
  CHECK(!BaseIsometry::plane_motion(1.0).applicable_to(GroundSpace::interval()));
}
