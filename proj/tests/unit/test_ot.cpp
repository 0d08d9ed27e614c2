#include <cmath>
#include <utility>
#include <vector>

#include <doctest.h>

#include "gen.hpp"
#include "otrl/ot.hpp"

using namespace otrl;

namespace {

const GroundSpace kIntervalQ = GroundSpace::interval_plus_q(10.0);
const GroundSpace kPlaneQ = GroundSpace::plane_plus_q();

DiscreteMeasure dirac_q(const GroundSpace& space) {
  return DiscreteMeasure::dirac(space, GroundPoint::q());
}

}  // namespace

TEST_CASE("moving unit mass off the isolated point costs the far distance") {
  const auto mu = dirac_q(kIntervalQ);
  const auto nu = DiscreteMeasure::dirac(kIntervalQ, GroundPoint::interval(0.0));
  const auto res = solve_exact(mu, nu, 1.0);
  CHECK(res.distance == 10.0);
  CHECK(res.cost == 10.0);
  CHECK(res.order == 1.0);
  CHECK(check_coupling(res.plan).pass);
}

TEST_CASE("the two-atom plane-plus-q example pairs q with q") {
  const DiscreteMeasure mu(kPlaneQ, {{GroundPoint::q(), 0.5},
                                     {GroundPoint::plane(3.0, 4.0), 0.5}});
  const DiscreteMeasure nu(kPlaneQ, {{GroundPoint::q(), 0.5},
                                     {GroundPoint::plane(0.0, 0.0), 0.5}});
  const auto res = solve_exact(mu, nu, 2.0);
  CHECK(res.cost == doctest::Approx(12.5).epsilon(1e-12));
  CHECK(res.distance == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
  // the 2x2 coupling polytope has one degree of freedom; the oracle scans it
  CHECK(std::abs(brute_force_oracle(mu, nu, 2.0, 2) - std::sqrt(12.5)) <= 1e-12);
  CHECK(check_coupling(res.plan).pass);
}

TEST_CASE("interval W1 closed form integrates the cdf gap") {
  const auto mu = DiscreteMeasure::dirac(GroundSpace::interval(), GroundPoint::interval(0.5));
  const DiscreteMeasure nu(GroundSpace::interval(), {{GroundPoint::interval(0.0), 0.5},
                                                     {GroundPoint::interval(1.0), 0.5}});
  // |F_mu - F_nu| is 1/2 on all of [0,1], so the distance is 1/2
  CHECK(w1_interval_closed_form(mu, nu) == 0.5);
  CHECK(solve_exact(mu, nu, 1.0).distance == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w1_interval_closed_form(mu, mu) == 0.0);
  CHECK(w1_interval_closed_form(
            DiscreteMeasure::dirac(GroundSpace::interval(), GroundPoint::interval(0.0)),
            DiscreteMeasure::dirac(GroundSpace::interval(), GroundPoint::interval(1.0))) == 1.0);
  CHECK(gen::thrown_code([&] {
          w1_interval_closed_form(mu, dirac_q(kIntervalQ));
        }) == Errc::wrong_space);
}

TEST_CASE("solver agrees with the closed form on random interval pairs") {
  Rng rng(31);
  for (int k = 0; k < 300; ++k) {
    const auto mu = gen::interval_random(rng);
    const auto nu = gen::interval_random(rng);
    const double exact = w1_interval_closed_form(mu, nu);
    const double solved = solve_exact(mu, nu, 1.0).distance;
    CHECK(std::abs(solved - exact) <= 1e-9 * (1.0 + exact));
  }
}

TEST_CASE("solver agrees with the assignment oracle on every space") {
  Rng rng(32);
  const GroundSpace spaces[] = {GroundSpace::interval(), kIntervalQ, GroundSpace::plane(),
                                kPlaneQ};
  for (const auto& space : spaces) {
    for (int k = 0; k < 40; ++k) {
      const int denom_log2 = 5;  // weights on the 1/32 grid
      auto draw = [&] {
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        const auto w = dyadic_weights(rng, n, denom_log2);
        std::vector<DiscreteMeasure::Atom> atoms;
        for (int i = 0; i < n; ++i) {
          GroundPoint p = space.has_q() && i == 0 ? GroundPoint::q()
                          : space.interval_based() ? gen::interval_dyadic_point(rng)
                                                   : gen::plane_dyadic_point(rng);
          atoms.push_back({p, w[i]});
        }
        return DiscreteMeasure(space, std::move(atoms));
      };
      const auto mu = draw();
      const auto nu = draw();
      for (const double p : {1.0, 2.0}) {
        const double oracle = brute_force_oracle(mu, nu, p, 32);
        const double solved = solve_exact(mu, nu, p).distance;
        CHECK(std::abs(solved - oracle) <= 1e-9 * (1.0 + oracle));
      }
    }
  }
}

TEST_CASE("W_p behaves like a metric on sampled triples") {
  Rng rng(33);
  for (const double p : {1.0, 2.0}) {
    for (int k = 0; k < 30; ++k) {
      const auto a = gen::plus_q_random(kPlaneQ, rng);
      const auto b = gen::plus_q_random(kPlaneQ, rng);
      const auto c = gen::plus_q_random(kPlaneQ, rng);
      const double ab = solve_exact(a, b, p).distance;
      const double ba = solve_exact(b, a, p).distance;
      CHECK(std::abs(ab - ba) <= 1e-8);
      CHECK(solve_exact(a, a, p).distance == 0.0);
      CHECK(ab <= solve_exact(a, c, p).distance + solve_exact(c, b, p).distance + 1e-8);
    }
  }
}

TEST_CASE("identical measures short-circuit to the diagonal plan") {
  Rng rng(34);
  const auto mu = gen::plus_q_random(kPlaneQ, rng);
  const auto res = solve_exact(mu, mu, 2.0);
  CHECK(res.cost == 0.0);
  CHECK(res.distance == 0.0);
  CHECK(res.plan.rows() == mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) CHECK(res.plan.at(i, i) == mu.atom(i).weight);
}

TEST_CASE("solver validates its inputs") {
  const auto mu = dirac_q(kIntervalQ);
  const auto nu = dirac_q(kPlaneQ);
  CHECK(gen::thrown_code([&] { solve_exact(mu, nu, 1.0); }) == Errc::space_mismatch);
  CHECK(gen::thrown_code([&] { solve_exact(mu, mu, 0.5); }) == Errc::invalid_argument);
}

TEST_CASE("coupling checks flag broken plans") {
  const DiscreteMeasure mu(GroundSpace::interval(), {{GroundPoint::interval(0.0), 0.5},
                                                     {GroundPoint::interval(1.0), 0.5}});
  const DiscreteMeasure nu(GroundSpace::interval(), {{GroundPoint::interval(0.25), 0.5},
                                                     {GroundPoint::interval(0.75), 0.5}});
  CHECK(check_coupling(Coupling::product(mu, nu)).pass);
  CHECK(check_coupling(Coupling::diagonal(mu)).pass);
  CHECK(Coupling::diagonal(mu).cost(2.0) == 0.0);

  const Coupling skewed(mu, nu, {0.5, 0.1, 0.0, 0.4});
  const auto bad = check_coupling(skewed);
  CHECK(!bad.pass);
  CHECK(bad.worst_violation == doctest::Approx(0.1).epsilon(1e-12));

  const Coupling negative(mu, nu, {0.6, -0.1, -0.1, 0.6});
  CHECK(!check_coupling(negative).pass);

  CHECK(gen::thrown_code([&] { Coupling(mu, nu, {1.0}); }) == Errc::invalid_argument);
}

TEST_CASE("the assignment oracle rejects what it cannot expand") {
  const auto mu = dirac_q(kIntervalQ);
  CHECK(gen::thrown_code([&] { brute_force_oracle(mu, mu, 1.0, 0); }) ==
        Errc::invalid_argument);
  CHECK(gen::thrown_code([&] { brute_force_oracle(mu, mu, 1.0, 513); }) ==
        Errc::instance_too_large);
  const DiscreteMeasure thirds(kIntervalQ, {{GroundPoint::q(), 1.0 / 3.0},
                                            {GroundPoint::interval(0.5), 2.0 / 3.0}});
  CHECK(gen::thrown_code([&] { brute_force_oracle(thirds, thirds, 1.0, 32); }) ==
        Errc::weights_not_multiple);
  CHECK(brute_force_oracle(thirds, thirds, 1.0, 3) == 0.0);
}

TEST_CASE("dual certificates accept optimal pairs and reject tampering") {
  const auto space = GroundSpace::interval();
  const auto mu = DiscreteMeasure::dirac(space, GroundPoint::interval(0.0));
  const auto nu = DiscreteMeasure::dirac(space, GroundPoint::interval(1.0));
  const Coupling plan(mu, nu, {1.0});

  DualPotentials pot;
  pot.psi = {{GroundPoint::interval(0.0), ExtReal::finite(0.0)},
             {GroundPoint::interval(1.0), ExtReal::finite(1.0)}};
  pot.phi = {{GroundPoint::interval(0.0), ExtReal::finite(0.0)},
             {GroundPoint::interval(1.0), ExtReal::finite(1.0)}};
  const auto ok = check_dual_certificate(space, pot, plan);
  CHECK(ok.pass);
  CHECK(ok.primal_cost == doctest::Approx(1.0));
  CHECK(ok.dual_value == doctest::Approx(1.0));

  // -inf on the nu side is vacuously feasible and never touches arithmetic
  DualPotentials inf_pot = pot;
  inf_pot.phi[0].second = ExtReal::neg_inf();
  CHECK(check_dual_certificate(space, inf_pot, plan).pass);

  DualPotentials greedy = pot;
  greedy.phi[1].second = ExtReal::finite(1.5);  // claims more than the cost allows
  const auto bad = check_dual_certificate(space, greedy, plan);
  CHECK(!bad.pass);
  CHECK(bad.worst_feasibility == doctest::Approx(0.5));

  DualPotentials missing = pot;
  missing.psi.erase(missing.psi.begin());  // support pair loses its potential
  CHECK(!check_dual_certificate(space, missing, plan).pass);
}

TEST_CASE("the KR witness bounds W1 from below and is validated") {
  const auto mu = dirac_q(kIntervalQ);
  const DiscreteMeasure nu(kIntervalQ, {{GroundPoint::interval(0.0), 0.5},
                                        {GroundPoint::interval(1.0), 0.5}});
  // f(q) = D, f = 0 on the base: 1-Lipschitz, and exact at the optimum
  const std::vector<std::pair<GroundPoint, double>> witness = {
      {GroundPoint::q(), 10.0},
      {GroundPoint::interval(0.0), 0.0},
      {GroundPoint::interval(1.0), 0.0}};
  const double bound = kr_lower_bound(witness, nu, mu);
  CHECK(bound == 10.0);
  CHECK(bound <= solve_exact(nu, mu, 1.0).distance + 1e-10);

  const std::vector<std::pair<GroundPoint, double>> steep = {
      {GroundPoint::interval(0.0), 0.0}, {GroundPoint::interval(1.0), 2.0}};
  const auto base_mu = DiscreteMeasure::dirac(GroundSpace::interval(), GroundPoint::interval(0.0));
  const auto base_nu = DiscreteMeasure::dirac(GroundSpace::interval(), GroundPoint::interval(1.0));
  CHECK(gen::thrown_code([&] { kr_lower_bound(steep, base_mu, base_nu); }) ==
        Errc::not_lipschitz);
  const std::vector<std::pair<GroundPoint, double>> partial = {
      {GroundPoint::interval(0.0), 0.0}};
  CHECK(gen::thrown_code([&] { kr_lower_bound(partial, base_mu, base_nu); }) ==
        Errc::invalid_argument);
}
