#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qgeo/eig.hpp"
#include "qgeo/errors.hpp"
#include "qgeo/matrix.hpp"
#include "qgeo/resolution.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/sic.hpp"
#include "qgeo/states.hpp"

using namespace qgeo;

namespace {

CVector random_ray(std::size_t d, Rng& rng) {
  CVector v(d);
  for (auto& x : v) x = rng.complex_gaussian();
  return normalized(v);
}

std::array<double, 3> bloch_of(const ComplexMatrix& q) {
  return {2.0 * q(0, 1).real(), -2.0 * q(0, 1).imag(),
          (q(0, 0) - q(1, 1)).real()};
}

}  // namespace

TEST_CASE("wh_displacements d=2 are the Pauli products") {
  const auto disp = wh_displacements(2);
  REQUIRE(disp.size() == 4);

  ComplexMatrix x(2, 2), z(2, 2), xz(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  xz(0, 1) = -1.0;
  xz(1, 0) = 1.0;

  CHECK(hs_distance(disp[0], ComplexMatrix::identity(2)) < 1e-15);
  CHECK(hs_distance(disp[1], z) < 1e-15);
  CHECK(hs_distance(disp[2], x) < 1e-15);
  CHECK(hs_distance(disp[3], xz) < 1e-15);
}

TEST_CASE("wh_displacements are unitary") {
  for (std::size_t d : {2, 3, 4, 5}) {
    const auto disp = wh_displacements(d);
    REQUIRE(disp.size() == d * d);
    for (const auto& u : disp)
      CHECK(hs_distance(u.adjoint() * u, ComplexMatrix::identity(d)) < 1e-12);
  }
  CHECK_THROWS_WITH_AS(wh_displacements(1), doctest::Contains("dimension"),
                       Error);
}

TEST_CASE("wh_displacements traces vanish away from the identity (prime d)") {
  for (std::size_t d : {2, 3, 5}) {
    const auto disp = wh_displacements(d);
    CHECK(std::abs(disp[0].trace() - cplx(static_cast<double>(d))) < 1e-12);
    for (std::size_t k = 1; k < disp.size(); ++k)
      CHECK(std::abs(disp[k].trace()) < 1e-12);
  }
}

TEST_CASE("builtin fiducials generate symmetric resolutions") {
  for (std::size_t d : {2, 3}) {
    const Fiducial f = builtin_fiducial(d);
    CHECK(f.dim == d);
    CHECK(f.provenance == "builtin");
    CHECK(f.residual < 1e-12);
    CHECK(std::abs(vec_norm(f.vector) - 1.0) < 1e-12);

    const RayResolution sic = sic_from_fiducial(f);
    REQUIRE(sic.size() == d * d);
    CHECK(sic.kind() == ResolutionKind::nrri);
    for (const auto& o : sic.outcomes())
      CHECK(o.weight == doctest::Approx(1.0 / static_cast<double>(d))
                            .epsilon(1e-14));

    const SicReport report = verify_sic(sic);
    CHECK(report.dim == d);
    CHECK(report.max_deviation < 1e-12);
    CHECK(report.completeness_residual < 1e-12);
  }
}

TEST_CASE("builtin d=2 fiducial has the documented components") {
  const Fiducial f = builtin_fiducial(2);
  CHECK(std::abs(f.vector[0] - cplx(0.8880738339771153)) < 1e-12);
  CHECK(std::abs(std::abs(f.vector[1]) - 0.4597008433809831) < 1e-12);
  CHECK(std::arg(f.vector[1]) ==
        doctest::Approx(std::acos(-1.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("builtin d=3 fiducial is (0, 1, -1)/sqrt(2)") {
  const Fiducial f = builtin_fiducial(3);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(f.vector[0]) < 1e-15);
  CHECK(std::abs(f.vector[1] - cplx(s)) < 1e-15);
  CHECK(std::abs(f.vector[2] + cplx(s)) < 1e-15);
}

TEST_CASE("d=2 SIC projectors form a regular Bloch tetrahedron") {
  const RayResolution sic = sic_from_fiducial(builtin_fiducial(2));
  std::vector<std::array<double, 3>> b;
  for (const auto& o : sic.outcomes()) b.push_back(bloch_of(o.projector.matrix()));
  for (std::size_t k = 0; k < 4; ++k) {
    const double n2 = b[k][0] * b[k][0] + b[k][1] * b[k][1] + b[k][2] * b[k][2];
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t r = k + 1; r < 4; ++r) {
      const double dot =
          b[k][0] * b[r][0] + b[k][1] * b[r][1] + b[k][2] * b[r][2];
      CHECK(dot == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("no builtin fiducial outside d=2,3") {
  CHECK_THROWS_WITH_AS(builtin_fiducial(4), doctest::Contains("no-builtin"),
                       Error);
  CHECK_THROWS_WITH_AS(builtin_fiducial(17), doctest::Contains("no-builtin"),
                       Error);
}

TEST_CASE("a generic vector is far from fiducial quality") {
  Rng rng(101);
  for (std::size_t d : {2, 3}) {
    const Fiducial f{d, random_ray(d, rng), "optimized", 0.0};
    // the orbit of any normalized vector resolves the identity, so the
    // failure shows up in the overlap deviations, not completeness
    const RayResolution orbit = sic_from_fiducial(f);
    const SicReport report = verify_sic(orbit);
    CHECK(report.completeness_residual < 1e-12);
    CHECK(report.max_deviation > 1e-3);
  }
}

TEST_CASE("verify_sic requires d^2 outcomes") {
  const RayResolution z =
      orri_from_vectors({CVector{1.0, 0.0}, CVector{0.0, 1.0}});
  CHECK_THROWS_WITH_AS(verify_sic(z), doctest::Contains("wrong-count"), Error);
}

TEST_CASE("perturbing the fiducial degrades the overlaps proportionally") {
  Rng rng(103);
  const Fiducial base = builtin_fiducial(2);
  CVector noisy = base.vector;
  for (auto& x : noisy) x += 1e-3 * rng.complex_gaussian();
  const Fiducial f{2, normalized(noisy), "optimized", 0.0};
  const SicReport report = verify_sic(sic_from_fiducial(f));
  CHECK(report.max_deviation > 1e-7);
  CHECK(report.max_deviation < 1e-1);
  CHECK(report.completeness_residual < 1e-12);
}

TEST_CASE("find_fiducial rediscovers the d=2 and d=3 solutions") {
  for (std::size_t d : {2, 3}) {
    const Fiducial f = find_fiducial(d, 20260101);
    CHECK(f.dim == d);
    CHECK(f.provenance == "optimized");
    CHECK(f.residual < 1e-10);
    const SicReport report = verify_sic(sic_from_fiducial(f));
    CHECK(report.max_deviation < 1e-6);
    CHECK(report.max_deviation < 1e-9);
  }
}

TEST_CASE("find_fiducial is deterministic for a fixed seed") {
  const Fiducial a = find_fiducial(2, 555);
  const Fiducial b = find_fiducial(2, 555);
  REQUIRE(a.vector.size() == b.vector.size());
  for (std::size_t i = 0; i < a.vector.size(); ++i)
    CHECK(a.vector[i] == b.vector[i]);
  CHECK(a.residual == b.residual);
}

TEST_CASE("find_fiducial rejects out-of-range dimensions") {
  CHECK_THROWS_WITH_AS(find_fiducial(1, 1), doctest::Contains("dimension"),
                       Error);
  CHECK_THROWS_WITH_AS(find_fiducial(7, 1), doctest::Contains("dimension"),
                       Error);
}

TEST_CASE("the objective vanishes at a true fiducial") {
  const Fiducial f = builtin_fiducial(2);
  CHECK(sic_objective(f.vector, wh_displacements(2)) < 1e-20);
  const Fiducial g = builtin_fiducial(3);
  CHECK(sic_objective(g.vector, wh_displacements(3)) < 1e-20);
}

TEST_CASE("contract_sic fixed point and pure-state spectrum") {
  const DensityMatrix wo = maximally_mixed(2);
  CHECK(hs_distance(contract_sic(wo).matrix(), wo.matrix()) < 1e-14);

  Rng rng(107);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix p(random_pure(2, rng).matrix());
    const auto eigs = eigh(contract_sic(p).matrix()).eigenvalues;
    CHECK(eigs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("stretch inverts contract exactly") {
  Rng rng(109);
  for (std::size_t d : {2, 3, 4}) {
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix w = random_density_hs(d, rng);
      const ComplexMatrix back = stretch_sic(contract_sic(w).matrix());
      CHECK(hs_distance(back, w.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("the channel contracts pairwise distances by exactly 1/(d+1)") {
  Rng rng(113);
  for (std::size_t d : {2, 3}) {
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix w1 = random_density_hs(d, rng);
      const DensityMatrix w2 = random_density_hs(d, rng);
      const double before = hs_distance(w1.matrix(), w2.matrix());
      const double after =
          hs_distance(contract_sic(w1).matrix(), contract_sic(w2).matrix());
      CHECK(after / before ==
            doctest::Approx(1.0 / static_cast<double>(d + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("stretch_sic validates its input") {
  ComplexMatrix bad(2, 2);
  bad(0, 0) = 0.45;
  bad(1, 1) = 0.45;
  CHECK_THROWS_WITH_AS(stretch_sic(bad), doctest::Contains("trace"), Error);
  ComplexMatrix nh(2, 2);
  nh(0, 0) = 1.0;
  nh(0, 1) = 1.0;
  CHECK_THROWS_WITH_AS(stretch_sic(nh), doctest::Contains("not-hermitian"),
                       Error);
}

TEST_CASE("contract_sic agrees with the SIC channel everywhere") {
  Rng rng(127);
  for (std::size_t d : {2, 3}) {
    const RayResolution sic = sic_from_fiducial(builtin_fiducial(d));
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
      const DensityMatrix w = random_density_hs(d, rng);
      worst = std::max(worst, hs_distance(apply_channel(sic, w).matrix(),
                                          contract_sic(w).matrix()));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("in_v_am_sic: mixed enough states are reachable, pure ones are not") {
  CHECK(in_v_am_sic(maximally_mixed(2)));
  CHECK(in_v_am_sic(maximally_mixed(3)));

  Rng rng(131);
  for (std::size_t d : {2, 3}) {
    for (int rep = 0; rep < 20; ++rep) {
      CHECK_FALSE(in_v_am_sic(DensityMatrix(random_pure(d, rng).matrix())));
      CHECK(in_v_am_sic(contract_sic(random_density_hs(d, rng))));
    }
  }

  // stretch of a d=2 pure state has eigenvalues (2, -1)
  const DensityMatrix p(random_pure(2, rng).matrix());
  const auto eigs = eigh(stretch_sic(p.matrix())).eigenvalues;
  CHECK(eigs[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("contracted states fill a ball of known outsphere radius") {
  Rng rng(137);
  for (std::size_t d : {2, 3, 4}) {
    const DensityMatrix wo = maximally_mixed(d);
    const double bound = std::sqrt((d - 1.0) / static_cast<double>(d)) /
                         static_cast<double>(d + 1);
    for (int rep = 0; rep < 25; ++rep) {
      // pure states sit exactly on the outsphere
      const DensityMatrix p(random_pure(d, rng).matrix());
      const double rp = hs_distance(contract_sic(p).matrix(), wo.matrix());
      CHECK(rp == doctest::Approx(bound).epsilon(1e-12));

      // a strict mixture sits strictly inside
      ComplexMatrix mixed = p.matrix();
      mixed *= 0.9;
      ComplexMatrix rest = wo.matrix();
      rest *= 0.1;
      mixed += rest;
      const double rm =
          hs_distance(contract_sic(DensityMatrix(mixed)).matrix(), wo.matrix());
      CHECK(rm == doctest::Approx(0.9 * bound).epsilon(1e-12));
      CHECK(rm < bound - 1e-3);
    }
  }
}

TEST_CASE("contracted states are nonsingular") {
  Rng rng(139);
  for (std::size_t d : {2, 3, 4}) {
    const double floor = 1.0 / static_cast<double>(d + 1);
    for (int rep = 0; rep < 50; ++rep) {
      const DensityMatrix w = rep % 2 == 0
                                  ? random_density_hs(d, rng)
                                  : DensityMatrix(random_pure(d, rng).matrix());
      CHECK(min_eigenvalue(contract_sic(w).matrix()) >= floor - 1e-12);
    }
  }
}

TEST_CASE("the SIC orbit is covariant under displacements") {
  for (std::size_t d : {2, 3}) {
    const Fiducial f = builtin_fiducial(d);
    const auto disp = wh_displacements(d);
    const RayResolution base = sic_from_fiducial(f);

    for (const auto& g : disp) {
      const Fiducial shifted{d, normalized(matvec(g, f.vector)), "optimized",
                             f.residual};
      const RayResolution moved = sic_from_fiducial(shifted);
      // same projector set, possibly in a different order
      std::vector<bool> used(base.size(), false);
      for (std::size_t k = 0; k < moved.size(); ++k) {
        bool matched = false;
        for (std::size_t r = 0; r < base.size(); ++r) {
          if (used[r]) continue;
          if (hs_distance(moved.projector(k).matrix(),
                          base.projector(r).matrix()) < 1e-10) {
            used[r] = true;
            matched = true;
            break;
          }
        }
        CHECK(matched);
      }
    }
  }
}
