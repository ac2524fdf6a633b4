#include <doctest.h>

#include <random>

#include <Eigen/LU>

#include "chiral_tmm/errors.hpp"
#include "chiral_tmm/spectra.hpp"
#include "chiral_tmm/tmm.hpp"
#include "support.hpp"

using namespace chiral_tmm;

namespace {

constexpr double kF0 = 1e12;
const cplx kJ(0.0, 1.0);
const Vector2c kPar(1.0, 0.0);
const Vector2c kPerp(0.0, 1.0);

double lambda0() { return kSpeedOfLight / kF0; }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("matching identical media gives the identity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const MaterialParams m = testing::random_material(rng);
    const Matrix4c id = matching_matrix(m, m, kF0, deg_to_rad(37.0));
    CHECK((id - Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
  const Matrix4c air = matching_matrix(IncidenceAir{}, ExitAir{}, kF0, 0.4);
  CHECK((air - Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("matching round trip is the identity") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const MaterialParams a = testing::random_material(rng);
    const MaterialParams b = testing::random_material(rng);
    const double th = deg_to_rad(20.0);
    const Matrix4c prod = matching_matrix(a, b, kF0, th) * matching_matrix(b, a, kF0, th);
    CHECK((prod - Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("half-space reflection reproduces Fresnel") {
  // air onto n = 2.2 at normal incidence: |(1 - n)/(1 + n)|^2 = 0.140625
  const Matrix4c m = matching_matrix(IncidenceAir{}, MaterialParams::dielectric(2.2), kF0, 0.0);
  for (const Vector2c& inc : {kPar, kPerp}) {
    const Response r = solve_coefficients(m.leftCols<2>(), inc);
    CHECK(std::norm(r.r_co) == doctest::Approx(0.140625).epsilon(1e-14));
    CHECK(std::norm(r.r_cross) < 1e-28);
  }

  // Oblique TE and TM against the textbook forms.
  const double n = 1.7;
  const double th = deg_to_rad(50.0);
  const double ci = std::cos(th);
  const double ct = std::sqrt(1.0 - std::pow(std::sin(th) / n, 2));
  const double rs = (ci - n * ct) / (ci + n * ct);
  const double rp = (n * ci - ct) / (n * ci + ct);
  const Matrix4c mo = matching_matrix(IncidenceAir{}, MaterialParams::dielectric(n), kF0, th);
  CHECK(std::norm(solve_coefficients(mo.leftCols<2>(), kPerp).r_co) ==
        doctest::Approx(rs * rs).epsilon(1e-13));
  CHECK(std::norm(solve_coefficients(mo.leftCols<2>(), kPar).r_co) ==
        doctest::Approx(rp * rp).epsilon(1e-13));
}

TEST_CASE("zero thickness propagation is the identity") {
  const Layer l{MaterialParams{2.0, 1.5, 0.3}, 0.0};
  CHECK(propagation_matrix(l, kF0, 0.2) == Matrix4c::Identity());
}

TEST_CASE("propagation matrices are unimodular and mutually inverse") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Layer l{testing::random_material(rng), 5e-6};
    const Matrix4c p = propagation_matrix(l, 2e12, 0.5);
    const Matrix4c q = reverse_propagation_matrix(l, 2e12, 0.5);
    CHECK(std::abs(p.determinant() - 1.0) < 1e-12);
    CHECK((p * q - Matrix4c::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("lossless propagating layer has unit-modulus entries") {
  const Layer l{MaterialParams{2.0, 1.5, 0.3}, 17e-6};
  const Matrix4c p = propagation_matrix(l, kF0, deg_to_rad(25.0));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(std::abs(p(i, i)) - 1.0) < 1e-15);
}

TEST_CASE("quarter-wave dielectric advances forward waves by -j") {
  const Layer l{MaterialParams::dielectric(2.2), lambda0() / (4.0 * 2.2)};
  const Matrix4c p = propagation_matrix(l, kF0, 0.0);
  CHECK(std::abs(p(0, 0) + kJ) < 1e-15);
  CHECK(std::abs(p(1, 1) + kJ) < 1e-15);
  CHECK(std::abs(p(3, 3) - kJ) < 1e-15);
}

TEST_CASE("quarter-wave air layer advances forward waves by -j") {
  const Layer l{MaterialParams::air(), lambda0() / 4.0};
  const Matrix4c p = propagation_matrix(l, kF0, 0.0);
  CHECK(std::abs(p(0, 0) + kJ) < 1e-15);
  CHECK(std::abs(p(1, 1) + kJ) < 1e-15);
  CHECK(std::abs(p(2, 2) - kJ) < 1e-15);
}

TEST_CASE("evanescent overflow is reported") {
  // CN slab at 60 deg: |k_z| ~ k0 sin(60) = 1.8e4 /m, so 5 cm gives |Im(k_z d)| ~ 900.
  const Layer l{MaterialParams{1.6e-4, 1e-5, 0.1}, 5e-2};
  CHECK(kind_of([&] { propagation_matrix(l, kF0, deg_to_rad(60.0)); }) ==
        ErrorKind::EvanescentOverflow);
  CHECK(kind_of([&] { evaluate_cascade(Stack({l}), kF0, deg_to_rad(60.0), kPar); }) ==
        ErrorKind::EvanescentOverflow);
}

TEST_CASE("air-only stack transmits everything") {
  const Matrix4x2c t = assemble_transfer(Stack::air_only(), kF0, 0.3);
  CHECK((t.topRows<2>() - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(t.bottomRows<2>().cwiseAbs().maxCoeff() < 1e-15);
  const Response r = evaluate_cascade(Stack::air_only(), kF0, 0.3, kPerp);
  CHECK(std::abs(r.t_co - 1.0) < 1e-15);
  CHECK(std::abs(r.r_co) < 1e-15);
}

TEST_CASE("periodic product matches the general product") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const Layer a{testing::random_material(rng), 8e-6};
    const Layer b{testing::random_material(rng), 12e-6};
    const int count = 1 + 2 * (i % 4);
    const Stack periodic = Stack::periodic(a, b, count);
    const Stack general(periodic.layers());
    REQUIRE(periodic.periodic_spec().has_value());
    REQUIRE_FALSE(general.periodic_spec().has_value());
    const double f = 0.5e12 + 0.03e12 * i;
    const double th = deg_to_rad(i % 80);
    Matrix4x2c tp, tg;
    try {
      tp = assemble_transfer(periodic, f, th);
      tg = assemble_transfer(general, f, th);
    } catch (const Error&) {
      continue;  // evanescent overflow is legitimate for some draws
    }
    const double scale = tg.cwiseAbs().maxCoeff();
    CAPTURE(i);
    CHECK((tp - tg).cwiseAbs().maxCoeff() / scale < 1e-12);
  }
}

TEST_CASE("half-wave dielectric slab is transparent") {
  const double n = 2.2;
  const Stack s({Layer{MaterialParams::dielectric(n), lambda0() / (2.0 * n)}});
  const Response r = evaluate_cascade(s, kF0, 0.0, kPar);
  CHECK(std::abs(r.r_co) < 1e-13);
  CHECK(std::abs(std::abs(r.t_co) - 1.0) < 1e-13);
}

TEST_CASE("achiral slab agrees with the Airy formula") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    MaterialParams m = testing::random_material(rng);
    m.kappa = 0.0;
    const double d = testing::log_uniform(rng, 1e-6, 50e-6);
    const double f = testing::log_uniform(rng, 0.1e12, 4e12);
    const auto [r_ref, t_ref] =
        testing::airy_slab(m.refractive_index(), std::sqrt(m.mu_r / m.eps_r), d, f);
    const Response r = evaluate_cascade(Stack({Layer{m, d}}), f, 0.0, kPar);
    CAPTURE(i);
    CHECK(std::abs(r.r_co - r_ref) < 1e-10);
    CHECK(std::abs(r.t_co - t_ref) < 1e-10);
    CHECK(std::abs(r.r_cross) < 1e-12);
    CHECK(std::abs(r.t_cross) < 1e-12);
  }
}

TEST_CASE("vanishing chirality produces no cross-polarized waves") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    testing::RandomScenario sc = testing::random_scenario(rng);
    std::vector<Layer> layers = sc.stack.layers();
    for (Layer& l : layers) l.material.kappa = 0.0;
    const Stack s(std::move(layers));
    for (const Vector2c& inc : {kPar, kPerp}) {
      Response r;
      try {
        r = evaluate_cascade(s, sc.freq_hz, deg_to_rad(sc.theta_deg), inc);
      } catch (const Error&) {
        continue;
      }
      CAPTURE(i);
      CHECK(std::norm(r.r_cross) < 1e-24);
      CHECK(std::norm(r.t_cross) < 1e-24);
    }
  }
}

TEST_CASE("property: lossless stacks conserve power") {
  std::mt19937_64 rng(47);
  int evaluated = 0;
  for (int i = 0; i < 300; ++i) {
    const testing::RandomScenario sc = testing::random_scenario(rng);
    try {
      const Response r =
          evaluate_cascade(sc.stack, sc.freq_hz, deg_to_rad(sc.theta_deg), Vector2c(0.6, 0.8));
      CAPTURE(i);
      CHECK(powers(r).conservation_residual < 1e-10);
      ++evaluated;
    } catch (const Error&) {
    }
  }
  CHECK(evaluated > 250);
}

TEST_CASE("property: reversing a lossless stack keeps the transmitted power") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const testing::RandomScenario sc = testing::random_scenario(rng);
    const double th = deg_to_rad(sc.theta_deg);
    // Sum over two orthogonal inputs is the squared Frobenius norm of the
    // transmission matrix; unitarity makes it the same from either side.
    double fwd = 0.0;
    double rev = 0.0;
    try {
      for (const Vector2c& inc : {kPar, kPerp}) {
        fwd += powers(evaluate_cascade(sc.stack, sc.freq_hz, th, inc)).t_total;
        rev += powers(evaluate_cascade(sc.stack.reversed(), sc.freq_hz, th, inc)).t_total;
      }
    } catch (const Error&) {
      continue;
    }
    CAPTURE(i);
    CHECK(std::abs(fwd - rev) < 1e-9);
  }
}

TEST_CASE("stack invariants") {
  const Layer a{MaterialParams{1.6e-4, 1e-5, 0.1}, 75e-6};
  const Layer b{MaterialParams::dielectric(2.2), 34e-6};
  const Stack s = Stack::periodic(a, b, 7);
  CHECK(s.size() == 7);
  CHECK(s.periodic_spec()->periods == 3);
  CHECK(s.layers().front().material == a.material);
  CHECK(s.layers()[1].material == b.material);
  CHECK(s.layers().back().material == a.material);
  CHECK(Stack::air_only().empty());
  CHECK_THROWS_AS(Stack(std::vector<Layer>{}), Error);
  CHECK_THROWS_WITH_AS(Stack::periodic(a, b, 4), "periodic stack must have odd slab count", Error);
  CHECK_THROWS_AS(Stack::periodic(a, b, -1), Error);
  CHECK_THROWS_AS(Stack({Layer{a.material, 0.0}}), Error);
  CHECK_THROWS_AS(Stack({Layer{a.material, -1e-6}}), Error);

  const Stack g({a, b, b});
  const Stack r = g.reversed();
  CHECK(r.layers()[0].material == b.material);
  CHECK(r.layers()[2].material == a.material);
}

TEST_CASE("near-singular transmission block is reported") {
  Matrix4x2c t = Matrix4x2c::Zero();
  t.topRows<2>() << 1.0, 1.0, 1.0, 1.0 + 1e-14;
  CHECK(kind_of([&] { solve_coefficients(t, kPar); }) == ErrorKind::ResonanceSingularity);
}

TEST_CASE("degenerate eigenwaves at an interface are reported") {
  // k_L within rounding of zero: the two LCP columns become parallel, and
  // inverting that medium's field matrix fails.
  const MaterialParams m{0.25, 1.0, 0.5 * (1.0 - 1e-15)};
  CHECK_NOTHROW(matching_matrix(IncidenceAir{}, m, kF0, deg_to_rad(30.0)));
  CHECK(kind_of([&] { matching_matrix(m, ExitAir{}, kF0, deg_to_rad(30.0)); }) ==
        ErrorKind::SingularInterface);
}
