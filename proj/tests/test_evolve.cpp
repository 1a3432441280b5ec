#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gradtc/diagnostics.hpp"
#include "gradtc/evolve.hpp"
#include "gradtc/kernels.hpp"
#include "gradtc/models.hpp"
#include "gradtc/units.hpp"
#include "test_util.hpp"

using namespace gradtc;

namespace {

ModelSpec make_spec(int sites, double j, double b0, double g, double width = 0.0) {
  ModelSpec spec;
  spec.sites = sites;
  spec.exchange_mhz = j;
  spec.base_field_mhz = b0;
  spec.gradient_mhz = g;
  spec.disorder_width_mhz = width;
  return spec;
}

double unitarity_gap(const DenseOperator& u) {
  return (u.adjoint() * u).matrix().max_abs_diff(ComplexMatrix::identity(u.dimension()));
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::abs(kernels::dot_conj(a.amplitudes().data(), b.amplitudes().data(),
                                    a.dimension()));
}

} // namespace

TEST_CASE("static_propagator") {
  SUBCASE("t = 0 is the identity") {
    const auto spec = make_spec(2, 3.0, 10.0, 5.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    CHECK(static_propagator(h, 0.0).matrix().max_abs_diff(ComplexMatrix::identity(4)) < 1e-12);
  }
  SUBCASE("unit-convention anchor: B = 10 MHz winds 2 pi in 100 ns") {
    const SpinBasis basis(1);
    const auto h = pauli_string(basis, {{1, PauliAxis::Z}}).scaled(5.0);  // (B/2) sigma^z
    const auto u = static_propagator(h, 100.0);
    // diag(e^{-i pi}, e^{+i pi}) = -I
    CHECK(u.matrix().max_abs_diff(ComplexMatrix::identity(2) * cplx(-1.0, 0.0)) < 1e-10);
  }
  SUBCASE("two-site flip-flop: |up down> returns after the 250 ns swap period") {
    // independent oracle: |up down> and |down up> form a two-level system
    // split by J, so the return time is 1e3/J ns times (J=4) -> 250 ns
    const auto spec = make_spec(2, 4.0, 0.0, 0.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    const SpinBasis basis(2);
    const auto ud = StateVector::basis_state(basis, basis.flipped(0, 2));
    const auto u = static_propagator(h, 250.0);
    StateVector evolved(basis, u.matrix().apply(ud.amplitudes()));
    CHECK(fidelity(evolved, ud) == doctest::Approx(1.0).epsilon(1e-9));
    // and it is swapped at half that time
    const auto half = static_propagator(h, 125.0);
    StateVector swapped(basis, half.matrix().apply(ud.amplitudes()));
    const auto du = StateVector::basis_state(basis, basis.flipped(0, 1));
    CHECK(fidelity(swapped, du) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("group property and unitarity") {
    const auto spec = make_spec(3, 2.0, 30.0, 8.0, 2.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 5, 0));
    const auto u1 = static_propagator(h, 37.0);
    const auto u2 = static_propagator(h, 63.0);
    const auto u12 = static_propagator(h, 100.0);
    CHECK((u1 * u2).matrix().max_abs_diff(u12.matrix()) < 1e-9);
    CHECK(unitarity_gap(u1) < 1e-9);
    CHECK(unitarity_gap(u12) < 1e-9);
  }
  SUBCASE("non-Hermitian input is rejected") {
    const SpinBasis basis(1);
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(static_propagator(DenseOperator(basis, std::move(m)), 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("floquet_operator_delta") {
  SUBCASE("epsilon = pi/2 removes the pulse") {
    const auto spec = make_spec(2, 1.0, 20.0, 4.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    const auto u = floquet_operator_delta(h, std::numbers::pi / 2.0, 100.0);
    CHECK(u.matrix().max_abs_diff(static_propagator(h, 100.0).matrix()) < 1e-12);
  }
  SUBCASE("exact dynamical decoupling at epsilon = 0 over two periods") {
    // for diagonal H_I, U(2T) = (-1)^L exp(-i (J T/2) sum sigma^z sigma^z)
    const auto spec = make_spec(3, 7.0, 90.0, 13.0, 3.0);
    const auto fields = sample_fields(spec, 17, 0);
    const auto h_ising = build_ising(spec, fields);
    const auto u_t = floquet_operator_delta(h_ising, 0.0, 100.0);
    const auto u_2t = u_t * u_t;
    const SpinBasis basis(3);
    auto zz = DenseOperator::zero(basis);
    for (int j = 1; j < 3; ++j)
      zz = zz + pauli_string(basis, {{j, PauliAxis::Z}, {j + 1, PauliAxis::Z}});
    const auto expected =
        static_propagator(zz.scaled(spec.exchange_mhz / 2.0), 100.0).scaled(std::pow(-1.0, 3));
    CHECK(u_2t.matrix().max_abs_diff(expected.matrix()) < 1e-9);
  }
  SUBCASE("end spin survives 400 periods at mid-DTC parameters") {
    // typical disorder realization; the clean chain sits closer to the
    // four-site resonance and dips further
    const auto spec = make_spec(4, 2.5, 5000.0, 600.0, 9.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 42, 1));
    const auto u = floquet_operator_delta(h, 0.1, 100.0);
    const auto traj =
        evolve_stroboscopic(u, 100.0, initial_state(h.basis(), "neel"), 400, 2);
    for (const auto& sample : traj.sz) CHECK(sample[0] > 0.9);
  }
  SUBCASE("unitary for generic parameters") {
    const auto spec = make_spec(3, 2.5, 100.0, 60.0, 9.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 23, 1));
    CHECK(unitarity_gap(floquet_operator_delta(h, 0.17, 80.0)) < 1e-9);
  }
}

TEST_CASE("evolve_stroboscopic") {
  const auto spec = make_spec(2, 1.0, 10.0, 3.0);
  const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
  const auto psi0 = initial_state(h.basis(), "neel");
  SUBCASE("zero periods yields the single initial sample") {
    const auto u = floquet_operator_delta(h, 0.1, 50.0);
    const auto traj = evolve_stroboscopic(u, 50.0, psi0, 0, 2);
    REQUIRE(traj.times_ns.size() == 1);
    CHECK(traj.times_ns[0] == 0.0);
    CHECK(traj.sz[0][0] == doctest::Approx(1.0));
    CHECK(traj.sz[0][1] == doctest::Approx(-1.0));
  }
  SUBCASE("identity propagator keeps the trajectory constant") {
    const auto u = DenseOperator::identity(h.basis());
    const auto traj = evolve_stroboscopic(u, 25.0, psi0, 10, 2);
    REQUIRE(traj.times_ns.size() == 6);
    for (const auto& sample : traj.sz) {
      CHECK(sample[0] == doctest::Approx(1.0));
      CHECK(sample[1] == doctest::Approx(-1.0));
    }
    CHECK(traj.times_ns[5] == doctest::Approx(250.0));
  }
  SUBCASE("sample_every must divide n_periods") {
    const auto u = DenseOperator::identity(h.basis());
    CHECK_THROWS_AS(evolve_stroboscopic(u, 25.0, psi0, 11, 2), std::invalid_argument);
  }
}

TEST_CASE("floquet_eigenstates") {
  SUBCASE("identity has all eigenvalues 1") {
    const SpinBasis basis(2);
    const auto fs = floquet_eigenstates(DenseOperator::identity(basis));
    for (const auto& v : fs.eigenvalues) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-12);
    for (double qe : fs.quasi_energies) CHECK(std::abs(qe) < 1e-12);
  }
  SUBCASE("pi rotation has eigenvalues -i and +i on x eigenstates") {
    const SpinBasis basis(1);
    const auto fs = floquet_eigenstates(global_rotation_x(basis, std::numbers::pi));
    REQUIRE(fs.eigenvalues.size() == 2);
    const bool has_minus_i =
        std::abs(fs.eigenvalues[0] - cplx(0.0, -1.0)) < 1e-10 ||
        std::abs(fs.eigenvalues[1] - cplx(0.0, -1.0)) < 1e-10;
    const bool has_plus_i =
        std::abs(fs.eigenvalues[0] - cplx(0.0, 1.0)) < 1e-10 ||
        std::abs(fs.eigenvalues[1] - cplx(0.0, 1.0)) < 1e-10;
    CHECK(has_minus_i);
    CHECK(has_plus_i);
    for (const auto& state : fs.eigenstates) {
      // x eigenstates have equal weight on up and down
      CHECK(std::abs(state.amplitudes()[0]) == doctest::Approx(1.0 / std::sqrt(2.0)));
      CHECK(std::abs(state.amplitudes()[1]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
  }
  SUBCASE("eigenvectors are orthonormal and reproduce the unitary") {
    const auto spec = make_spec(3, 2.5, 80.0, 40.0, 9.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 3, 0));
    const auto u = floquet_operator_delta(h, 0.1, 100.0);
    const auto fs = floquet_eigenstates(u);
    for (std::size_t a = 0; a < fs.eigenstates.size(); ++a)
      for (std::size_t b = 0; b < fs.eigenstates.size(); ++b) {
        const cplx ip = kernels::dot_conj(fs.eigenstates[a].amplitudes().data(),
                                          fs.eigenstates[b].amplitudes().data(), 8);
        CHECK(std::abs(ip - (a == b ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) < 1e-8);
      }
  }
  SUBCASE("deep-DTC eigenstates pair a bit-string with its global flip") {
    const auto spec = make_spec(4, 2.0, 5000.0, 300.0);  // g/J = 150
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    const auto u = floquet_operator_delta(h, 0.05, 100.0);
    const auto fs = floquet_eigenstates(u);
    const std::size_t dim = 16;
    for (const auto& state : fs.eigenstates) {
      std::size_t peak = 0;
      double best = 0.0;
      for (std::size_t b = 0; b < dim; ++b) {
        const double w = std::norm(state.amplitudes()[b]);
        if (w > best) {
          best = w;
          peak = b;
        }
      }
      const std::size_t flipped = ~peak & (dim - 1);
      const double partner = std::norm(state.amplitudes()[flipped]);
      const double ratio = partner / best;
      CHECK(ratio > 0.3);
      CHECK(ratio < 3.0);
    }
  }
}

TEST_CASE("evolve_edsr") {
  SUBCASE("single-spin resonant pulse flips the spin (Rabi oracle)") {
    // rotating-frame closed form: a resonant pulse of area pi - 2 eps
    // leaves <sigma^z> = cos(pi - 2 eps); beyond-RWA corrections are
    // controlled by the 0.01 tolerance at B0 = 1000 MHz
    const SpinBasis basis(1);
    const double b0 = 1000.0;
    const auto h = pauli_string(basis, {{1, PauliAxis::Z}}).scaled(b0 / 2.0);
    auto spec = make_spec(1, 0.0, b0, 0.0);
    const auto up = StateVector::basis_state(basis, 0);

    EdsrDrive drive{0.0, 100.0, 0.1};
    auto traj = evolve_edsr(h, spec, drive, up, 1);
    CHECK(traj.sz.back()[0] == doctest::Approx(-1.0).epsilon(0.01));

    EdsrDrive partial{0.3, 100.0, 0.1};
    traj = evolve_edsr(h, spec, partial, up, 1);
    CHECK(std::abs(traj.sz.back()[0] - std::cos(std::numbers::pi - 0.6)) < 0.02);
  }
  SUBCASE("epsilon = pi/2 has zero amplitude and matches free evolution") {
    const auto spec = make_spec(2, 2.0, 500.0, 100.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    const auto psi0 = initial_state(h.basis(), "neel");
    EdsrDrive drive{std::numbers::pi / 2.0, 100.0, 0.1};
    const auto traj = evolve_edsr(h, spec, drive, psi0, 3);
    const auto free_states = evolve_static_samples(h, psi0, std::vector<double>{300.0});
    const auto sz_free = sz_expectations(free_states[0]);
    CHECK(std::abs(traj.sz.back()[0] - sz_free[0]) < 1e-9);
    CHECK(std::abs(traj.sz.back()[1] - sz_free[1]) < 1e-9);
  }
  SUBCASE("halving the step changes the final-state fidelity by < 1e-6") {
    const auto spec = make_spec(2, 2.5, 300.0, 100.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 1, 0));
    const auto psi0 = initial_state(h.basis(), "neel");
    EdsrDrive drive{0.1, 100.0, 0.1};
    const auto coarse = evolve_edsr(h, spec, drive, psi0, 1, 1, 40);
    const auto fine = evolve_edsr(h, spec, drive, psi0, 1, 1, 80);
    CHECK(1.0 - fidelity(coarse.snapshots.back(), fine.snapshots.back()) < 1e-6);
  }
  SUBCASE("delta-pulse limit: small duty and large B0 track the delta diagram") {
    // three (epsilon, J) points; time-averaged end-spin projection within
    // 0.15 of the delta-drive value
    const struct {
      double epsilon, j;
    } points[] = {{0.05, 2.5}, {0.1, 4.0}, {0.2, 7.0}};
    for (const auto& pt : points) {
      auto spec = make_spec(3, pt.j, 2000.0, 600.0);
      const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
      const auto psi0 = initial_state(h.basis(), "neel");
      const std::size_t periods = 100;

      const auto u = floquet_operator_delta(h, pt.epsilon, 100.0);
      const auto delta_traj = evolve_stroboscopic(u, 100.0, psi0, periods, 2);
      EdsrDrive drive{pt.epsilon, 100.0, 0.05};
      const auto edsr_traj = evolve_edsr(h, spec, drive, psi0, periods, 2);

      auto avg_sz1 = [](const Trajectory& t) {
        double acc = 0.0;
        for (const auto& s : t.sz) acc += s[0];
        return acc / static_cast<double>(t.sz.size());
      };
      CHECK(std::abs(avg_sz1(delta_traj) - avg_sz1(edsr_traj)) < 0.15);
    }
  }
  SUBCASE("nonpositive carrier frequency is rejected") {
    const auto spec = make_spec(2, 1.0, 0.0, 0.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    EdsrDrive drive{0.1, 100.0, 0.1};
    CHECK_THROWS_AS(evolve_edsr(h, spec, drive, initial_state(h.basis(), "neel"), 1),
                    std::invalid_argument);
  }
}

TEST_CASE("evolve_square_drive") {
  SUBCASE("zero amplitude conserves energy") {
    const auto spec = make_spec(3, 3.0, 50.0, 10.0, 2.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 9, 0));
    const auto psi0 = initial_state(h.basis(), "neel");
    SquareDrive drive{0.0, 200.0, 0.5};
    const auto traj = evolve_square_drive(h, drive, psi0, 50);
    for (double e : traj.energy_mhz)
      CHECK(e == doctest::Approx(traj.energy_mhz.front()).epsilon(1e-9));
  }
  SUBCASE("eigenstate stays put without a drive") {
    const auto spec = make_spec(2, 2.0, 30.0, 5.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    const auto psi0 = initial_state(h.basis(), "ground", &h);
    SquareDrive drive{0.0, 100.0, 0.3};
    const auto traj = evolve_square_drive(h, drive, psi0, 20);
    for (const auto& s : traj.sz) {
      CHECK(s[0] == doctest::Approx(traj.sz.front()[0]).epsilon(1e-9));
      CHECK(s[1] == doctest::Approx(traj.sz.front()[1]).epsilon(1e-9));
    }
  }
}

TEST_CASE("trajectory norms stay clamped to 1") {
  const auto spec = make_spec(3, 2.5, 100.0, 60.0, 9.0);
  const auto h = build_heisenberg(spec, sample_fields(spec, 2, 0));
  const auto u = floquet_operator_delta(h, 0.1, 100.0);
  const auto psi0 = initial_state(h.basis(), "neel");
  const auto traj = evolve_stroboscopic(u, 100.0, psi0, 2000, 2);
  for (const auto& s : traj.sz)
    for (double v : s) CHECK(std::abs(v) <= 1.0 + 1e-9);
}
