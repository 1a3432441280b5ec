#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gradtc/errors.hpp"
#include "gradtc/linalg.hpp"
#include "gradtc/models.hpp"
#include "gradtc/rng.hpp"

using namespace gradtc;

namespace {

ModelSpec make_spec(int sites, double j, double b0, double g, double width,
                    DisorderLaw law = DisorderLaw::Gaussian) {
  ModelSpec spec;
  spec.sites = sites;
  spec.exchange_mhz = j;
  spec.base_field_mhz = b0;
  spec.gradient_mhz = g;
  spec.disorder_width_mhz = width;
  spec.disorder_law = law;
  return spec;
}

} // namespace

TEST_CASE("sample_fields") {
  SUBCASE("zero disorder gives the exact field ladder") {
    const auto spec = make_spec(3, 1.0, 100.0, 10.0, 0.0);
    const auto f = sample_fields(spec, 42, 0);
    CHECK(f.field_mhz[0] == doctest::Approx(100.0));
    CHECK(f.field_mhz[1] == doctest::Approx(110.0));
    CHECK(f.field_mhz[2] == doctest::Approx(120.0));
  }
  SUBCASE("identical keys reproduce identical profiles") {
    const auto spec = make_spec(6, 1.0, 50.0, 5.0, 9.0);
    const auto a = sample_fields(spec, 7, 3);
    const auto b = sample_fields(spec, 7, 3);
    CHECK(a.field_mhz == b.field_mhz);
    const auto c = sample_fields(spec, 7, 4);
    CHECK(a.field_mhz != c.field_mhz);
  }
  SUBCASE("Gaussian sample standard deviation matches the law") {
    const auto spec = make_spec(2, 0.0, 0.0, 0.0, 9.0);
    const std::size_t n = 10000;
    double sum = 0.0, ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double v = sample_fields(spec, 123, r).field_mhz[0];
      sum += v;
      ss += v * v;
    }
    const double mean = sum / n;
    const double stddev = std::sqrt(ss / n - mean * mean);
    CHECK(std::abs(stddev - 9.0) < 0.05 * 9.0);
    CHECK(std::abs(mean) < 0.5);
  }
  SUBCASE("uniform law stays inside its support") {
    const auto spec = make_spec(2, 0.0, 0.0, 0.0, 2.0, DisorderLaw::Uniform);
    double lo = 1e9, hi = -1e9;
    for (std::size_t r = 0; r < 4000; ++r) {
      const double v = sample_fields(spec, 5, r).field_mhz[0];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      CHECK(std::abs(v) <= 2.0);
    }
    // the support is actually explored
    CHECK(lo < -1.8);
    CHECK(hi > 1.8);
  }
  SUBCASE("distinct realization streams look uncorrelated") {
    const auto spec = make_spec(2, 0.0, 0.0, 0.0, 1.0);
    double corr = 0.0;
    const std::size_t n = 10000;
    for (std::size_t r = 0; r < n; ++r)
      corr += sample_fields(spec, 9, 2 * r).field_mhz[0] *
              sample_fields(spec, 9, 2 * r + 1).field_mhz[0];
    CHECK(std::abs(corr / n) < 0.05);
  }
}

TEST_CASE("build_heisenberg") {
  SUBCASE("two-site singlet-triplet spectrum") {
    const auto spec = make_spec(2, 4.0, 0.0, 0.0, 0.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    auto values = h.eigensystem().values;
    std::sort(values.begin(), values.end());
    // (J/4) sigma.sigma has the singlet at -3J/4 and triplet at J/4
    CHECK(values[0] == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(values[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(values[3] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("J=0 leaves a diagonal Zeeman matrix") {
    const auto spec = make_spec(3, 0.0, 20.0, 5.0, 0.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    const SpinBasis basis(3);
    for (std::size_t b = 0; b < 8; ++b) {
      double expected = 0.0;
      for (int j = 1; j <= 3; ++j)
        expected += 0.5 * (20.0 + 5.0 * (j - 1)) * basis.sz_sign(b, j);
      CHECK(std::abs(h.matrix()(b, b) - cplx(expected, 0.0)) < 1e-12);
      for (std::size_t b2 = 0; b2 < 8; ++b2)
        if (b2 != b) CHECK(std::abs(h.matrix()(b, b2)) == 0.0);
    }
  }
  SUBCASE("total S^z is conserved for a z gradient") {
    const auto spec = make_spec(4, 3.0, 100.0, 17.0, 4.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 11, 0));
    const SpinBasis basis(4);
    auto sz_total = DenseOperator::zero(basis);
    for (int j = 1; j <= 4; ++j)
      sz_total = sz_total + pauli_string(basis, {{j, PauliAxis::Z}});
    CHECK(commutator(h, sz_total).max_abs() < 1e-12);
  }
  SUBCASE("off-diagonal part is exactly the XX+YY flip-flop operator") {
    const auto spec = make_spec(4, 2.5, 50.0, 7.0, 3.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 13, 1));
    const SpinBasis basis(4);
    auto h1 = DenseOperator::zero(basis);
    for (int j = 1; j < 4; ++j) {
      h1 = h1 + pauli_string(basis, {{j, PauliAxis::X}, {j + 1, PauliAxis::X}})
                    .scaled(spec.exchange_mhz / 4.0);
      h1 = h1 + pauli_string(basis, {{j, PauliAxis::Y}, {j + 1, PauliAxis::Y}})
                    .scaled(spec.exchange_mhz / 4.0);
    }
    ComplexMatrix offdiag = h.matrix();
    for (std::size_t b = 0; b < 16; ++b) offdiag(b, b) = cplx(0.0, 0.0);
    CHECK(offdiag.max_abs_diff(h1.matrix()) < 1e-12);
  }
  SUBCASE("B0 shift moves each S^z sector by the uniform Zeeman offset") {
    const auto spec = make_spec(4, 3.0, 100.0, 10.0, 2.0);
    const auto fields = sample_fields(spec, 21, 0);
    auto spec_shifted = spec;
    spec_shifted.base_field_mhz += 37.0;
    auto fields_shifted = fields;
    for (auto& b : fields_shifted.field_mhz) b += 37.0;
    const auto h = build_heisenberg(spec, fields);
    const auto hs = build_heisenberg(spec_shifted, fields_shifted);
    const SpinBasis basis(4);
    auto sz_total = DenseOperator::zero(basis);
    for (int j = 1; j <= 4; ++j)
      sz_total = sz_total + pauli_string(basis, {{j, PauliAxis::Z}});
    const auto& es = h.eigensystem();
    const auto& es_shifted = hs.eigensystem();
    // generic fields: eigenvectors sit in single S^z sectors, so each
    // eigenvalue moves by 37/2 times the (integer) sector magnetization
    for (std::size_t k = 0; k < 16; ++k) {
      std::vector<cplx> col(16);
      for (std::size_t i = 0; i < 16; ++i) col[i] = es.vectors(i, k);
      const StateVector v(basis, col);
      const double m = expectation(v, sz_total);
      CHECK(std::abs(m - std::round(m)) < 1e-6);
      const double predicted = es.values[k] + 37.0 / 2.0 * std::round(m);
      bool found = false;
      for (double w : es_shifted.values)
        if (std::abs(w - predicted) < 1e-8) found = true;
      CHECK(found);
    }
  }
  SUBCASE("y-axis gradient moves only the gradient term onto sigma^y") {
    auto spec = make_spec(3, 2.0, 40.0, 11.0, 1.5);
    spec.gradient_axis = GradientAxis::Y;
    const auto fields = sample_fields(spec, 31, 2);
    const auto h = build_heisenberg(spec, fields);
    CHECK(h.is_hermitian(1e-12));
    const SpinBasis basis(3);
    auto expected = DenseOperator::zero(basis);
    for (int j = 1; j < 3; ++j)
      for (auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
        expected = expected +
                   pauli_string(basis, {{j, axis}, {j + 1, axis}}).scaled(spec.exchange_mhz / 4.0);
    for (int j = 1; j <= 3; ++j) {
      const double grad = spec.gradient_mhz * (j - 1);
      expected = expected + pauli_string(basis, {{j, PauliAxis::Z}})
                                .scaled(0.5 * (fields.field_mhz[j - 1] - grad));
      expected = expected + pauli_string(basis, {{j, PauliAxis::Y}}).scaled(0.5 * grad);
    }
    CHECK(h.matrix().max_abs_diff(expected.matrix()) < 1e-12);
  }
}

TEST_CASE("build_ising") {
  SUBCASE("Neel energy counts three antiparallel bonds") {
    const auto spec = make_spec(4, 4.0, 0.0, 0.0, 0.0);
    const auto h = build_ising(spec, sample_fields(spec, 0, 0));
    const SpinBasis basis(4);
    const auto neel = initial_state(basis, "neel");
    CHECK(expectation(neel, h) == doctest::Approx(-3.0));
  }
  SUBCASE("all-up energy is (L-1)J/4 + sum B_j/2") {
    const auto spec = make_spec(5, 3.0, 10.0, 2.0, 1.0);
    const auto fields = sample_fields(spec, 3, 0);
    const auto h = build_ising(spec, fields);
    double expected = 4.0 * 3.0 / 4.0;
    for (double b : fields.field_mhz) expected += b / 2.0;
    CHECK(h.matrix()(0, 0).real() == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("strictly diagonal") {
    const auto spec = make_spec(4, 2.0, 7.0, 3.0, 1.0);
    const auto h = build_ising(spec, sample_fields(spec, 1, 0));
    double off = 0.0;
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j)
        if (i != j) off = std::max(off, std::abs(h.matrix()(i, j)));
    CHECK(off == 0.0);
  }
}

TEST_CASE("build_heating_operator") {
  SUBCASE("two sites: a single sigma^x on site 2") {
    const SpinBasis basis(2);
    const auto hp = build_heating_operator(basis);
    CHECK(hp.matrix().max_abs_diff(pauli_string(basis, {{2, PauliAxis::X}}).matrix()) < 1e-14);
  }
  SUBCASE("four sites: flips site 2 or site 4 of the all-up state") {
    const SpinBasis basis(4);
    const auto hp = build_heating_operator(basis);
    const auto up = StateVector::basis_state(basis, 0);
    const auto out = hp.matrix().apply(up.amplitudes());
    const std::size_t f2 = basis.flipped(0, 2);
    const std::size_t f4 = basis.flipped(0, 4);
    for (std::size_t b = 0; b < 16; ++b) {
      const double expected = (b == f2 || b == f4) ? 1.0 : 0.0;
      CHECK(std::abs(out[b] - cplx(expected, 0.0)) < 1e-14);
    }
  }
  SUBCASE("does not commute with the Ising bond term") {
    const SpinBasis basis(4);
    auto zz = DenseOperator::zero(basis);
    for (int j = 1; j < 4; ++j)
      zz = zz + pauli_string(basis, {{j, PauliAxis::Z}, {j + 1, PauliAxis::Z}});
    CHECK(commutator(build_heating_operator(basis), zz).max_abs() > 0.5);
  }
}

TEST_CASE("initial_state") {
  SUBCASE("neel pattern") {
    const SpinBasis basis(4);
    const auto psi = initial_state(basis, "neel");
    std::size_t expected = 0;
    expected |= std::size_t(1) << basis.bit_position(2);
    expected |= std::size_t(1) << basis.bit_position(4);
    CHECK(std::abs(psi.amplitudes()[expected] - cplx(1.0, 0.0)) < 1e-14);
  }
  SUBCASE("neel_y is the +1 eigenstate of sigma^y") {
    const SpinBasis basis(1);
    const auto psi = initial_state(basis, "neel_y");
    CHECK(std::abs(psi.amplitudes()[0] - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);
    CHECK(std::abs(psi.amplitudes()[1] - cplx(0.0, 1.0 / std::sqrt(2.0))) < 1e-14);
    CHECK(expectation(psi, pauli_string(basis, {{1, PauliAxis::Y}})) == doctest::Approx(1.0));
  }
  SUBCASE("ground state of a field-only Hamiltonian points down") {
    const auto spec = make_spec(2, 0.0, 10.0, 10.0, 0.0);
    const auto h = build_heisenberg(spec, sample_fields(spec, 0, 0));
    const SpinBasis basis(2);
    const auto psi = initial_state(basis, "ground", &h);
    CHECK(expectation(psi, pauli_string(basis, {{1, PauliAxis::Z}})) == doctest::Approx(-1.0));
    CHECK(expectation(psi, pauli_string(basis, {{2, PauliAxis::Z}})) == doctest::Approx(-1.0));
  }
  SUBCASE("explicit arrow strings, ascii and unicode") {
    const SpinBasis basis(3);
    const auto a = initial_state(basis, "udu");
    const auto b = initial_state(basis, "↑↓↑");
    CHECK(a.amplitudes()[2] == cplx(1.0, 0.0));
    CHECK(b.amplitudes()[2] == cplx(1.0, 0.0));
  }
  SUBCASE("length mismatch throws") {
    const SpinBasis basis(3);
    CHECK_THROWS_AS(initial_state(basis, "ud"), std::invalid_argument);
    CHECK_THROWS_AS(initial_state(basis, "ground"), std::invalid_argument);
  }
}
