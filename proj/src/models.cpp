#include "gradtc/models.hpp"

#include <cmath>
#include <stdexcept>

#include "gradtc/errors.hpp"
#include "gradtc/rng.hpp"

namespace gradtc {

void ModelSpec::validate() const {
  if (sites < 1 || sites > 14)
    throw config_error("model.sites must be in [1, 14]");
  if (exchange_mhz < 0.0) throw config_error("model.J must be >= 0");
  if (disorder_width_mhz < 0.0) throw config_error("model.disorder width must be >= 0");
  if (exchange_mhz > 0.0 && sites < 2)
    throw config_error("interacting model requires at least 2 sites");
}

FieldProfile sample_fields(const ModelSpec& spec, std::uint64_t master_seed,
                           std::uint64_t realization) {
  FieldProfile out;
  out.seed = master_seed;
  out.realization = realization;
  out.field_mhz.resize(spec.sites);
  for (int j = 1; j <= spec.sites; ++j) {
    double db = 0.0;
    if (spec.disorder_width_mhz > 0.0) {
      db = spec.disorder_law == DisorderLaw::Gaussian
               ? spec.disorder_width_mhz * rng::gaussian(master_seed, realization, j)
               : spec.disorder_width_mhz * rng::uniform_pm1(master_seed, realization, j);
    }
    out.field_mhz[j - 1] = spec.base_field_mhz + spec.gradient_mhz * (j - 1) + db;
  }
  return out;
}

namespace {

void check_fields(const ModelSpec& spec, const FieldProfile& fields) {
  if (static_cast<int>(fields.field_mhz.size()) != spec.sites)
    throw std::invalid_argument("FieldProfile does not match ModelSpec site count");
}

} // namespace

DenseOperator build_heisenberg(const ModelSpec& spec, const FieldProfile& fields) {
  check_fields(spec, fields);
  if (spec.sites < 2) throw std::invalid_argument("build_heisenberg: needs at least 2 sites");
  const SpinBasis basis(spec.sites);
  const std::size_t dim = basis.dimension();
  const int L = spec.sites;
  const double quarter_j = spec.exchange_mhz / 4.0;

  // on sigma^z: full B_j for a z gradient, B_j - g(j-1) for a y gradient
  std::vector<double> z_field(L), y_field(L, 0.0);
  for (int j = 1; j <= L; ++j) {
    const double grad = spec.gradient_mhz * (j - 1);
    if (spec.gradient_axis == GradientAxis::Z) {
      z_field[j - 1] = fields.field_mhz[j - 1];
    } else {
      z_field[j - 1] = fields.field_mhz[j - 1] - grad;
      y_field[j - 1] = grad;
    }
  }

  ComplexMatrix m(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int j = 1; j <= L; ++j) diag += 0.5 * z_field[j - 1] * basis.sz_sign(b, j);
    for (int j = 1; j < L; ++j)
      diag += quarter_j * basis.sz_sign(b, j) * basis.sz_sign(b, j + 1);
    m(b, b) = diag;

    // (J/4)(sx sx + sy sy) = (J/2)(s+ s- + s- s+): swaps antiparallel neighbors
    for (int j = 1; j < L; ++j) {
      if (basis.spin_down(b, j) != basis.spin_down(b, j + 1)) {
        const std::size_t flipped = basis.flipped(basis.flipped(b, j), j + 1);
        m(flipped, b) += 2.0 * quarter_j;
      }
    }

    // transverse gradient: (1/2) y_field_j sigma^y_j
    if (spec.gradient_axis == GradientAxis::Y) {
      for (int j = 1; j <= L; ++j) {
        if (y_field[j - 1] == 0.0) continue;
        const cplx amp = basis.spin_down(b, j) ? cplx(0.0, -0.5 * y_field[j - 1])
                                               : cplx(0.0, 0.5 * y_field[j - 1]);
        m(basis.flipped(b, j), b) += amp;
      }
    }
  }
  return DenseOperator(basis, std::move(m), true);
}

DenseOperator build_ising(const ModelSpec& spec, const FieldProfile& fields) {
  check_fields(spec, fields);
  if (spec.sites < 2) throw std::invalid_argument("build_ising: needs at least 2 sites");
  const SpinBasis basis(spec.sites);
  const std::size_t dim = basis.dimension();
  const int L = spec.sites;
  const double quarter_j = spec.exchange_mhz / 4.0;

  ComplexMatrix m(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int j = 1; j <= L; ++j) diag += 0.5 * fields.field_mhz[j - 1] * basis.sz_sign(b, j);
    for (int j = 1; j < L; ++j)
      diag += quarter_j * basis.sz_sign(b, j) * basis.sz_sign(b, j + 1);
    m(b, b) = diag;
  }
  return DenseOperator(basis, std::move(m), true);
}

DenseOperator build_heating_operator(const SpinBasis& basis) {
  if (basis.sites() < 2)
    throw std::invalid_argument("build_heating_operator: needs at least 2 sites");
  const std::size_t dim = basis.dimension();
  ComplexMatrix m(dim, dim);
  for (std::size_t b = 0; b < dim; ++b)
    for (int j = 2; j <= basis.sites(); j += 2) m(basis.flipped(b, j), b) += 1.0;
  return DenseOperator(basis, std::move(m), true);
}

StateVector initial_state(const SpinBasis& basis, std::string_view pattern,
                          const DenseOperator* hamiltonian) {
  const int L = basis.sites();

  if (pattern == "neel") {
    std::size_t idx = 0;
    for (int j = 2; j <= L; j += 2) idx |= std::size_t(1) << basis.bit_position(j);
    return StateVector::basis_state(basis, idx);
  }

  if (pattern == "neel_y") {
    // product of sigma^y(+1) eigenstates (|up> + i|down>)/sqrt(2)
    const std::size_t dim = basis.dimension();
    const double scale = std::pow(0.5, 0.5 * L);
    std::vector<cplx> amp(dim);
    const cplx i_unit(0.0, 1.0);
    for (std::size_t b = 0; b < dim; ++b) {
      cplx v(scale, 0.0);
      for (int j = 1; j <= L; ++j)
        if (basis.spin_down(b, j)) v *= i_unit;
      amp[b] = v;
    }
    return StateVector(basis, std::move(amp));
  }

  if (pattern == "ground") {
    if (hamiltonian == nullptr)
      throw std::invalid_argument("initial_state: 'ground' requires a Hamiltonian");
    if (!(hamiltonian->basis() == basis))
      throw std::invalid_argument("initial_state: Hamiltonian basis mismatch");
    const auto& es = hamiltonian->eigensystem();
    const std::size_t dim = basis.dimension();
    std::vector<cplx> amp(dim);
    for (std::size_t b = 0; b < dim; ++b) amp[b] = es.vectors(b, 0);
    return StateVector(basis, std::move(amp));
  }

  // explicit arrow string, ASCII u/d or unicode arrows
  std::vector<bool> down;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern[i] == 'u' || pattern[i] == 'd') {
      down.push_back(pattern[i] == 'd');
      ++i;
    } else if (pattern.substr(i).starts_with("↑")) {
      down.push_back(false);
      i += std::string_view("↑").size();
    } else if (pattern.substr(i).starts_with("↓")) {
      down.push_back(true);
      i += std::string_view("↓").size();
    } else {
      throw std::invalid_argument("initial_state: unrecognized pattern");
    }
  }
  if (static_cast<int>(down.size()) != L)
    throw std::invalid_argument("initial_state: pattern length does not match chain length");
  std::size_t idx = 0;
  for (int j = 1; j <= L; ++j)
    if (down[j - 1]) idx |= std::size_t(1) << basis.bit_position(j);
  return StateVector::basis_state(basis, idx);
}

} // namespace gradtc
