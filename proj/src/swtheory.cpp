#include "gradtc/swtheory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gradtc/errors.hpp"
#include "gradtc/kernels.hpp"
#include "gradtc/linalg.hpp"

namespace gradtc {

SwGenerator build_s1(const ModelSpec& spec, const FieldProfile& fields, SwDeltaMode mode) {
  if (spec.sites < 2) throw std::invalid_argument("build_s1: needs at least 2 sites");
  if (static_cast<int>(fields.field_mhz.size()) != spec.sites)
    throw std::invalid_argument("build_s1: FieldProfile does not match ModelSpec");
  if (spec.gradient_mhz == 0.0)
    throw param_domain_error("build_s1: zero gradient leaves the expansion undefined");

  const SpinBasis basis(spec.sites);
  const int L = spec.sites;
  const double J = spec.exchange_mhz;

  std::vector<double> delta(L - 1);
  for (int j = 1; j < L; ++j)
    delta[j - 1] = mode == SwDeltaMode::ExactFields
                       ? fields.field_mhz[j] - fields.field_mhz[j - 1]
                       : spec.gradient_mhz;

  // every denominator configuration must stay away from resonance;
  // sigma^z is zero outside the chain
  for (int j = 1; j < L; ++j) {
    const std::vector<int> left = (j - 1 >= 1) ? std::vector<int>{-1, 1} : std::vector<int>{0};
    const std::vector<int> right =
        (j + 2 <= L) ? std::vector<int>{-1, 1} : std::vector<int>{0};
    for (int sa : left)
      for (int sb : right) {
        const double d = 2.0 * delta[j - 1] - J * (sa - sb);
        if (std::abs(d) <= 1e-6)
          throw param_domain_error(
              "build_s1: resonant denominator at bond " + std::to_string(j) +
              " (|2 Delta - J(sz_l - sz_r)| = " + std::to_string(std::abs(d)) +
              "); gradient too small relative to J");
      }
  }

  const std::size_t dim = basis.dimension();
  ComplexMatrix m(dim, dim);
  if (J != 0.0) {
    for (std::size_t b = 0; b < dim; ++b) {
      for (int j = 1; j < L; ++j) {
        const bool down_j = basis.spin_down(b, j);
        if (down_j == basis.spin_down(b, j + 1)) continue;
        const int sa = (j - 1 >= 1) ? basis.sz_sign(b, j - 1) : 0;
        const int sb = (j + 2 <= L) ? basis.sz_sign(b, j + 2) : 0;
        const double denom = 2.0 * delta[j - 1] - J * (sa - sb);
        // s+_j s-_{j+1} hits |down,up>, -s-_j s+_{j+1} hits |up,down>
        const double numer = down_j ? 1.0 : -1.0;
        const std::size_t target = basis.flipped(basis.flipped(b, j), j + 1);
        m(target, b) += -J * numer / denom;
      }
    }
  }

  return SwGenerator{DenseOperator(basis, std::move(m)), J / spec.gradient_mhz, J, fields};
}

std::pair<DenseOperator, DenseOperator> split_h0_h1(const DenseOperator& h) {
  const std::size_t dim = h.dimension();
  ComplexMatrix diag(dim, dim);
  ComplexMatrix rest = h.matrix();
  for (std::size_t i = 0; i < dim; ++i) {
    diag(i, i) = rest(i, i);
    rest(i, i) = cplx(0.0, 0.0);
  }
  return {DenseOperator(h.basis(), std::move(diag), true),
          DenseOperator(h.basis(), std::move(rest))};
}

DenseOperator transformed_hamiltonian(const DenseOperator& h, const SwGenerator& sw) {
  if (!(h.basis() == sw.generator.basis()))
    throw std::invalid_argument("transformed_hamiltonian: basis mismatch");
  const ComplexMatrix e = linalg::expm_antihermitian(sw.generator.matrix());
  const std::size_t dim = h.dimension();
  ComplexMatrix eh(dim, dim);
  kernels::matmul(e.data(), h.matrix().data(), eh.data(), dim);
  ComplexMatrix out(dim, dim);
  kernels::matmul_adj(eh.data(), e.data(), out.data(), dim);
  return DenseOperator(h.basis(), std::move(out));
}

LeadingCorrection leading_correction(const SwGenerator& sw, const DenseOperator& h1) {
  LeadingCorrection out{commutator(sw.generator, h1).scaled(0.5),
                        DenseOperator::zero(h1.basis())};
  const SpinBasis& basis = h1.basis();
  const double coeff = -sw.exchange_mhz * sw.lambda / 8.0;
  const auto sz1 = pauli_string(basis, {{1, PauliAxis::Z}});
  const auto szl = pauli_string(basis, {{basis.sites(), PauliAxis::Z}});
  out.end_spin_term = (sz1 - szl).scaled(coeff);
  return out;
}

double spectral_distance(const DenseOperator& h_heis, const DenseOperator& h_ising) {
  if (h_heis.dimension() != h_ising.dimension())
    throw std::invalid_argument("spectral_distance: dimension mismatch");
  std::vector<double> eh = h_heis.eigensystem().values;
  std::vector<double> ei = h_ising.eigensystem().values;
  std::sort(eh.begin(), eh.end());
  std::sort(ei.begin(), ei.end());
  double ss = 0.0;
  for (std::size_t i = 0; i < eh.size(); ++i) ss += (eh[i] - ei[i]) * (eh[i] - ei[i]);
  // the 1/2^N prefactor sits outside the square root
  return std::sqrt(ss) / static_cast<double>(eh.size());
}

namespace {

// <b| A |b> for the Neel basis state
std::size_t neel_index(const SpinBasis& basis) {
  std::size_t idx = 0;
  for (int j = 2; j <= basis.sites(); j += 2)
    idx |= std::size_t(1) << basis.bit_position(j);
  return idx;
}

} // namespace

DressedObservable dressed_sz(const SwGenerator& sw, int site) {
  const SpinBasis& basis = sw.generator.basis();
  basis.require_site(site);
  const auto sz = pauli_string(basis, {{site, PauliAxis::Z}});
  const auto ad1 = commutator(sw.generator, sz);
  const auto ad2 = commutator(sw.generator, ad1);
  const DenseOperator z = sz + ad1 + ad2.scaled(0.5);

  // N^2 = <neel| Z^2 |neel> is the squared column norm at the Neel index
  const std::size_t b = neel_index(basis);
  const std::size_t dim = basis.dimension();
  double n_sq = 0.0;
  for (std::size_t k = 0; k < dim; ++k) n_sq += std::norm(z.matrix()(k, b));
  if (n_sq <= 0.0) throw invariant_error("dressed_sz: vanishing normalization");
  return DressedObservable{z, std::sqrt(n_sq)};
}

double qfi_alpha(int sites) {
  if (sites < 1) throw std::invalid_argument("qfi_alpha: sites must be >= 1");
  return 8.0 - 8.0 / static_cast<double>(sites);
}

double qfi_perturbative(int sites, double lambda) {
  return qfi_alpha(sites) * lambda * lambda;
}

double qfi_dressed_twopoint(const SwGenerator& sw) {
  const SpinBasis& basis = sw.generator.basis();
  const int L = basis.sites();
  const std::size_t dim = basis.dimension();
  const std::size_t b = neel_index(basis);

  std::vector<DressedObservable> dressed;
  dressed.reserve(L);
  for (int j = 1; j <= L; ++j) dressed.push_back(dressed_sz(sw, j));

  double total = 0.0;
  for (int mi = 1; mi <= L; ++mi) {
    for (int ni = 1; ni <= L; ++ni) {
      const auto& zm = dressed[mi - 1].dressed.matrix();
      const auto& zn = dressed[ni - 1].dressed.matrix();
      // <Z_m Z_n> = sum_k Z_m(b,k) Z_n(k,b)
      cplx two_point(0.0, 0.0);
      for (std::size_t k = 0; k < dim; ++k) two_point += zm(b, k) * zn(k, b);
      const cplx connected = two_point - zm(b, b) * zn(b, b);
      const double sign = ((mi + ni) % 2 == 0) ? 1.0 : -1.0;
      total += sign * connected.real() /
               (dressed[mi - 1].normalization * dressed[ni - 1].normalization);
    }
  }
  return total / static_cast<double>(L);
}

double resonance_period_l4(double g_mhz, double j_mhz) {
  if (j_mhz <= 0.0 || g_mhz <= 0.0)
    throw std::invalid_argument("resonance_period_l4: J and g must be positive");
  return 2e3 * g_mhz * g_mhz / (j_mhz * j_mhz * j_mhz);
}

} // namespace gradtc
