#include "gradtc/evolve.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gradtc/errors.hpp"
#include "gradtc/kernels.hpp"
#include "gradtc/linalg.hpp"
#include "gradtc/units.hpp"

namespace gradtc {

void DriveSpec::validate() const {
  const auto check_period = [](double t) {
    if (t <= 0.0) throw config_error("drive period must be positive");
  };
  const auto check_duty = [](double eta) {
    if (eta <= 0.0 || eta >= 1.0) throw config_error("duty cycle must be in (0, 1)");
  };
  if (const auto* d = std::get_if<DeltaDrive>(&pulse)) {
    check_period(d->period_ns);
  } else if (const auto* e = std::get_if<EdsrDrive>(&pulse)) {
    check_period(e->period_ns);
    check_duty(e->duty);
  } else if (const auto* s = std::get_if<SquareDrive>(&pulse)) {
    check_period(s->period_ns);
    check_duty(s->duty);
  }
}

double edsr_amplitude_mhz(const EdsrDrive& d) {
  // pulse area (pi - 2 epsilon) spread over eta*T, in ordinary MHz
  return (std::numbers::pi - 2.0 * d.epsilon) /
         (units::phase_rad_per_mhz_ns * d.duty * d.period_ns);
}

DenseOperator static_propagator(const DenseOperator& h, double t_ns) {
  if (!h.is_hermitian(1e-9))
    throw std::invalid_argument("static_propagator: Hamiltonian is not Hermitian");
  const auto& es = h.eigensystem();
  return DenseOperator(h.basis(),
                       linalg::phase_exponential(es, units::phase_rad_per_mhz_ns * t_ns));
}

DenseOperator floquet_operator_delta(const DenseOperator& h, double epsilon, double period_ns) {
  const DenseOperator rot = global_rotation_x(h.basis(), std::numbers::pi - 2.0 * epsilon);
  return rot * static_propagator(h, period_ns);
}

Trajectory evolve_stroboscopic(const DenseOperator& u_period, double period_ns,
                               const StateVector& psi0, std::size_t n_periods,
                               std::size_t sample_every) {
  if (!(u_period.basis() == psi0.basis()))
    throw std::invalid_argument("evolve_stroboscopic: basis mismatch");
  if (sample_every == 0 || n_periods % sample_every != 0)
    throw std::invalid_argument("evolve_stroboscopic: sample_every must divide n_periods");

  const std::size_t dim = psi0.dimension();
  const std::size_t n_samples = n_periods / sample_every;

  // collapse the sampling stride into a single matrix once
  ComplexMatrix u_step = u_period.matrix();
  for (std::size_t k = 1; k < sample_every; ++k) u_step = u_period.matrix() * u_step;

  Trajectory traj;
  traj.times_ns.reserve(n_samples + 1);
  traj.sz.reserve(n_samples + 1);

  StateVector psi = psi0;
  traj.times_ns.push_back(0.0);
  traj.sz.push_back(sz_expectations(psi));

  std::vector<cplx> next(dim);
  for (std::size_t s = 1; s <= n_samples; ++s) {
    kernels::matvec(u_step.data(), psi.amplitudes().data(), next.data(), dim);
    psi.mutable_amplitudes().swap(next);
    psi.normalize();
    traj.times_ns.push_back(static_cast<double>(s * sample_every) * period_ns);
    traj.sz.push_back(sz_expectations(psi));
  }
  traj.snapshots.push_back(psi);
  return traj;
}

FloquetSpectrum floquet_eigenstates(const DenseOperator& u) {
  const std::size_t dim = u.dimension();
  const auto eu = linalg::eig_unitary(u.matrix());

  // residual || U v - lambda v || per pair; Schur of a normal matrix should
  // be diagonal to roundoff, so a large residual means the decomposition
  // cannot be trusted
  ComplexMatrix uv(dim, dim);
  kernels::matmul(u.matrix().data(), eu.vectors.data(), uv.data(), dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double mod = std::abs(eu.values[k]);
    if (std::abs(mod - 1.0) > 1e-8)
      throw invariant_error("floquet_eigenstates: eigenvalue modulus deviates from 1 by " +
                            std::to_string(std::abs(mod - 1.0)));
    double res_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const cplx r = uv(i, k) - eu.values[k] * eu.vectors(i, k);
      res_sq += std::norm(r);
    }
    if (std::sqrt(res_sq) > 1e-7)
      throw invariant_error("floquet_eigenstates: eigenpair residual " +
                            std::to_string(std::sqrt(res_sq)));
  }

  FloquetSpectrum out;
  out.eigenvalues = eu.values;
  out.quasi_energies.resize(dim);
  out.eigenstates.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    double qe = -std::arg(eu.values[k]);
    if (qe <= -std::numbers::pi) qe += 2.0 * std::numbers::pi;
    out.quasi_energies[k] = qe;
    std::vector<cplx> amp(dim);
    for (std::size_t i = 0; i < dim; ++i) amp[i] = eu.vectors(i, k);
    out.eigenstates.emplace_back(u.basis(), std::move(amp));
  }
  return out;
}

Trajectory evolve_edsr(const DenseOperator& h, const ModelSpec& spec, const EdsrDrive& drive,
                       const StateVector& psi0, std::size_t n_periods,
                       std::size_t sample_every, std::size_t steps_per_cycle) {
  if (steps_per_cycle < 40)
    throw std::invalid_argument("evolve_edsr: needs at least 40 steps per carrier cycle");
  if (!(h.basis() == psi0.basis()))
    throw std::invalid_argument("evolve_edsr: basis mismatch");
  if (drive.duty <= 0.0 || drive.duty >= 1.0)
    throw std::invalid_argument("evolve_edsr: duty cycle must be in (0, 1)");
  if (sample_every == 0 || n_periods % sample_every != 0)
    throw std::invalid_argument("evolve_edsr: sample_every must divide n_periods");

  const SpinBasis& basis = h.basis();
  const std::size_t dim = basis.dimension();
  const int L = basis.sites();

  // per-site carrier frequencies Omega_j = B0 + g(j-1)
  std::vector<double> omega(L);
  double f_max = 0.0;
  for (int j = 1; j <= L; ++j) {
    omega[j - 1] = spec.base_field_mhz + spec.gradient_mhz * (j - 1);
    if (omega[j - 1] <= 0.0)
      throw std::invalid_argument("evolve_edsr: carrier frequencies must be positive");
    f_max = std::max(f_max, omega[j - 1]);
  }

  const double T = drive.period_ns;
  const double pulse_ns = drive.duty * T;
  const double free_ns = T - pulse_ns;
  const double dt_max = 1e3 / (static_cast<double>(steps_per_cycle) * f_max);
  const std::size_t n_steps = static_cast<std::size_t>(std::ceil(pulse_ns / dt_max));
  const double dt = pulse_ns / static_cast<double>(n_steps);
  const double amp = edsr_amplitude_mhz(drive);

  const auto& es_free = h.eigensystem();

  Trajectory traj;
  traj.times_ns.push_back(0.0);
  traj.sz.push_back(sz_expectations(psi0));

  StateVector psi = psi0;
  auto& amps = psi.mutable_amplitudes();
  ComplexMatrix m(dim, dim);

  for (std::size_t s = 1; s <= n_periods; ++s) {
    // free segment
    linalg::apply_phase_exponential(es_free, units::phase_rad_per_mhz_ns * free_ns, amps);

    // pulse segment: fixed-step midpoint-exponential in the lab frame, with
    // the carrier phase referenced to absolute time
    const double t_pulse_start = static_cast<double>(s) * T - pulse_ns;
    for (std::size_t k = 0; k < n_steps; ++k) {
      const double t_mid = t_pulse_start + (static_cast<double>(k) + 0.5) * dt;
      std::copy(h.matrix().data(), h.matrix().data() + dim * dim, m.data());
      for (int j = 1; j <= L; ++j) {
        const double c = amp * std::cos(units::phase_rad_per_mhz_ns * omega[j - 1] * t_mid);
        for (std::size_t b = 0; b < dim; ++b) m(basis.flipped(b, j), b) += c;
      }
      linalg::apply_phase_exponential(linalg::eigh(m), units::phase_rad_per_mhz_ns * dt, amps);
    }

    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > 1e-8)
      throw invariant_error("evolve_edsr: norm drift " + std::to_string(drift) +
                            " in one period");
    psi.normalize();

    if (s % sample_every == 0) {
      traj.times_ns.push_back(static_cast<double>(s) * T);
      traj.sz.push_back(sz_expectations(psi));
    }
  }
  traj.snapshots.push_back(psi);
  return traj;
}

Trajectory evolve_square_drive(const DenseOperator& h, const SquareDrive& drive,
                               const StateVector& psi0, std::size_t n_periods) {
  if (!(h.basis() == psi0.basis()))
    throw std::invalid_argument("evolve_square_drive: basis mismatch");
  if (drive.duty <= 0.0 || drive.duty >= 1.0)
    throw std::invalid_argument("evolve_square_drive: duty cycle must be in (0, 1)");

  const std::size_t dim = h.dimension();
  const double T = drive.period_ns;
  const DenseOperator pulse_h =
      h + build_heating_operator(h.basis()).scaled(drive.amplitude_mhz);
  const ComplexMatrix u_free = static_propagator(h, (1.0 - drive.duty) * T).matrix();
  const ComplexMatrix u_pulse = static_propagator(pulse_h, drive.duty * T).matrix();

  Trajectory traj;
  traj.times_ns.reserve(n_periods + 1);

  StateVector psi = psi0;
  const auto energy_of = [&](const StateVector& st) {
    const auto y = h.matrix().apply(st.amplitudes());
    return kernels::dot_conj(st.amplitudes().data(), y.data(), dim).real();
  };

  traj.times_ns.push_back(0.0);
  traj.sz.push_back(sz_expectations(psi));
  traj.energy_mhz.push_back(energy_of(psi));

  std::vector<cplx> scratch(dim);
  for (std::size_t s = 1; s <= n_periods; ++s) {
    kernels::matvec(u_free.data(), psi.amplitudes().data(), scratch.data(), dim);
    kernels::matvec(u_pulse.data(), scratch.data(), psi.mutable_amplitudes().data(), dim);
    psi.normalize();
    traj.times_ns.push_back(static_cast<double>(s) * T);
    traj.sz.push_back(sz_expectations(psi));
    traj.energy_mhz.push_back(energy_of(psi));
  }
  traj.snapshots.push_back(psi);
  return traj;
}

std::vector<StateVector> evolve_static_samples(const DenseOperator& h, const StateVector& psi0,
                                               std::span<const double> times_ns) {
  if (!(h.basis() == psi0.basis()))
    throw std::invalid_argument("evolve_static_samples: basis mismatch");
  const auto& es = h.eigensystem();
  const std::size_t dim = h.dimension();

  std::vector<cplx> z0(dim);
  kernels::matvec_adj(es.vectors.data(), psi0.amplitudes().data(), z0.data(), dim);

  std::vector<StateVector> out;
  out.reserve(times_ns.size());
  std::vector<cplx> z(dim), amp(dim);
  for (double t : times_ns) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double ph = -units::phase(es.values[k], t);
      z[k] = z0[k] * cplx(std::cos(ph), std::sin(ph));
    }
    kernels::matvec(es.vectors.data(), z.data(), amp.data(), dim);
    out.emplace_back(h.basis(), amp);
  }
  return out;
}

} // namespace gradtc
