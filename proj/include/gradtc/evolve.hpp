#pragma once

// Propagators and drive protocols: static evolution via eigendecomposition,
// delta-pulse Floquet cycles, lab-frame EDSR integration, the square-wave
// heating drive, and Floquet-operator eigenanalysis.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gradtc/models.hpp"
#include "gradtc/spinops.hpp"

namespace gradtc {

struct DeltaDrive {
  double epsilon = 0.0;    // pulse error, radians
  double period_ns = 0.0;  // T
};

struct EdsrDrive {
  double epsilon = 0.0;
  double period_ns = 0.0;
  double duty = 0.0;  // eta, pulse occupies the final eta fraction of each period
};

struct SquareDrive {
  double amplitude_mhz = 0.0;  // A
  double period_ns = 0.0;
  double duty = 0.0;
};

struct DriveSpec {
  std::variant<std::monostate, DeltaDrive, EdsrDrive, SquareDrive> pulse;
  std::size_t n_periods = 0;

  void validate() const;  // throws config_error: T > 0, 0 < eta < 1
};

// sigma^x coefficient (MHz) implied by the pulse area: the EDSR amplitude is
// derived from (epsilon, eta, T), never stored
double edsr_amplitude_mhz(const EdsrDrive& d);

struct Trajectory {
  std::vector<double> times_ns;            // strictly increasing, includes t=0
  std::vector<std::vector<double>> sz;     // [sample][site-1]
  std::vector<double> energy_mhz;          // filled by the square drive
  std::vector<StateVector> snapshots;      // final-state snapshot
  std::uint64_t seed = 0;
  std::uint64_t realization = 0;
};

struct FloquetSpectrum {
  std::vector<StateVector> eigenstates;
  std::vector<cplx> eigenvalues;       // unit modulus
  std::vector<double> quasi_energies;  // -arg(eigenvalue), in (-pi, pi]
};

// U = V exp(-i 2pi 1e-3 Lambda t) V^H from the cached eigendecomposition of H
DenseOperator static_propagator(const DenseOperator& h, double t_ns);

// single-period delta-drive factor U(T) = R_x(pi - 2 epsilon) e^{-i H T}
DenseOperator floquet_operator_delta(const DenseOperator& h, double epsilon, double period_ns);

// repeated application of u_period with per-site <sigma^z> recorded every
// sample_every periods (t = 0 included); period_ns only stamps the times
Trajectory evolve_stroboscopic(const DenseOperator& u_period, double period_ns,
                               const StateVector& psi0, std::size_t n_periods,
                               std::size_t sample_every = 2);

// full eigenanalysis of a unitary; residual above 1e-7 on any pair throws
FloquetSpectrum floquet_eigenstates(const DenseOperator& u);

// lab-frame EDSR run. Free segment (1-eta)T under cached eigenphases, pulse
// segment integrated with the fixed-step midpoint-exponential rule at
// >= steps_per_cycle steps per fastest carrier cycle (default 40). Samples
// every sample_every periods.
Trajectory evolve_edsr(const DenseOperator& h, const ModelSpec& spec, const EdsrDrive& drive,
                       const StateVector& psi0, std::size_t n_periods,
                       std::size_t sample_every = 1, std::size_t steps_per_cycle = 40);

// square-pulse heating run; records <H> at every period boundary
Trajectory evolve_square_drive(const DenseOperator& h, const SquareDrive& drive,
                               const StateVector& psi0, std::size_t n_periods);

// undriven evolution sampled at arbitrary times, reusing H's eigensystem
std::vector<StateVector> evolve_static_samples(const DenseOperator& h, const StateVector& psi0,
                                               std::span<const double> times_ns);

} // namespace gradtc
