#include "gradtc/experiment.hpp"

#include "gradtc/errors.hpp"

namespace gradtc {

// Desk-scale experiment presets. Each one reproduces a standard diagnostic of
// the driven or undriven gradient-field chain at a size/ensemble that runs in
// minutes on a laptop; the note records how it deviates from the full-scale
// run it is modeled on.

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = {
      {"pd-delta-g100",
       "epsilon-J phase diagram, delta pulses, g=100 MHz, end and bulk spins",
       "30 disorder realizations instead of 100",
       R"({
  "experiment": "phase_diagram",
  "model": {"sites": 6, "J_mhz": 2.5, "B0_mhz": 5000, "g_mhz": 100,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "delta", "epsilon": 0.1, "T_ns": 100},
  "grid": [{"param": "epsilon", "min": 0, "max": 0.6, "points": 13},
           {"param": "J_mhz", "min": 0, "max": 20, "points": 21}],
  "run": {"s_max": 200, "realizations": 30, "master_seed": 20260101,
          "initial_state": "neel", "sites_tracked": [1, 3]},
  "output": {"directory": "out/pd-delta-g100"}
})"},
      {"pd-delta-g600",
       "epsilon-J phase diagram, delta pulses, g=600 MHz, end and bulk spins",
       "30 disorder realizations instead of 100",
       R"({
  "experiment": "phase_diagram",
  "model": {"sites": 6, "J_mhz": 2.5, "B0_mhz": 5000, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "delta", "epsilon": 0.1, "T_ns": 100},
  "grid": [{"param": "epsilon", "min": 0, "max": 0.6, "points": 13},
           {"param": "J_mhz", "min": 0, "max": 20, "points": 21}],
  "run": {"s_max": 200, "realizations": 30, "master_seed": 20260101,
          "initial_state": "neel", "sites_tracked": [1, 3]},
  "output": {"directory": "out/pd-delta-g600"}
})"},
      {"pd-edsr-g600",
       "epsilon-J phase diagram under EDSR pulses, including negative epsilon",
       "chain shortened to 4 sites and B0 lowered to 100 MHz so the lab-frame "
       "carrier integration stays cheap; 5 realizations",
       R"({
  "experiment": "phase_diagram",
  "model": {"sites": 4, "J_mhz": 2.5, "B0_mhz": 100, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "edsr", "epsilon": 0.1, "T_ns": 100, "duty": 0.1},
  "grid": [{"param": "epsilon", "min": -0.3, "max": 0.3, "points": 7},
           {"param": "J_mhz", "min": 0, "max": 20, "points": 6}],
  "run": {"s_max": 50, "n_periods": 100, "realizations": 5, "master_seed": 20260102,
          "initial_state": "neel", "sites_tracked": [1, 3]},
  "output": {"directory": "out/pd-edsr-g600"}
})"},
      {"trajectory-neel-l4",
       "long-time per-site z-projections, Neel start, delta pulses, 4 sites",
       "100000 periods instead of several hundred thousand",
       R"({
  "experiment": "trajectory",
  "model": {"sites": 4, "J_mhz": 2.5, "B0_mhz": 5000, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "delta", "epsilon": 0.1, "T_ns": 100},
  "run": {"n_periods": 100000, "realizations": 1, "master_seed": 20260103,
          "initial_state": "neel"},
  "output": {"directory": "out/trajectory-neel-l4"}
})"},
      {"trajectory-domain-l7",
       "per-site z-projections for a domain-wall start uuudddd: only the end "
       "spins stay frozen",
       "20000 periods",
       R"({
  "experiment": "trajectory",
  "model": {"sites": 7, "J_mhz": 2.5, "B0_mhz": 5000, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "delta", "epsilon": 0.1, "T_ns": 100},
  "run": {"n_periods": 20000, "realizations": 1, "master_seed": 20260104,
          "initial_state": "uuudddd"},
  "output": {"directory": "out/trajectory-domain-l7"}
})"},
      {"trajectory-edsr-l4",
       "per-site z-projections under EDSR pulses, Neel start, 4 sites",
       "B0 lowered to 100 MHz and 300 periods to keep the carrier-resolved "
       "integration cheap",
       R"({
  "experiment": "trajectory",
  "model": {"sites": 4, "J_mhz": 2.5, "B0_mhz": 100, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "edsr", "epsilon": 0.1, "T_ns": 100, "duty": 0.1},
  "run": {"n_periods": 300, "realizations": 1, "master_seed": 20260105,
          "initial_state": "neel"},
  "output": {"directory": "out/trajectory-edsr-l4"}
})"},
      {"reversal-vs-size",
       "average spin-reversal time vs chain length, delta pulses",
       "30 realizations, runs capped at 1e5 periods",
       R"({
  "experiment": "reversal_time",
  "model": {"sites": 6, "J_mhz": 2.5, "B0_mhz": 5000, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "delta", "epsilon": 0.1, "T_ns": 100},
  "grid": [{"param": "sites", "min": 4, "max": 7, "points": 4}],
  "run": {"n_periods": 100000, "realizations": 30, "master_seed": 20260106,
          "initial_state": "neel"},
  "output": {"directory": "out/reversal-vs-size"}
})"},
      {"reversal-vs-gradient",
       "average spin-reversal time vs gradient at fixed size, delta pulses",
       "50 realizations, runs capped at 2e4 periods",
       R"({
  "experiment": "reversal_time",
  "model": {"sites": 6, "J_mhz": 2.5, "B0_mhz": 5000, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "delta", "epsilon": 0.1, "T_ns": 100},
  "grid": [{"param": "g_mhz", "min": 0, "max": 600, "points": 9}],
  "run": {"n_periods": 20000, "realizations": 50, "master_seed": 20260107,
          "initial_state": "neel"},
  "output": {"directory": "out/reversal-vs-gradient"}
})"},
      {"reversal-vs-size-edsr",
       "average spin-reversal time vs chain length under EDSR pulses",
       "3-5 sites, B0=100 MHz, 10 realizations, capped at 2000 periods; the "
       "full-scale version integrates a 5 GHz carrier",
       R"({
  "experiment": "reversal_time",
  "model": {"sites": 4, "J_mhz": 2.5, "B0_mhz": 100, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "edsr", "epsilon": 0.1, "T_ns": 100, "duty": 0.1},
  "grid": [{"param": "sites", "min": 3, "max": 5, "points": 3}],
  "run": {"n_periods": 2000, "realizations": 10, "master_seed": 20260108,
          "initial_state": "neel"},
  "output": {"directory": "out/reversal-vs-size-edsr"}
})"},
      {"mutual-info-vs-g",
       "end-to-end mutual information of Floquet eigenstates vs gradient; the "
       "4-site chain saturates below ln 2 while 6 sites approach it",
       "sizes 4 and 6 with 100 realizations; the large-size panel is omitted",
       R"({
  "experiment": "mutual_info",
  "model": {"sites": 6, "J_mhz": 4, "B0_mhz": 5600, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 9}},
  "drive": {"kind": "delta", "epsilon": 0.05, "T_ns": 100},
  "grid": [{"param": "sites", "min": 4, "max": 6, "points": 2},
           {"param": "g_mhz", "min": 100, "max": 1000, "points": 8, "scale": "log"}],
  "run": {"n_periods": 1, "realizations": 100, "master_seed": 20260109,
          "initial_state": "neel"},
  "output": {"directory": "out/mutual-info-vs-g"}
})"},
      {"qfi-vs-time",
       "quantum Fisher information vs time for several gradients, Neel start",
       "100 realizations instead of 1800",
       R"({
  "experiment": "qfi_trace",
  "model": {"sites": 8, "J_mhz": 4, "B0_mhz": 100, "g_mhz": 0,
            "disorder": {"law": "gaussian", "width_mhz": 4}},
  "grid": [{"param": "g_mhz", "min": 0, "max": 400, "points": 5}],
  "run": {"realizations": 100, "master_seed": 20260110, "initial_state": "neel",
          "sample_window": {"jt_min": 1, "jt_max": 10000, "samples": 40}},
  "output": {"directory": "out/qfi-vs-time"}
})"},
      {"qfi-late-time",
       "late-time QFI vs gradient for two disorder strengths; the large-g tail "
       "follows alpha (J/g)^2",
       "50 realizations; g spans 30J to 300J on a log grid",
       R"({
  "experiment": "qfi",
  "model": {"sites": 8, "J_mhz": 4, "B0_mhz": 20000, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 0.4}},
  "grid": [{"param": "width_mhz", "min": 0.4, "max": 4, "points": 2, "scale": "log"},
           {"param": "g_mhz", "min": 120, "max": 1200, "points": 8, "scale": "log"}],
  "run": {"realizations": 50, "master_seed": 20260111, "initial_state": "neel",
          "sample_window": {"jt_min": 1000, "jt_max": 10000, "samples": 24}},
  "output": {"directory": "out/qfi-late-time"}
})"},
      {"qfi-vs-time-uniform",
       "QFI vs time with uniform box disorder and varying gradient",
       "8 sites and 100 realizations instead of 12 sites and 4608",
       R"({
  "experiment": "qfi_trace",
  "model": {"sites": 8, "J_mhz": 1, "B0_mhz": 0, "g_mhz": 0,
            "disorder": {"law": "uniform", "width_mhz": 0.5}},
  "grid": [{"param": "g_mhz", "min": 0, "max": 4, "points": 5}],
  "run": {"realizations": 100, "master_seed": 20260112, "initial_state": "neel",
          "sample_window": {"jt_min": 0.1, "jt_max": 1000, "samples": 40}},
  "output": {"directory": "out/qfi-vs-time-uniform"}
})"},
      {"heating-vs-g",
       "absorbed energy Q under the staggered square-pulse drive vs gradient, "
       "with checkpoints showing the approach to a fixed Q(g) curve",
       "1000 periods with the final 125 averaged (full scale: 4000/500); 30 "
       "realizations",
       R"({
  "experiment": "heating",
  "model": {"sites": 8, "J_mhz": 4, "B0_mhz": 100, "g_mhz": 0,
            "disorder": {"law": "gaussian", "width_mhz": 5}},
  "drive": {"kind": "square", "A_mhz": 50, "T_ns": 10000, "duty": 0.5},
  "grid": [{"param": "g_mhz", "min": 0, "max": 400, "points": 9}],
  "run": {"n_periods": 1000, "realizations": 30, "master_seed": 20260113,
          "initial_state": "ground", "checkpoint_periods": [250, 500, 1000],
          "late_window_periods": 125},
  "output": {"directory": "out/heating-vs-g"}
})"},
      {"heating-vs-g-uniform",
       "absorbed energy Q with uniform box disorder",
       "8 sites instead of 12; 1500 periods; 30 realizations",
       R"({
  "experiment": "heating",
  "model": {"sites": 8, "J_mhz": 1, "B0_mhz": 0, "g_mhz": 0,
            "disorder": {"law": "uniform", "width_mhz": 1}},
  "drive": {"kind": "square", "A_mhz": 1, "T_ns": 1000, "duty": 0.4},
  "grid": [{"param": "g_mhz", "min": 0, "max": 4, "points": 9}],
  "run": {"n_periods": 1500, "realizations": 30, "master_seed": 20260114,
          "initial_state": "ground", "checkpoint_periods": [500, 1000, 1500],
          "late_window_periods": 100},
  "output": {"directory": "out/heating-vs-g-uniform"}
})"},
      {"entropy-vs-g",
       "late-time bipartite entanglement entropy per site vs gradient; the "
       "large-g tail decays as a power law",
       "50 realizations at 6 sites",
       R"({
  "experiment": "entropy",
  "model": {"sites": 6, "J_mhz": 4, "B0_mhz": 20000, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 2}},
  "grid": [{"param": "g_mhz", "min": 40, "max": 1200, "points": 10, "scale": "log"}],
  "run": {"realizations": 50, "master_seed": 20260115, "initial_state": "neel",
          "sample_window": {"jt_min": 1000, "jt_max": 10000, "samples": 24}},
  "output": {"directory": "out/entropy-vs-g"}
})"},
      {"pr-vs-g",
       "participation ratio of the Neel state vs gradient for several sizes; "
       "PR -> 1 deep in the localized phase and grows with size when ergodic",
       "10 realizations (the 10-site eigenproblems dominate the runtime)",
       R"({
  "experiment": "participation",
  "model": {"sites": 6, "J_mhz": 4, "B0_mhz": 20000, "g_mhz": 600,
            "disorder": {"law": "gaussian", "width_mhz": 2}},
  "grid": [{"param": "sites", "min": 6, "max": 10, "points": 3},
           {"param": "g_mhz", "min": 0.4, "max": 400, "points": 10, "scale": "log"}],
  "run": {"realizations": 10, "master_seed": 20260116, "initial_state": "neel"},
  "output": {"directory": "out/pr-vs-g"}
})"},
      {"sw-distance",
       "average eigenvalue distance between the gradient Heisenberg and Ising "
       "spectra vs gradient: the 1/g window of the first-order transformation",
       "single realization (no disorder enters)",
       R"({
  "experiment": "sw_checks",
  "model": {"sites": 6, "J_mhz": 1, "B0_mhz": 0, "g_mhz": 100,
            "disorder": {"law": "gaussian", "width_mhz": 0}},
  "grid": [{"param": "sites", "min": 4, "max": 8, "points": 3},
           {"param": "g_mhz", "min": 10, "max": 200, "points": 7, "scale": "log"}],
  "run": {"realizations": 1, "master_seed": 20260117, "initial_state": "neel"},
  "output": {"directory": "out/sw-distance"}
})"},
      {"sw-dressed-onepoint",
       "normalized dressed one-point functions and the two flavors of the "
       "perturbative QFI vs gradient",
       "50 realizations",
       R"({
  "experiment": "sw_checks",
  "model": {"sites": 6, "J_mhz": 1, "B0_mhz": 5000, "g_mhz": 100,
            "disorder": {"law": "gaussian", "width_mhz": 0.5}},
  "grid": [{"param": "g_mhz", "min": 20, "max": 2000, "points": 9, "scale": "log"}],
  "run": {"realizations": 50, "master_seed": 20260118, "initial_state": "neel"},
  "output": {"directory": "out/sw-dressed-onepoint"}
})"},
  };
  return list;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw config_error("unknown preset '" + name + "'; run 'gradtc presets list'");
}

} // namespace gradtc
