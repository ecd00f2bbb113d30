#include "mdw/scenario.hpp"

namespace mdw {

namespace {

const char* kModeBlocks = R"(# per-mode solution operator: closed-form consistency and semigroup law
experiment = linear-check
criteria = [1]
model {
  dim = 1
  modes_n = 8
  gamma_damping = 0.5
}
checks {
  mode_blocks = true
  trials = 1000
}
)";

const char* kDuhamelOracle = R"(# measure Duhamel vs an independent adaptive per-mode integrator
experiment = linear-check
criteria = [2]
model {
  dim = 1
  modes_n = 8
  gamma_damping = 0.5
}
checks {
  duhamel_oracle = true
}
)";

const char* kJumpFormula = R"(# velocity jump at atoms equals the point mass
experiment = linear-check
criteria = [3]
model {
  dim = 1
  modes_n = 8
  gamma_damping = 0.5
}
checks {
  jump_formula = true
  jump_trials = 100
}
)";

const char* kEnergyOrder = R"(# energy-identity residual halves x4 under dt halving
experiment = simulate
criteria = [4]
model {
  dim = 1
  modes_n = 32
  gamma_damping = 1.0
  f_family = quintic
}
forcing {
  family = periodic
  dim = 31
  period_seconds = 1.0
  # breakpoints on multiples of 0.1 so every swept dt hits them exactly
  density {
    breakpoints_seconds = [0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
    channel = (0, [0, 0.59, 0.95, 0.95, 0.59, 0, -0.59, -0.95, -0.95, -0.59, 0])
    channel = (1, [1, 0.81, 0.31, -0.31, -0.81, -1, -0.81, -0.31, 0.31, 0.81, 1])
    channel = (3, [0.5, 0.3, -0.1, -0.45, -0.4, 0, 0.4, 0.45, 0.1, -0.3, -0.5])
  }
}
run {
  tau_seconds = 0
  t_end_seconds = 1.0
  dt_seconds = 0.01
  initial = random
  initial_energy = 1.0
}
checks {
  residual_halving_dts = [0.01, 0.005, 0.0025]
}
)";

const char* kAtomEnergy = R"(# atom work matches the kinetic jump on a 50-atom run
experiment = simulate
criteria = [5]
model {
  dim = 1
  modes_n = 16
  gamma_damping = 1.0
  f_family = quintic
}
forcing {
  family = periodic
  dim = 15
  period_seconds = 5.0
  atoms {
    atom = (0.05, 0, 0.31)
    atom = (0.15, 1, -0.22)
    atom = (0.25, 2, 0.17)
    atom = (0.35, 3, -0.41)
    atom = (0.45, 4, 0.12)
    atom = (0.55, 5, 0.27)
    atom = (0.65, 6, -0.19)
    atom = (0.75, 7, 0.34)
    atom = (0.85, 8, -0.28)
    atom = (0.95, 9, 0.21)
    atom = (1.1, 0, -0.3)
    atom = (1.3, 1, 0.25)
    atom = (1.5, 2, -0.2)
    atom = (1.7, 3, 0.4)
    atom = (1.9, 4, -0.1)
    atom = (2.1, 5, 0.3)
    atom = (2.3, 6, -0.35)
    atom = (2.5, 7, 0.15)
    atom = (2.7, 8, 0.26)
    atom = (2.9, 9, -0.24)
    atom = (3.1, 10, 0.2)
    atom = (3.3, 11, -0.3)
    atom = (3.5, 12, 0.28)
    atom = (3.7, 13, -0.16)
    atom = (3.9, 14, 0.33)
    atom = (4.02, 0, 0.18)
    atom = (4.14, 1, -0.27)
    atom = (4.26, 2, 0.23)
    atom = (4.38, 3, -0.14)
    atom = (4.5, 4, 0.37)
    atom = (4.58, 5, -0.21)
    atom = (4.66, 6, 0.19)
    atom = (4.74, 7, -0.32)
    atom = (4.82, 8, 0.24)
    atom = (4.9, 9, -0.26)
    atom = (0.52, 10, 0.29)
    atom = (1.04, 11, -0.18)
    atom = (1.56, 12, 0.22)
    atom = (2.08, 13, -0.25)
    atom = (2.6, 14, 0.3)
    atom = (3.12, 0, -0.2)
    atom = (3.64, 1, 0.26)
    atom = (4.16, 2, -0.23)
    atom = (4.68, 3, 0.17)
    atom = (0.78, 4, -0.29)
    atom = (1.82, 5, 0.2)
    atom = (2.86, 6, -0.22)
    atom = (3.9499999999999999, 7, 0.27)
    atom = (4.42, 8, -0.15)
    atom = (4.94, 9, 0.25)
  }
}
run {
  tau_seconds = 0
  t_end_seconds = 5.0
  dt_seconds = 0.005
  initial = random
  initial_energy = 1.0
}
checks {
  jump_invariant = true
  atom_energy_accounting = true
}
)";

const char* kLinearDecay = R"(# homogeneous decay slopes per gamma, including the gamma = 10 slow root
experiment = linear-check
criteria = [6]
model {
  dim = 1
  modes_n = 16
  gamma_damping = 1.0
}
checks {
  decay_gammas = [0.5, 1.0, 2.0, 10.0]
}
)";

const char* kMeasureDelta = R"(# delta approximation: distribution sup-distance rate and TV inequality
experiment = measure-approx
criteria = [7]
checks {
  delta_convergence = true
  mollify_convergence = true
}
)";

const char* kMeasureTail = R"(# tail projections: TV nonincreasing, zero past the populated rank
experiment = measure-approx
criteria = [8]
checks {
  tail_variation = true
}
)";

const char* kDissipativity = R"(# absorbing-ball entry for energies 1, 3, 10 under smooth periodic forcing
experiment = attractor
criteria = [9]
model {
  dim = 1
  modes_n = 32
  gamma_damping = 1.0
  f_family = quintic
}
forcing {
  family = periodic
  dim = 31
  period_seconds = 2.0
  density {
    breakpoints_seconds = [0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]
    channel = (0, [0, 0.7, 1, 0.7, 0, -0.7, -1, -0.7, 0])
    channel = (2, [0.5, 0.35, 0, -0.35, -0.5, -0.35, 0, 0.35, 0.5])
    channel = (5, [0.3, 0, -0.3, 0, 0.3, 0, -0.3, 0, 0.3])
  }
}
run {
  t_end_seconds = 50.0
  dt_seconds = 0.02
  transient_seconds = 20.0
}
checks {
  dissipativity = true
  energy_levels = [1.0, 3.0, 10.0]
}
)";

const char* kTranslation = R"(# cocycle identity under time shifts, atoms plus density
experiment = attractor
criteria = [10]
model {
  dim = 1
  modes_n = 16
  gamma_damping = 1.0
  f_family = quintic
}
forcing {
  family = periodic
  dim = 15
  period_seconds = 1.0
  atoms {
    atom = (0.25, 1, 0.4)
    atom = (0.625, 3, -0.3)
  }
  density {
    breakpoints_seconds = [0, 0.25, 0.5, 0.75, 1.0]
    channel = (0, [0.5, 0, -0.5, 0, 0.5])
    channel = (2, [0, 0.4, 0, -0.4, 0])
  }
}
run {
  t_end_seconds = 2.0
  dt_seconds = 0.0078125
}
checks {
  translation_identity = true
  translation_trials = 10
}
)";

const char* kOdePerturbed = R"(# spiked arctan model: uniform attractor exceeds the union of kernels
experiment = kernel-vs-attractor
criteria = [11]
forcing {
  family = profile
  dim = 1
  c0 = 0
  c1 = 3
  spikes {
    kind = pairs
    start_seconds = 50.0
    spacing_seconds = 50.0
    mass = 0.5
    sep0_seconds = 0.02
  }
}
run {
  base_drift = -3.0
  hull_shifts = [0, 49.9, 99.9, 149.9, 199.9]
  start_times = [-300, -100, 40, 90, 140, 190]
  run_length = 60.0
  horizons = [10, 20, 40]
  ic_lo = -3.0
  ic_hi = 2.0
  n_ics = 21
}
checks {
  expect_attractor = [-2.0, 1.5]
  expect_kernel_union = [-2.0, 1.0]
  interval_tol = 0.1
  expect_gap_hi_min = 0.4
}
)";

const char* kOdeUnperturbed = R"(# plain arctan model: attractor equals the union of kernels
experiment = kernel-vs-attractor
criteria = [11]
forcing {
  family = profile
  dim = 1
  c0 = 0
  c1 = 3
}
run {
  base_drift = -3.0
  hull_shifts = [-100, -10, 0, 10, 100]
  start_times = [-300, -100, 40, 90, 140, 190]
  run_length = 60.0
  horizons = [10, 20, 40]
  ic_lo = -3.0
  ic_hi = 2.0
  n_ics = 21
}
checks {
  expect_attractor = [-2.0, 1.0]
  expect_kernel_union = [-2.0, 1.0]
  interval_tol = 0.1
}
)";

const char* kSplitting = R"(# three-way split: decaying v, bounded E^alpha remainder, exact reconstruction
experiment = splitting
criteria = [12]
model {
  dim = 1
  modes_n = 32
  gamma_damping = 1.0
  alpha_reg = 0.25
  f_family = quintic
}
forcing {
  family = periodic
  dim = 31
  period_seconds = 2.0
  density {
    breakpoints_seconds = [0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]
    channel = (0, [0, 0.35, 0.5, 0.35, 0, -0.35, -0.5, -0.35, 0])
    channel = (1, [0.4, 0.28, 0, -0.28, -0.4, -0.28, 0, 0.28, 0.4])
    channel = (2, [0.25, 0, -0.25, 0, 0.25, 0, -0.25, 0, 0.25])
  }
}
run {
  t_end_seconds = 50.0
  dt_seconds = 0.02
  t_split_seconds = 10.0
  shift_L = 0.0
  solver_tolerance = 1e-8
  initial = random
  initial_energy = 2.0
}
)";

const char* kCascade = R"(# telescoping delta cascade with uniform constants over atom counts
experiment = cascade
criteria = [13]
model {
  dim = 1
  modes_n = 16
  gamma_damping = 0.0
  f_family = quintic
}
forcing {
  family = periodic
  dim = 15
  period_seconds = 1.0
  density {
    breakpoints_seconds = [0, 0.25, 0.5, 0.75, 1.0]
    channel = (0, [0.6, 0.3, 0, -0.3, -0.6])
    channel = (1, [0, 0.5, 0.7, 0.5, 0])
  }
}
run {
  dt_seconds = 0.005
  atom_counts = [4, 8, 16]
  initial_energy = 0.5
}
)";

const char* kInequality = R"(# fractional chain-rule ratio tables across resolutions
experiment = inequality
criteria = [14]
run {
  resolutions = [16, 32, 64]
  samples = 100
  alpha_reg = 0.25
}
)";

const char* kSmoke3d = R"(# 3d smoke: single-atom forcing, jump invariant and residual trend
experiment = simulate
criteria = [15]
model {
  dim = 3
  modes_n = 16
  gamma_damping = 1.0
  f_family = quintic
}
forcing {
  family = periodic
  dim = 3375
  period_seconds = 64.0
  atoms {
    atom = (1.0, 0, 0.5)
    atom = (1.0, 2, 0.25)
  }
}
run {
  tau_seconds = 0
  t_end_seconds = 2.0
  dt_seconds = 0.02
  initial = random
  initial_energy = 0.5
  sample_stride = 5
}
checks {
  jump_invariant = true
  atom_energy_accounting = true
  residual_trend = true
}
)";

const char* kDemoScan = R"(# energy/forcing scatter of window-Strichartz output
experiment = attractor
criteria = []
model {
  dim = 1
  modes_n = 16
  gamma_damping = 1.0
  f_family = quintic
}
forcing {
  family = periodic
  dim = 15
  period_seconds = 1.0
  density {
    breakpoints_seconds = [0, 0.25, 0.5, 0.75, 1.0]
    channel = (0, [0.5, 0, -0.5, 0, 0.5])
    channel = (1, [0, 0.4, 0, -0.4, 0])
  }
}
run {
  t_end_seconds = 4.0
  dt_seconds = 0.02
}
checks {
  strichartz_scan = true
  scan_energies = [0, 1.0, 5.0, 10.0]
  scan_forcings = [0, 1.0]
}
)";

const char* kDemoPullback = R"(# pullback attractor approximation under periodic forcing
experiment = attractor
criteria = []
model {
  dim = 1
  modes_n = 8
  gamma_damping = 1.0
  f_family = quintic
}
forcing {
  family = periodic
  dim = 7
  period_seconds = 1.0
  density {
    breakpoints_seconds = [0, 0.25, 0.5, 0.75, 1.0]
    channel = (0, [0.4, 0, -0.4, 0, 0.4])
    channel = (2, [0, 0.3, 0, -0.3, 0])
  }
}
run {
  t_end_seconds = 16.0
  dt_seconds = 0.02
}
checks {
  pullback = true
  pullback_states = 8
  hull_shifts = 4
  horizons = [4, 8, 16]
}
)";

const char* kDemoDecay = R"(# free decay demo: energy is monotone without forcing
experiment = simulate
criteria = []
model {
  dim = 1
  modes_n = 16
  gamma_damping = 1.0
  f_family = quintic
}
run {
  t_end_seconds = 5.0
  dt_seconds = 0.01
  initial = random
  initial_energy = 1.0
}
checks {
  energy_monotone = true
}
)";

const char* kOdeDemo = R"(# complete trajectory of the arctan model runs from -2 to -1
experiment = ode-demo
criteria = []
forcing {
  family = profile
  dim = 1
  c0 = 0
  c1 = 3
}
run {
  base_drift = -3.0
  initial_y = -2.0
  tau_seconds = -60.0
  t_end_seconds = 60.0
}
checks {
  expect_final_y = -1.0
  final_tol = 0.05
}
)";

}  // namespace

const std::map<std::string, std::string>& builtin_scenarios() {
  static const std::map<std::string, std::string> catalog = {
      {"accept01_mode_blocks", kModeBlocks},
      {"accept02_duhamel_oracle", kDuhamelOracle},
      {"accept03_jump_formula", kJumpFormula},
      {"accept04_energy_order", kEnergyOrder},
      {"accept05_atom_energy", kAtomEnergy},
      {"accept06_linear_decay", kLinearDecay},
      {"accept07_measure_delta", kMeasureDelta},
      {"accept08_measure_tail", kMeasureTail},
      {"accept09_dissipativity", kDissipativity},
      {"accept10_translation", kTranslation},
      {"accept11_ode_perturbed", kOdePerturbed},
      {"accept11_ode_unperturbed", kOdeUnperturbed},
      {"accept12_splitting", kSplitting},
      {"accept13_cascade", kCascade},
      {"accept14_inequality", kInequality},
      {"accept15_smoke3d", kSmoke3d},
      {"demo_free_decay", kDemoDecay},
      {"demo_ode_kernel", kOdeDemo},
      {"demo_pullback", kDemoPullback},
      {"demo_strichartz_scan", kDemoScan},
  };
  return catalog;
}

}  // namespace mdw
