#pragma once

#include <cstdint>
#include <vector>

#include "areosync/controller.hpp"
#include "areosync/network.hpp"
#include "areosync/orbital_dynamics.hpp"

namespace areosync {

/// One state component's sampling window: uniform on [nominal - hw, nominal + hw].
struct UniformWindow {
  double nominal = 0.0;
  double half_width = 0.0;
};

/// kClustered places every satellite's nominal angle at theta.nominal (batch
/// deployment). kSpaced staggers satellite i by -i * 2*pi/N on top of its
/// draw, which starts the constellation at the acquired spacing.
enum class ThetaMode { kClustered, kSpaced };

struct InitialConditionSpec {
  UniformWindow r{20428.0e3, 100.0};     // m
  UniformWindow v{0.0, 1e-8};            // m/s
  UniformWindow omega{7.0879e-5, 1e-7};  // rad/s
  UniformWindow theta{0.0, 5e-3};        // rad
  ThetaMode theta_mode = ThetaMode::kClustered;
};

struct Scenario {
  PlanetModel planet;
  std::vector<MoonModel> moons;
  int n_sats = 10;
  double sat_mass = 100.0;  // kg, uniform across the constellation
  DesiredOrbit desired;
  GainSet gains;
  InitialConditionSpec ic;
  double dt = 10.0;                  // s
  double horizon = 0.0;              // s; run() snaps it to the logging grid
  std::uint64_t seed = 0;
  bool moons_enabled = true;
  bool coordination_enabled = true;  // false zeroes the u channel
  SaturationMode saturation_mode = SaturationMode::kWarnOnly;
  double tau_max = 0.1;              // N per axis
  double logging_interval = 1000.0;  // s, integer multiple of dt
  double acquisition_tol_deg = 0.5;
  LinkOutputFn link_output_fn;       // affine at 2*pi/N unless customized

  Phase phase_at(double t) const {
    return t <= gains.t_f ? Phase::kAcquisition : Phase::kStationKeeping;
  }

  /// Throws ValidationError listing every violated constraint.
  void validate() const;
};

/// Built-in "mars-example" scenario: N = 10 satellites in areostationary
/// orbit, Phobos and Deimos perturbations, paper-horizon defaults.
Scenario mars_example_scenario();

}  // namespace areosync
