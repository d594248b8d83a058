#pragma once

#include <cstdint>

namespace ehcr {

// One underlay link setup. Rayleigh block fading, so the four power gains
// are exponential with the means below; a fresh draw every slot.
//
//   x: SU transmitter -> SU receiver (information link)
//   y: PU transmitter -> SU receiver (interference seen by the SU)
//   g: PU transmitter -> SU harvester (energy source)
//   z: SU transmitter -> PU receiver (interference caused by the SU)
//
// Powers are linear watts, gains dimensionless.
struct SystemParams {
  double mu_x = 1e-3;
  double mu_y = 1e-7;
  double mu_g = 1e-5;
  double mu_z = 1e-6;

  double pt = 1000.0;       // PU transmit power
  double noise = 1e-12;     // SU receiver noise power
  double gamma_th = 1e-12;  // interference the PU receiver tolerates
  double epsilon = 0.01;    // fraction of slots allowed to exceed gamma_th

  std::uint64_t m_slots = 10000;  // evaluation slots per run
  std::uint64_t m_train = 10000;  // training slots for calibration
  std::uint64_t seed = 42;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace ehcr
