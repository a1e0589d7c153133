#pragma once

#include "rfmr/rates.hpp"

#include <cstdint>

namespace rfmr {

struct LatticeState {
    std::vector<uint8_t> occupied;  // 1 = particle present

    int particle_count() const;
    static LatticeState with_particles(int n, int particles);  // front-loaded fill
};

struct MCConfig {
    uint64_t seed = 1;
    long sweeps = 1000;    // one sweep = n fired events
    long burn_in = 100;    // sweeps discarded before averaging
    std::vector<double> hop_rates;
};

struct AsepResult {
    Vector density;     // time-averaged per-site occupancy after burn-in
    double flux;        // hops per site per unit time after burn-in
    long hops = 0;      // counted hops after burn-in
    double time = 0.0;  // simulated time after burn-in
};

/// Continuous-time random-sequential exclusion process on a ring: every
/// occupied site i with an empty successor carries an exponential clock with
/// rate hop_rates[i]; events are drawn Gillespie-style. Particle count is
/// conserved exactly. RNG: std::mt19937_64 (fully specified by the C++
/// standard, hence reproducible across platforms); replica seeds should be
/// derived via splitmix64.
AsepResult simulate_asep(const LatticeState& initial, const MCConfig& cfg);

/// splitmix64 step, for deriving independent replica seeds from a base seed.
uint64_t derive_seed(uint64_t base, uint64_t index);

}  // namespace rfmr
