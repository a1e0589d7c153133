#include "rfmr/asep.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace rfmr {

int LatticeState::particle_count() const {
    return static_cast<int>(std::accumulate(occupied.begin(), occupied.end(), 0L));
}

LatticeState LatticeState::with_particles(int n, int particles) {
    if (n < 2 || particles < 0 || particles > n)
        throw ConfigError("invalid lattice size or particle count");
    LatticeState s;
    s.occupied.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < particles; ++i) s.occupied[static_cast<size_t>(i)] = 1;
    return s;
}

uint64_t derive_seed(uint64_t base, uint64_t index) {
    uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

AsepResult simulate_asep(const LatticeState& initial, const MCConfig& cfg) {
    const size_t n = initial.occupied.size();
    if (n < 2) throw ConfigError("lattice needs at least 2 sites");
    if (cfg.hop_rates.size() != n) throw ConfigError("hop_rates size must match lattice size");
    for (double r : cfg.hop_rates)
        if (r <= 0.0) throw ConfigError("hop rates must be strictly positive");
    if (cfg.sweeps <= cfg.burn_in || cfg.burn_in < 0)
        throw ConfigError("need sweeps > burn_in >= 0");

    std::vector<uint8_t> occ = initial.occupied;
    const int count0 = initial.particle_count();

    AsepResult out;
    out.density = Vector::Zero(static_cast<Eigen::Index>(n));

    // Frozen lattice (all empty or all full): nothing can ever move.
    if (count0 == 0 || count0 == static_cast<int>(n)) {
        for (size_t i = 0; i < n; ++i) out.density[static_cast<Eigen::Index>(i)] = occ[i];
        out.flux = 0.0;
        return out;
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<double> active(n);
    const long total_events = cfg.sweeps * static_cast<long>(n);
    const long burn_events = cfg.burn_in * static_cast<long>(n);

    for (long ev = 0; ev < total_events; ++ev) {
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            active[i] = (occ[i] && !occ[(i + 1) % n]) ? cfg.hop_rates[i] : 0.0;
            total += active[i];
        }
        const double dt = -std::log1p(-unif(rng)) / total;
        if (ev >= burn_events) {
            for (size_t i = 0; i < n; ++i)
                if (occ[i]) out.density[static_cast<Eigen::Index>(i)] += dt;
            out.time += dt;
        }
        // Pick the firing site proportionally to its active rate.
        double target = unif(rng) * total;
        size_t site = 0;
        for (; site + 1 < n; ++site) {
            target -= active[site];
            if (target <= 0.0) break;
        }
        while (active[site] == 0.0) site = (site + 1) % n;  // round-off guard
        occ[site] = 0;
        occ[(site + 1) % n] = 1;
        if (ev >= burn_events) ++out.hops;
    }

    out.density /= out.time;
    out.flux = static_cast<double>(out.hops) / (static_cast<double>(n) * out.time);
    return out;
}

}  // namespace rfmr
