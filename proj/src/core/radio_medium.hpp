#pragma once

#include <cstdint>

namespace v2x {

// Radio parameters of one scenario. Defaults follow the common DSRC urban
// setup this project benchmarks: 25 dBm TX at 5.9 GHz, 9 dBi antennas, 3 dB
// system loss, -93 dBm sensitivity, exponent 2.4, 1 km cull boundary, 140 B
// beacons every 0.1 s.
struct RadioConfig {
    double tx_power_dbm = 25.0;
    double antenna_gain_tx_dbi = 9.0;
    double antenna_gain_rx_dbi = 9.0;
    double system_loss_db = 3.0;
    double rx_sensitivity_dbm = -93.0;
    double carrier_frequency_hz = 5.9e9;
    double bandwidth_hz = 10e6;
    double pathloss_exponent = 2.4;
    double distance_boundary_m = 1000.0;
    std::uint32_t message_length_bytes = 140;
    double beacon_interval_s = 0.1;

    void validate() const; // throws Error(config) on violated invariants
};

inline constexpr double kPathlossReferenceM = 1.0;

// Log-distance pathloss with a free-space reference term at 1 m:
// PL(d) = 20*log10(4*pi*d0*f/c) + 10*n*log10(d/d0). Distances below the
// reference clamp to it so co-located vehicles cannot yield negative loss.
double pathloss_db(double distance_m, const RadioConfig& cfg);

// Link budget: tx power + gains - system loss - pathloss + 10*log10(factor).
// A zero obstacle factor yields -infinity dBm.
double received_power_dbm(double pathloss_db, double obstacle_power_factor,
                          const RadioConfig& cfg);

// Distance cull: strictly greater than the boundary is non-deliverable and
// skips all environment queries; a link exactly at the boundary is evaluated.
bool cull_by_boundary(double distance_m, const RadioConfig& cfg);

// Outcome of one TX->RX pair. For culled links pathloss, obstacle loss and
// rx power are unset (NaN). Under the ideal model a blocked link carries
// +inf obstacle loss and -inf rx power.
struct LinkResult {
    std::int32_t tx_id = -1;
    std::int32_t rx_id = -1;
    double distance_m = 0.0;
    double pathloss_db = 0.0;
    double obstacle_loss_db = 0.0;
    double rx_power_dbm = 0.0;
    bool delivered = false;
    bool culled = false;
};

} // namespace v2x
