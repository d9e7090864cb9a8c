#include "core/radio_medium.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/obstacle_loss.hpp"

namespace v2x {

void RadioConfig::validate() const {
    if (!(carrier_frequency_hz > 0.0))
        fail(ErrorCode::config, "carrier_frequency_hz must be > 0");
    if (!(bandwidth_hz > 0.0))
        fail(ErrorCode::config, "bandwidth_hz must be > 0");
    if (!(pathloss_exponent > 0.0))
        fail(ErrorCode::config, "pathloss_exponent must be > 0");
    if (!(distance_boundary_m > 0.0))
        fail(ErrorCode::config, "distance_boundary_m must be > 0");
    if (!(beacon_interval_s > 0.0))
        fail(ErrorCode::config, "beacon_interval_s must be > 0");
}

double pathloss_db(double distance_m, const RadioConfig& cfg) {
    const double d = std::max(distance_m, kPathlossReferenceM);
    const double reference = 20.0 * std::log10(4.0 * std::numbers::pi * kPathlossReferenceM *
                                               cfg.carrier_frequency_hz / kSpeedOfLightMps);
    return reference +
           10.0 * cfg.pathloss_exponent * std::log10(d / kPathlossReferenceM);
}

double received_power_dbm(double pathloss_db, double obstacle_power_factor,
                          const RadioConfig& cfg) {
    return cfg.tx_power_dbm + cfg.antenna_gain_tx_dbi + cfg.antenna_gain_rx_dbi -
           cfg.system_loss_db - pathloss_db + 10.0 * std::log10(obstacle_power_factor);
}

bool cull_by_boundary(double distance_m, const RadioConfig& cfg) {
    return distance_m > cfg.distance_boundary_m;
}

} // namespace v2x
