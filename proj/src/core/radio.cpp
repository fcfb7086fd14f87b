#include "core/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace ctsim {

void RadioParams::validate() const {
    const bool finite = std::isfinite(path_loss_exponent) && std::isfinite(system_constant_dbm) &&
                        std::isfinite(noise_sigma_db) && std::isfinite(wall_attenuation_db) &&
                        std::isfinite(min_distance_m);
    if (!finite) throw std::invalid_argument("radio params must be finite");
    if (path_loss_exponent <= 0.0) throw std::invalid_argument("path_loss_exponent must be > 0");
    if (noise_sigma_db < 0.0) throw std::invalid_argument("noise_sigma_db must be >= 0");
    if (wall_attenuation_db < 0.0) throw std::invalid_argument("wall_attenuation_db must be >= 0");
    if (min_distance_m <= 0.0) throw std::invalid_argument("min_distance_m must be > 0");
}

double rssi_from_distance(double distance_m, int walls_crossed, const RadioParams& params,
                          double noise_db) {
    params.validate();
    if (!std::isfinite(distance_m) || distance_m < 0.0) {
        throw std::invalid_argument("distance must be finite and >= 0");
    }
    if (walls_crossed < 0) throw std::invalid_argument("walls_crossed must be >= 0");
    if (!std::isfinite(noise_db)) throw std::invalid_argument("noise sample must be finite");

    const double d = std::max(distance_m, params.min_distance_m);
    return -10.0 * params.path_loss_exponent * std::log10(d) + params.system_constant_dbm -
           static_cast<double>(walls_crossed) * params.wall_attenuation_db + noise_db;
}

double distance_from_rssi(double rssi_dbm, const RadioParams& params) {
    params.validate();
    if (!std::isfinite(rssi_dbm)) throw std::invalid_argument("rssi must be finite");
    return std::pow(10.0, (params.system_constant_dbm - rssi_dbm) /
                              (10.0 * params.path_loss_exponent));
}

} // namespace ctsim
