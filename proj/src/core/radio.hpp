#pragma once

namespace ctsim {

/// Parameters of the log-distance path-loss channel,
///   rssi = -10 n log10(d) + C,
/// plus the additive terms layered on top of it: per-wall attenuation and
/// optional Gaussian noise on the received signal.
struct RadioParams {
    /// Environment-dependent decay rate; 2.0 is free space.
    double path_loss_exponent = 2.0;
    /// Signal strength at the 1 m reference distance.
    double system_constant_dbm = -40.0;
    /// Std-dev of additive noise on RSSI. 0 keeps runs deterministic.
    double noise_sigma_db = 0.0;
    /// Loss added per wall crossed by the line of sight.
    double wall_attenuation_db = 15.0;
    /// Clamp floor; the model diverges at d = 0.
    double min_distance_m = 0.01;

    /// Throws std::invalid_argument unless all fields are finite,
    /// path_loss_exponent > 0, min_distance_m > 0, and the noise and wall
    /// terms are non-negative.
    void validate() const;
};

/// RSSI observed at `distance_m` through `walls_crossed` walls, with
/// `noise_db` added on top. Distances below the clamp floor are raised to
/// it. Throws std::invalid_argument on negative/non-finite inputs.
double rssi_from_distance(double distance_m, int walls_crossed, const RadioParams& params,
                          double noise_db = 0.0);

/// Distance estimate implied by an RSSI reading; inverts the path-loss
/// model, so walls and noise on the signal inflate the estimate. Always
/// returns a positive value.
double distance_from_rssi(double rssi_dbm, const RadioParams& params);

} // namespace ctsim
