#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "core/radio.hpp"
#include "core/rng.hpp"

using namespace ctsim;

namespace {
const RadioParams kDefaults;
}

TEST_CASE("rssi at reference points") {
    CHECK(rssi_from_distance(1.0, 0, kDefaults) == doctest::Approx(-40.0).epsilon(1e-12));
    CHECK(rssi_from_distance(2.0, 0, kDefaults) ==
          doctest::Approx(-46.020599913279625).epsilon(1e-12));
    CHECK(rssi_from_distance(10.0, 0, kDefaults) == doctest::Approx(-60.0).epsilon(1e-12));
    CHECK(rssi_from_distance(1.83, 0, kDefaults) ==
          doctest::Approx(-45.24902179460859).epsilon(1e-12));
}

TEST_CASE("distances below the clamp floor read as the floor") {
    CHECK(rssi_from_distance(0.001, 0, kDefaults) ==
          rssi_from_distance(0.01, 0, kDefaults));
    CHECK(rssi_from_distance(0.001, 0, kDefaults) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("each wall subtracts its attenuation") {
    CHECK(rssi_from_distance(1.0, 1, kDefaults) == doctest::Approx(-55.0).epsilon(1e-12));
    CHECK(rssi_from_distance(1.0, 3, kDefaults) == doctest::Approx(-85.0).epsilon(1e-12));
}

TEST_CASE("noise adds straight onto the reading") {
    CHECK(rssi_from_distance(1.0, 0, kDefaults, 3.5) ==
          doctest::Approx(-36.5).epsilon(1e-12));
    CHECK(rssi_from_distance(1.0, 0, kDefaults, -3.5) ==
          doctest::Approx(-43.5).epsilon(1e-12));
}

TEST_CASE("distance estimates at reference points") {
    CHECK(distance_from_rssi(-40.0, kDefaults) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(distance_from_rssi(-75.0, kDefaults) ==
          doctest::Approx(56.23413251903491).epsilon(1e-12));
    CHECK(distance_from_rssi(-55.0, kDefaults) ==
          doctest::Approx(5.623413251903491).epsilon(1e-12));
}

TEST_CASE("non-default parameters stay consistent") {
    RadioParams params;
    params.path_loss_exponent = 3.0;
    params.system_constant_dbm = -50.0;
    const double r = rssi_from_distance(5.0, 0, params);
    CHECK(r == doctest::Approx(-70.96910013008056).epsilon(1e-12));
    CHECK(distance_from_rssi(r, params) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("round trip is tight across the whole working range") {
    int checked = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        RadioParams params;
        params.path_loss_exponent = 1.5 + 3.0 * rng::uniform01(rng::key(5, i, 0));
        params.system_constant_dbm = -70.0 + 40.0 * rng::uniform01(rng::key(5, i, 1));
        const double d = 0.01 + 99.99 * rng::uniform01(rng::key(5, i, 2));
        const double back = distance_from_rssi(rssi_from_distance(d, 0, params), params);
        CHECK(std::abs(back - d) / d < 1e-9);
        ++checked;
    }
    CHECK(checked == 2000);
}

TEST_CASE("rssi decreases with distance, estimate decreases with rssi") {
    double prev = rssi_from_distance(0.02, 0, kDefaults);
    for (double d = 0.1; d < 60.0; d += 1.7) {
        const double cur = rssi_from_distance(d, 0, kDefaults);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(distance_from_rssi(-50.0, kDefaults) > distance_from_rssi(-45.0, kDefaults));
}

TEST_CASE("walls and positive noise only inflate the estimate") {
    for (int walls = 0; walls < 4; ++walls) {
        const double est = distance_from_rssi(rssi_from_distance(2.0, walls, kDefaults),
                                              kDefaults);
        CHECK(est >= 2.0 * (1.0 - 1e-12));
        if (walls > 0) CHECK(est > 2.0);
    }
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(rssi_from_distance(-1.0, 0, kDefaults), std::invalid_argument);
    CHECK_THROWS_AS(rssi_from_distance(1.0, -1, kDefaults), std::invalid_argument);
    CHECK_THROWS_AS(rssi_from_distance(std::nan(""), 0, kDefaults), std::invalid_argument);

    RadioParams bad = kDefaults;
    bad.path_loss_exponent = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kDefaults;
    bad.noise_sigma_db = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kDefaults;
    bad.wall_attenuation_db = -0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kDefaults;
    bad.min_distance_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kDefaults;
    bad.system_constant_dbm = std::nan("");
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
