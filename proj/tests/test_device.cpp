#include <doctest.h>

#include <set>

#include "core/device.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"

using namespace ctsim;

namespace {

AnonymousId id_of(std::uint64_t n) { return AnonymousId{0, n}; }

// Signal levels on either side of the critical distance for default params
// (reference -40 dBm at 1 m, exponent 2): 0.5 m is well inside, 3 m is well
// outside, and -40 dBm decodes to exactly 1 m.
constexpr double kNearRssi = -33.9;
constexpr double kFarRssi = -49.6;

} // namespace

TEST_CASE("risky contacts are stored, distant ones are not") {
    DeviceState dev(id_of(1));
    const RadioParams params;
    CHECK(dev.on_beacon(id_of(2), kNearRssi, 10, params));
    CHECK_FALSE(dev.on_beacon(id_of(3), kFarRssi, 10, params));
    CHECK(dev.contact_count() == 1);
    const auto contacts = dev.export_contacts();
    REQUIRE(contacts.size() == 1);
    CHECK(contacts[0].peer == id_of(2));
    CHECK(contacts[0].first_contact == 10);
    CHECK(contacts[0].encounter_count == 1);
}

TEST_CASE("the distance comparison is strict") {
    // -40 dBm estimates exactly 1.0 m. With the limit set to that same
    // value the contact is not risky; just under it, it is.
    DeviceState at_limit(id_of(1), 1.0);
    const RadioParams params;
    CHECK_FALSE(at_limit.on_beacon(id_of(2), -40.0, 0, params));
    CHECK(at_limit.contact_count() == 0);

    DeviceState above_limit(id_of(1), 1.0 + 1e-9);
    CHECK(above_limit.on_beacon(id_of(2), -40.0, 0, params));
}

TEST_CASE("re-contact window debounces the encounter count") {
    DeviceState dev(id_of(1));
    const RadioParams params;
    const AnonymousId peer = id_of(2);

    CHECK(dev.on_beacon(peer, kNearRssi, 0, params));
    CHECK(dev.on_beacon(peer, kNearRssi, 5, params));  // inside window
    CHECK(dev.on_beacon(peer, kNearRssi, 25, params)); // still inside
    auto contacts = dev.export_contacts();
    REQUIRE(contacts.size() == 1);
    CHECK(contacts[0].encounter_count == 1);

    CHECK(dev.on_beacon(peer, kNearRssi, 30, params)); // window elapsed
    contacts = dev.export_contacts();
    CHECK(contacts[0].encounter_count == 2);
    CHECK(contacts[0].first_contact == 0);
    CHECK(contacts[0].last_counted == 30);

    // The window restarts from the last counted encounter.
    CHECK(dev.on_beacon(peer, kNearRssi, 59, params));
    CHECK(dev.export_contacts()[0].encounter_count == 2);
    CHECK(dev.on_beacon(peer, kNearRssi, 60, params));
    CHECK(dev.export_contacts()[0].encounter_count == 3);
}

TEST_CASE("a debounced beacon still reports risky") {
    DeviceState dev(id_of(1));
    const RadioParams params;
    CHECK(dev.on_beacon(id_of(2), kNearRssi, 0, params));
    CHECK(dev.on_beacon(id_of(2), kNearRssi, 1, params));
    CHECK(dev.export_contacts()[0].encounter_count == 1);
}

TEST_CASE("hearing our own id is a wiring bug") {
    DeviceState dev(id_of(7));
    CHECK_THROWS_AS(dev.on_beacon(id_of(7), kNearRssi, 0, RadioParams{}), InvariantError);
}

TEST_CASE("nonpositive critical distance is rejected") {
    CHECK_THROWS_AS(DeviceState(id_of(1), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DeviceState(id_of(1), -1.0), std::invalid_argument);
}

TEST_CASE("export is sorted by first contact then peer") {
    DeviceState dev(id_of(1));
    const RadioParams params;
    dev.on_beacon(id_of(9), kNearRssi, 50, params);
    dev.on_beacon(id_of(4), kNearRssi, 10, params);
    dev.on_beacon(id_of(3), kNearRssi, 50, params);
    const auto contacts = dev.export_contacts();
    REQUIRE(contacts.size() == 3);
    CHECK(contacts[0].peer == id_of(4));
    CHECK(contacts[1].peer == id_of(3)); // same minute, lower token first
    CHECK(contacts[2].peer == id_of(9));
}

TEST_CASE("random beacon streams never store duplicate peers") {
    const RadioParams params;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        DeviceState dev(id_of(1000));
        std::set<AnonymousId> risky_peers;
        for (int i = 0; i < 200; ++i) {
            const std::uint64_t k = rng::key(0xdeb0u, trial, static_cast<std::uint64_t>(i));
            const AnonymousId peer = id_of(2000 + k % 17);
            const Minutes now = static_cast<Minutes>(rng::key(k, 1u) % 600);
            const double rssi = -30.0 - 30.0 * rng::uniform01(rng::key(k, 2u));
            if (dev.on_beacon(peer, rssi, now, params)) risky_peers.insert(peer);
        }
        CHECK(dev.contact_count() == risky_peers.size());
        const auto contacts = dev.export_contacts();
        std::set<AnonymousId> stored;
        for (const auto& c : contacts) {
            CHECK(risky_peers.count(c.peer) == 1);
            stored.insert(c.peer);
        }
        CHECK(stored.size() == contacts.size());
    }
}
