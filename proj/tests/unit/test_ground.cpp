#include <doctest.h>

#include <cmath>
#include <random>

#include "satpass/constants.hpp"
#include "satpass/errors.hpp"
#include "satpass/ground_station.hpp"
#include "support/test_support.hpp"

using namespace satpass;

TEST_CASE("stations csv happy path") {
    const auto stations = load_stations(
        "name,lat_deg,lon_deg,alt_km,min_elev_deg\n"
        "GS2_Calgary,51.05,-114.07,1.045,25\n");
    REQUIRE(stations.size() == 1);
    CHECK(stations[0].name == "GS2_Calgary");
    CHECK(stations[0].latitude_deg == 51.05);
    CHECK(stations[0].longitude_deg == -114.07);
    CHECK(stations[0].altitude_km == 1.045);
    CHECK(stations[0].min_elevation_deg == 25.0);
}

TEST_CASE("stations csv edge cases") {
    // empty data section
    CHECK(load_stations("name,lat_deg,lon_deg,alt_km,min_elev_deg\n").empty());

    // CRLF and longitude normalization
    const auto crlf = load_stations(
        "name,lat_deg,lon_deg,alt_km,min_elev_deg\r\nA,10,190,0,5\r\n");
    REQUIRE(crlf.size() == 1);
    CHECK(crlf[0].longitude_deg == doctest::Approx(-170.0));

    CHECK_THROWS_WITH_AS(load_stations("name,lat_deg,lon_deg,alt_km,min_elev_deg\n"
                                       "A,91,0,0,25\n"),
                         doctest::Contains("row 2"), ParseError);
    CHECK_THROWS_WITH_AS(load_stations("name,lat_deg,lon_deg,alt_km,min_elev_deg\n"
                                       "A,10,0,0,25\nB,11,0,0,25\nA,12,0,0,25\n"),
                         doctest::Contains("duplicate"), ParseError);
    CHECK_THROWS_WITH_AS(load_stations("name,lat_deg,lon_deg,alt_km,min_elev_deg\n"
                                       "A,10,0,0\n"),
                         doctest::Contains("row 2"), ParseError);
    CHECK_THROWS_WITH_AS(load_stations("name,lat_deg,lon_deg,alt_km,min_elev_deg\n"
                                       "A,ten,0,0,25\n"),
                         doctest::Contains("malformed latitude"), ParseError);
    CHECK_THROWS_AS(load_stations("lat,lon"), ParseError);
    CHECK_THROWS_AS(load_stations(""), ParseError);
    // mask bound
    CHECK_THROWS_AS(load_stations("name,lat_deg,lon_deg,alt_km,min_elev_deg\nA,0,0,0,90\n"),
                    ParseError);
}

TEST_CASE("default stations file loads") {
    const auto stations = load_stations_file(satpass::test::data_dir() / "stations.csv");
    REQUIRE(stations.size() == 3);
    CHECK(stations[0].name == "GS1_Iqaluit");
    CHECK(stations[1].name == "GS2_Calgary");
    CHECK(stations[2].name == "GS3_Cayenne");
    for (const auto& st : stations) CHECK(st.min_elevation_deg == 25.0);

    const auto network = load_stations_file(satpass::test::data_dir() / "network_stations.csv");
    CHECK(network.size() == 26);
}

TEST_CASE("zenith look angles") {
    GroundStation st{"site", 37.0, -15.0, 0.0, 25.0};
    const double lat = deg_to_rad(st.latitude_deg), lon = deg_to_rad(st.longitude_deg);
    const Vec3 up{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
    const Vec3 sat = station_ecef(st) + up * 500.0;

    const LookAngles look = look_angles(st, sat);
    CHECK(look.elevation_deg == doctest::Approx(90.0).epsilon(1e-9));
    CHECK(look.range_km == doctest::Approx(500.0).epsilon(1e-12));
}

TEST_CASE("horizon-plane satellite has zero elevation") {
    GroundStation st{"site", -33.0, 151.0, 0.1, 10.0};
    const double lat = deg_to_rad(st.latitude_deg), lon = deg_to_rad(st.longitude_deg);
    const Vec3 north{-std::sin(lat) * std::cos(lon), -std::sin(lat) * std::sin(lon), std::cos(lat)};
    const Vec3 east{-std::sin(lon), std::cos(lon), 0.0};

    const LookAngles look_n = look_angles(st, station_ecef(st) + north * 1000.0);
    CHECK(std::abs(look_n.elevation_deg) < 1e-9);
    CHECK(look_n.azimuth_deg == doctest::Approx(0.0).epsilon(1e-9));

    const LookAngles look_e = look_angles(st, station_ecef(st) + east * 700.0);
    CHECK(std::abs(look_e.elevation_deg) < 1e-9);
    CHECK(look_e.azimuth_deg == doctest::Approx(90.0).epsilon(1e-9));
}

TEST_CASE("equatorial geometry reference") {
    GroundStation st{"eq", 0.0, 0.0, 0.0, 25.0};
    const LookAngles look = look_angles(st, Vec3{7000.0, 0.0, 0.0});
    CHECK(look.elevation_deg == doctest::Approx(90.0).epsilon(1e-9));
    CHECK(look.range_km == doctest::Approx(7000.0 - 6378.137).epsilon(1e-12));
}

TEST_CASE("range equals the ecef chord") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> lat(-89.0, 89.0), lon(-180.0, 180.0);
    std::uniform_real_distribution<double> coord(-9000.0, 9000.0);
    for (int i = 0; i < 200; ++i) {
        GroundStation st{"r", lat(rng), wrap_longitude_deg(lon(rng)), 0.2, 5.0};
        const Vec3 sat{coord(rng), coord(rng), coord(rng)};
        if ((sat - station_ecef(st)).norm() < 1.0) continue;
        CHECK(look_angles(st, sat).range_km ==
              doctest::Approx((sat - station_ecef(st)).norm()).epsilon(1e-13));
    }
}

namespace {

Vec3 rotate_z(const Vec3& v, double a) {
    return {std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y, v.z};
}
Vec3 rotate_x(const Vec3& v, double a) {
    return {v.x, std::cos(a) * v.y - std::sin(a) * v.z, std::sin(a) * v.y + std::cos(a) * v.z};
}

}  // namespace

TEST_CASE("elevation is rotation-invariant on a spherical earth") {
    const Ellipsoid sphere{EARTH_EQUATORIAL_RADIUS, EARTH_EQUATORIAL_RADIUS};
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> lat(-80.0, 80.0), lon(-180.0, 180.0);
    std::uniform_real_distribution<double> ang(0.0, TWO_PI);
    std::uniform_real_distribution<double> r(6800.0, 8000.0);

    for (int i = 0; i < 100; ++i) {
        GroundStation st{"s", lat(rng), wrap_longitude_deg(lon(rng)), 0.0, 5.0};
        Vec3 sat{r(rng), 0.0, 0.0};
        sat = rotate_x(rotate_z(sat, ang(rng)), ang(rng));

        const double el0 = look_angles(st, sat, sphere).elevation_deg;

        const double az = ang(rng), bx = ang(rng);
        const Vec3 site_rot = rotate_x(rotate_z(station_ecef(st, sphere), az), bx);
        const Vec3 sat_rot = rotate_x(rotate_z(sat, az), bx);
        // on the sphere geodetic and geocentric coordinates coincide
        GroundStation st_rot{"s2",
                             rad_to_deg(std::asin(site_rot.z / site_rot.norm())),
                             wrap_longitude_deg(rad_to_deg(std::atan2(site_rot.y, site_rot.x))),
                             0.0, 5.0};
        const double el1 = look_angles(st_rot, sat_rot, sphere).elevation_deg;
        CHECK(el0 == doctest::Approx(el1).epsilon(1e-9));
    }
}

TEST_CASE("visibility is exactly the mask comparison") {
    GroundStation st{"v", 20.0, 30.0, 0.0, 25.0};
    const double lat = deg_to_rad(st.latitude_deg), lon = deg_to_rad(st.longitude_deg);
    const Vec3 up{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
    const Vec3 north{-std::sin(lat) * std::cos(lon), -std::sin(lat) * std::sin(lon), std::cos(lat)};

    auto at_elevation = [&](double elev_deg) {
        const double e = deg_to_rad(elev_deg);
        return station_ecef(st) + (north * std::cos(e) + up * std::sin(e)) * 1500.0;
    };
    CHECK(visible(st, at_elevation(25.01)));
    CHECK_FALSE(visible(st, at_elevation(24.99)));
    CHECK(look_angles(st, at_elevation(40.0)).elevation_deg == doctest::Approx(40.0).epsilon(1e-9));
}

TEST_CASE("coincident satellite is rejected") {
    GroundStation st{"c", 10.0, 10.0, 0.0, 5.0};
    CHECK_THROWS_AS(look_angles(st, station_ecef(st)), std::invalid_argument);
}

TEST_CASE("station validation") {
    GroundStation st{"ok", 45.0, 45.0, 0.0, 10.0};
    CHECK_NOTHROW(st.validate());
    st.min_elevation_deg = -1.0;
    CHECK_THROWS_AS(st.validate(), std::invalid_argument);
    st.min_elevation_deg = 10.0;
    st.latitude_deg = -91.0;
    CHECK_THROWS_AS(st.validate(), std::invalid_argument);
}
