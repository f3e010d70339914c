#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "satpass/frames.hpp"
#include "satpass/vec3.hpp"

namespace satpass {

struct GroundStation {
    std::string name;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;   // normalized to (-180, 180]
    double altitude_km = 0.0;
    double min_elevation_deg = 0.0;

    void validate() const;
};

struct LookAngles {
    double elevation_deg = 0.0;   // [-90, 90]
    double azimuth_deg = 0.0;     // [0, 360), clockwise from north
    double range_km = 0.0;
};

/// Parses the stations CSV (header name,lat_deg,lon_deg,alt_km,min_elev_deg).
/// Malformed rows and duplicate names are fatal; messages carry the row
/// number.
std::vector<GroundStation> load_stations(std::string_view csv_content);
std::vector<GroundStation> load_stations_file(const std::filesystem::path& file);

Vec3 station_ecef(const GroundStation& station, const Ellipsoid& ellipsoid = WGS84);

/// Topocentric ENU decomposition about the geodetic normal. Throws when the
/// satellite coincides with the station.
LookAngles look_angles(const GroundStation& station, const Vec3& satellite_ecef_km,
                       const Ellipsoid& ellipsoid = WGS84);

/// The one visibility definition used everywhere downstream:
/// elevation >= the station mask.
bool visible(const GroundStation& station, const Vec3& satellite_ecef_km);

}  // namespace satpass
