#include "satpass/ground_station.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "satpass/constants.hpp"
#include "satpass/errors.hpp"

namespace satpass {

void GroundStation::validate() const {
    if (name.empty()) throw std::invalid_argument("station needs a name");
    if (std::abs(latitude_deg) > 90.0)
        throw std::invalid_argument("station '" + name + "': latitude " +
                                    std::to_string(latitude_deg) + " out of [-90, 90]");
    if (longitude_deg <= -180.0 || longitude_deg > 180.0)
        throw std::invalid_argument("station '" + name + "': longitude not normalized");
    if (min_elevation_deg < 0.0 || min_elevation_deg >= 90.0)
        throw std::invalid_argument("station '" + name + "': minimum elevation " +
                                    std::to_string(min_elevation_deg) + " out of [0, 90)");
}

namespace {

std::vector<std::string> split_csv_row(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_number(const std::string& text, int row, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
        throw ParseError("stations row " + std::to_string(row) + ": malformed " + what +
                         " '" + text + "'");
    return v;
}

}  // namespace

std::vector<GroundStation> load_stations(std::string_view csv_content) {
    std::vector<GroundStation> stations;
    std::set<std::string> seen;

    int row = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos <= csv_content.size()) {
        std::size_t eol = csv_content.find('\n', pos);
        if (eol == std::string_view::npos) eol = csv_content.size();
        std::string_view line = csv_content.substr(pos, eol - pos);
        const bool at_end = eol == csv_content.size();
        pos = eol + 1;
        ++row;

        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line.empty()) {
            if (at_end) break;
            continue;
        }

        if (!header_seen) {
            if (line != "name,lat_deg,lon_deg,alt_km,min_elev_deg")
                throw ParseError("stations row 1: expected header "
                                 "name,lat_deg,lon_deg,alt_km,min_elev_deg");
            header_seen = true;
            if (at_end) break;
            continue;
        }

        const auto fields = split_csv_row(line);
        if (fields.size() != 5)
            throw ParseError("stations row " + std::to_string(row) + ": expected 5 fields, got " +
                             std::to_string(fields.size()));

        GroundStation st;
        st.name = fields[0];
        st.latitude_deg = parse_number(fields[1], row, "latitude");
        st.longitude_deg = wrap_longitude_deg(parse_number(fields[2], row, "longitude"));
        st.altitude_km = parse_number(fields[3], row, "altitude");
        st.min_elevation_deg = parse_number(fields[4], row, "minimum elevation");
        try {
            st.validate();
        } catch (const std::invalid_argument& e) {
            throw ParseError("stations row " + std::to_string(row) + ": " + e.what());
        }
        if (!seen.insert(st.name).second)
            throw ParseError("stations row " + std::to_string(row) + ": duplicate station name '" +
                             st.name + "'");
        stations.push_back(std::move(st));
        if (at_end) break;
    }
    if (!header_seen) throw ParseError("stations file is empty (header row required)");
    return stations;
}

std::vector<GroundStation> load_stations_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot open stations file: " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_stations(buffer.str());
}

Vec3 station_ecef(const GroundStation& station, const Ellipsoid& ellipsoid) {
    return geodetic_to_ecef(deg_to_rad(station.latitude_deg), deg_to_rad(station.longitude_deg),
                            station.altitude_km, ellipsoid);
}

LookAngles look_angles(const GroundStation& station, const Vec3& satellite_ecef_km,
                       const Ellipsoid& ellipsoid) {
    const Vec3 site = station_ecef(station, ellipsoid);
    const Vec3 d = satellite_ecef_km - site;
    const double range = d.norm();
    if (range <= 1e-9)
        throw std::invalid_argument("satellite coincides with station '" + station.name + "'");

    const double lat = deg_to_rad(station.latitude_deg);
    const double lon = deg_to_rad(station.longitude_deg);
    const double sin_lat = std::sin(lat), cos_lat = std::cos(lat);
    const double sin_lon = std::sin(lon), cos_lon = std::cos(lon);

    // ENU about the geodetic normal
    const double east = -sin_lon * d.x + cos_lon * d.y;
    const double north = -sin_lat * cos_lon * d.x - sin_lat * sin_lon * d.y + cos_lat * d.z;
    const double up = cos_lat * cos_lon * d.x + cos_lat * sin_lon * d.y + sin_lat * d.z;

    LookAngles look;
    look.range_km = range;
    look.elevation_deg = rad_to_deg(std::asin(std::clamp(up / range, -1.0, 1.0)));
    const double az = std::atan2(east, north);
    look.azimuth_deg = rad_to_deg(wrap_two_pi(az));
    return look;
}

bool visible(const GroundStation& station, const Vec3& satellite_ecef_km) {
    return look_angles(station, satellite_ecef_km).elevation_deg >= station.min_elevation_deg;
}

}  // namespace satpass
