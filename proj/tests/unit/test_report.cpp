#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "satpass/errors.hpp"
#include "satpass/report.hpp"
#include "support/test_support.hpp"

using namespace satpass;
using satpass::test::TempDir;
using satpass::test::data_dir;
using satpass::test::read_file;

namespace {

std::filesystem::path write(const std::filesystem::path& dir, const std::string& name,
                            const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    out << body;
    return dir / name;
}

// minimal fast config: tiny Walker shell, short mission
std::filesystem::path demo_config(const TempDir& tmp, const std::string& extra = "") {
    write(tmp.path(), "tiny.json",
          R"({"name":"tiny","shells":[{"pattern":"star","total":6,"planes":2,"phasing":1,)"
          R"("inclination_deg":86.0,"altitude_km":780.0}]})");
    write(tmp.path(), "stations.csv",
          "name,lat_deg,lon_deg,alt_km,min_elev_deg\n"
          "North,78.23,15.39,0.45,25\n"
          "South,-72.01,2.53,1.27,25\n");
    return write(tmp.path(), "run.json",
                 R"({"mission":{"epoch_utc":"2022-05-11T00:00:00Z","duration_s":7200,)"
                 R"("sample_step_s":10,"refine_tolerance_s":0.01},)"
                 R"("constellations":["tiny.json"],"stations_file":"stations.csv")" +
                     extra + "}");
}

std::vector<std::string> csv_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < content.size()) {
        const std::size_t eol = content.find("\r\n", pos);
        REQUIRE(eol != std::string::npos);  // RFC 4180 line endings throughout
        lines.push_back(content.substr(pos, eol - pos));
        pos = eol + 2;
    }
    return lines;
}

}  // namespace

TEST_CASE("run config loading and validation") {
    TempDir tmp("cfg");
    const auto cfg = demo_config(tmp, R"(,"link_rate_bps":1.8e9)");
    const RunConfig config = load_run_config(cfg);
    CHECK(config.mission.duration_s == 7200.0);
    CHECK(config.mission.sample_step_s == 10.0);
    CHECK(config.constellation_files.size() == 1);
    CHECK(config.link_rate_bps == 1.8e9);
    CHECK(config.mission.epoch.julian_date_utc() == doctest::Approx(2459710.5).epsilon(1e-12));

    // unknown key
    write(tmp.path(), "bad1.json", R"({"mission":{"epoch_utc":"2022-05-11T00:00:00Z"},)"
                                   R"("constellations":["tiny.json"],"stations_file":"stations.csv",)"
                                   R"("typo":1})");
    CHECK_THROWS_AS(load_run_config(tmp.path() / "bad1.json"), ConfigError);

    // zero duration fails before any computation
    write(tmp.path(), "bad2.json",
          R"({"mission":{"epoch_utc":"2022-05-11T00:00:00Z","duration_s":0},)"
          R"("constellations":["tiny.json"],"stations_file":"stations.csv"})");
    CHECK_THROWS_AS(load_run_config(tmp.path() / "bad2.json"), ConfigError);

    // missing referenced file
    write(tmp.path(), "bad3.json",
          R"({"mission":{"epoch_utc":"2022-05-11T00:00:00Z"},)"
          R"("constellations":["nope.json"],"stations_file":"stations.csv"})");
    CHECK_THROWS_AS(load_run_config(tmp.path() / "bad3.json"), ConfigError);

    CHECK_THROWS_AS(load_run_config(tmp.path() / "missing.json"), ConfigError);
}

TEST_CASE("access analysis writes the table, manifest and summary") {
    TempDir tmp("access");
    const auto cfg = demo_config(tmp, R"(,"link_rate_bps":1.0e9)");
    const RunConfig config = load_run_config(cfg);

    TempDir out("access_out");
    const ReportResult result = run_access_analysis(config, out.path());

    const auto table = read_file(out.path() / "access_table.csv");
    const auto lines = csv_lines(table);
    REQUIRE(lines.size() == 3);  // header + 2 stations x 1 constellation
    CHECK(lines[0] == "station,constellation,total_satellites,accessible_ratio,Ta_s,gamma");
    CHECK(lines[1].substr(0, 11) == "North,tiny,");

    // gamma column is Ta/duration for every row
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = lines[i].find(',', pos);
            if (comma == std::string::npos) {
                fields.push_back(lines[i].substr(pos));
                break;
            }
            fields.push_back(lines[i].substr(pos, comma - pos));
            pos = comma + 1;
        }
        REQUIRE(fields.size() == 6);
        const double ta = std::stod(fields[4]);
        const double gamma = std::stod(fields[5]);
        CHECK(gamma == doctest::Approx(ta / 7200.0).epsilon(1e-4));
        // seconds carry 3 decimals
        CHECK(fields[4].find('.') == fields[4].size() - 4);
    }

    // manifest captures hashes and outputs; no volatile fields
    const auto manifest = read_file(out.path() / "access_manifest.json");
    CHECK(manifest.find("fnv1a64") != std::string::npos);
    CHECK(manifest.find("access_table.csv") != std::string::npos);
    CHECK(manifest.find("\"version\": \"0.1.0\"") != std::string::npos);

    // data-volume line present when a link rate is configured
    bool volume_line = false;
    for (const auto& line : result.summary_lines)
        if (line.find("data volume bound") != std::string::npos) volume_line = true;
    CHECK(volume_line);

    // re-running the unchanged config is byte-identical
    TempDir out2("access_out2");
    run_access_analysis(config, out2.path());
    CHECK(read_file(out2.path() / "access_table.csv") == table);
    CHECK(read_file(out2.path() / "access_manifest.json") ==
          read_file(out.path() / "access_manifest.json"));
}

TEST_CASE("multi-shell constellations additionally get a per-shell table") {
    TempDir tmp("shells");
    write(tmp.path(), "two.json",
          R"({"name":"two","shells":[)"
          R"({"pattern":"delta","total":4,"planes":2,"phasing":0,"inclination_deg":53.0,)"
          R"("altitude_km":550.0},)"
          R"({"pattern":"delta","total":6,"planes":3,"phasing":1,"inclination_deg":42.0,)"
          R"("altitude_km":610.0}]})");
    write(tmp.path(), "stations.csv",
          "name,lat_deg,lon_deg,alt_km,min_elev_deg\nEq,4.94,-52.33,0.01,25\n");
    const auto cfg = write(tmp.path(), "run.json",
                           R"({"mission":{"epoch_utc":"2022-05-11T00:00:00Z","duration_s":7200,)"
                           R"("sample_step_s":10},)"
                           R"("constellations":["two.json"],"stations_file":"stations.csv"})");

    TempDir out("shells_out");
    run_access_analysis(load_run_config(cfg), out.path());

    const auto by_shell = csv_lines(read_file(out.path() / "access_table_by_shell.csv"));
    REQUIRE(by_shell.size() == 3);  // header + 2 shells
    CHECK(by_shell[0] ==
          "station,constellation,shell,total_satellites,accessible_ratio,Ta_s,gamma");
    CHECK(by_shell[1].find("shell0") != std::string::npos);
    CHECK(by_shell[2].find("shell1") != std::string::npos);

    // constellation row totals the shells: 10 satellites
    const auto table = csv_lines(read_file(out.path() / "access_table.csv"));
    REQUIRE(table.size() == 2);
    CHECK(table[1].find(",10,") != std::string::npos);
}

TEST_CASE("network analysis emits monotone rows per requested size") {
    TempDir tmp("net");
    write(tmp.path(), "tiny.json",
          R"({"name":"tiny","shells":[{"pattern":"star","total":4,"planes":2,"phasing":0,)"
          R"("inclination_deg":86.0,"altitude_km":780.0}]})");
    write(tmp.path(), "stations.csv",
          "name,lat_deg,lon_deg,alt_km,min_elev_deg\nEq,4.94,-52.33,0.01,25\n");
    write(tmp.path(), "network.csv",
          "name,lat_deg,lon_deg,alt_km,min_elev_deg\n"
          "N1,78.23,15.39,0.45,25\n"
          "N2,-72.01,2.53,1.27,25\n"
          "N3,51.05,-114.07,1.045,25\n");
    const auto cfg = write(tmp.path(), "run.json",
                           R"({"mission":{"epoch_utc":"2022-05-11T00:00:00Z","duration_s":7200,)"
                           R"("sample_step_s":10},)"
                           R"("constellations":["tiny.json"],"stations_file":"stations.csv",)"
                           R"("network_stations_file":"network.csv","network_sizes":[1,2,3]})");

    TempDir out("net_out");
    run_network_analysis(load_run_config(cfg), out.path());

    const auto lines = csv_lines(read_file(out.path() / "network_ratio.csv"));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "constellation,n_stations,per_satellite_access_ratio");
    double prev = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t c1 = lines[i].find(',');
        const std::size_t c2 = lines[i].find(',', c1 + 1);
        CHECK(lines[i].substr(0, c1) == "tiny");
        CHECK(lines[i].substr(c1 + 1, c2 - c1 - 1) == std::to_string(i));
        const double ratio = std::stod(lines[i].substr(c2 + 1));
        CHECK(ratio >= prev);
        prev = ratio;
    }
}

TEST_CASE("network analysis requires the network file") {
    TempDir tmp("netmiss");
    const auto cfg = demo_config(tmp);
    CHECK_THROWS_AS(run_network_analysis(load_run_config(cfg), tmp.path()), ConfigError);

    // out-of-range size
    TempDir tmp2("netrange");
    write(tmp2.path(), "tiny.json",
          R"({"name":"tiny","shells":[{"pattern":"star","total":4,"planes":2,"phasing":0,)"
          R"("inclination_deg":86.0,"altitude_km":780.0}]})");
    write(tmp2.path(), "stations.csv",
          "name,lat_deg,lon_deg,alt_km,min_elev_deg\nEq,4.94,-52.33,0.01,25\n");
    const auto cfg2 = write(tmp2.path(), "run.json",
                            R"({"mission":{"epoch_utc":"2022-05-11T00:00:00Z","duration_s":7200,)"
                            R"("sample_step_s":10},)"
                            R"("constellations":["tiny.json"],"stations_file":"stations.csv",)"
                            R"("network_stations_file":"stations.csv","network_sizes":[2]})");
    CHECK_THROWS_AS(run_network_analysis(load_run_config(cfg2), tmp2.path()), ConfigError);
}

TEST_CASE("conjunction screen on the demo shell") {
    const RunConfig config = load_run_config(data_dir() / "configs/conjunction_demo.json");
    TempDir out("conj_out");
    const ReportResult result = run_conjunction_screen(config, out.path());

    REQUIRE(!result.summary_lines.empty());
    CHECK(result.summary_lines[0] == "6 pairs screened, 0 events reported");

    const auto lines = csv_lines(read_file(out.path() / "conjunction_events.csv"));
    REQUIRE(lines.size() == 1);  // header only
    CHECK(lines[0] == "sat_a,sat_b,tca_s,miss_km");
}

TEST_CASE("conjunction threshold above the pair separation reports the pair") {
    TempDir tmp("conjpair");
    // two satellites on one plane, antipodal: separation is the diameter
    write(tmp.path(), "pair.json",
          R"({"name":"we,ird","shells":[{"pattern":"delta","total":2,"planes":1,"phasing":0,)"
          R"("inclination_deg":53.0,"altitude_km":550.0}]})");
    write(tmp.path(), "stations.csv",
          "name,lat_deg,lon_deg,alt_km,min_elev_deg\nEq,0,0,0,25\n");
    const auto cfg = write(tmp.path(), "run.json",
                           R"({"mission":{"epoch_utc":"2022-05-11T00:00:00Z","duration_s":3600,)"
                           R"("sample_step_s":10},)"
                           R"("constellations":["pair.json"],"stations_file":"stations.csv",)"
                           R"("conjunction":{"threshold_km":15000.0}})");

    TempDir out("conjpair_out");
    const ReportResult result = run_conjunction_screen(load_run_config(cfg), out.path());
    CHECK(result.summary_lines[0] == "1 pairs screened, 1 events reported");

    const auto lines = csv_lines(read_file(out.path() / "conjunction_events.csv"));
    REQUIRE(lines.size() == 2);
    // comma-bearing ids are quoted per RFC 4180
    CHECK(lines[1].find("\"we,ird/0/0/0\"") != std::string::npos);
    CHECK(lines[1].find("\"we,ird/0/0/1\"") != std::string::npos);
}

TEST_CASE("conjunction screen without its config section is a usage error") {
    TempDir tmp("conjmiss");
    const auto cfg = demo_config(tmp);
    CHECK_THROWS_AS(run_conjunction_screen(load_run_config(cfg), tmp.path()), ConfigError);
}

TEST_CASE("min elevation override reaches every station") {
    TempDir tmp("override");
    const auto cfg = demo_config(tmp);
    RunConfig config = load_run_config(cfg);

    TempDir out_a("ov_a"), out_b("ov_b");
    run_access_analysis(config, out_a.path());
    config.min_elevation_override_deg = 80.0;  // nearly nothing clears an 80 deg mask
    run_access_analysis(config, out_b.path());

    const auto strict = read_file(out_b.path() / "access_table.csv");
    const auto normal = read_file(out_a.path() / "access_table.csv");
    CHECK(strict != normal);
}
