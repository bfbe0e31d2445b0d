#include "rootbias/arith.hpp"
#include "rootbias/bias.hpp"
#include "rootbias/lmfdb.hpp"

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <thread>

using namespace rootbias;
using namespace rootbias::lmfdb;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(ROOTBIAS_FIXTURE_DIR) / "lmfdb_cache";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("rootbias-test-" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// A local stand-in for the API, serving canned bodies per query path.
struct LocalServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;
    std::atomic<int> hits{0};

    explicit LocalServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
        server.Get(".*", [this, handler](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            handler(req, res);
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~LocalServer() {
        server.stop();
        thread.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port); }
};

std::string api_body(const nlohmann::json& data, const nlohmann::json& next = nullptr) {
    // A braced list holding one object collapses to that object; rewrap it.
    nlohmann::json j{{"data", data.is_array() ? data : nlohmann::json::array({data})}, {"start", 0}};
    if (!next.is_null()) j["next"] = next;
    return j.dump();
}

nlohmann::json api_record(const std::string& label, int level, int weight, int dim, int fricke,
                          nlohmann::json minimal = true) {
    return {{"label", label}, {"level", level},      {"weight", weight},
            {"dim", dim},     {"fricke_eqsign", fricke}, {"is_twist_minimal", minimal}, {"is_cm", false}};
}

ClientConfig local_config(const LocalServer& s, const fs::path& cache) {
    ClientConfig c;
    c.base_url = s.url();
    c.cache_dir = cache;
    c.request_delay = std::chrono::milliseconds(0);
    c.timeout = std::chrono::seconds(5);
    return c;
}

ClientConfig fixture_config() {
    ClientConfig c;
    c.cache_dir = kFixtures;
    c.offline = true;
    return c;
}

}  // namespace

TEST_CASE("committed fixtures validate offline") {
    Client client(fixture_config());
    for (auto [n, k] : {std::pair<std::uint64_t, int>{9, 10}, {49, 14}, {37, 2}, {58, 2}, {1, 12}}) {
        const auto r = client.validate_delta(n, k);
        INFO("N=" << n << " k=" << k);
        CHECK(r.match);
        CHECK(r.computed_delta == delta(n, k));
        CHECK(r.external_sum == r.computed_delta);
    }
    CHECK(client.network_requests() == 0);

    const auto m9 = client.validate_minimal(9, 10);
    REQUIRE(m9.status == MinimalReport::Status::Ok);
    CHECK(m9.report.external_sum == -1);
    const auto m49 = client.validate_minimal(49, 14);
    REQUIRE(m49.status == MinimalReport::Status::Ok);
    CHECK(m49.report.external_sum == -5);
    CHECK(client.network_requests() == 0);
}

TEST_CASE("fixture contents") {
    Client client(fixture_config());
    const auto nine = client.fetch_newform_orbits(9, 10);
    REQUIRE(nine.orbits.size() == 3);
    int plus = 0, minus = 0;
    for (const auto& o : nine.orbits) (o.root_number_sign > 0 ? plus : minus) += 1;
    CHECK(plus == 2);
    CHECK(minus == 1);
    const auto one = client.fetch_newform_orbits(1, 12);
    REQUIRE(one.orbits.size() == 1);
    CHECK(one.orbits[0].root_number_sign == 1);
    // Stored sign convention: root number = (-1)^{k/2} * Fricke sign.
    for (auto [n, k] : {std::pair<std::uint64_t, int>{9, 10}, {49, 14}, {37, 2}, {58, 2}, {1, 12}})
        for (const auto& o : client.fetch_newform_orbits(n, k).orbits) {
            CHECK(o.sign_field == "fricke_eqsign");
            CHECK(o.root_number_sign == sign_half_weight(k) * o.raw_sign);
            CHECK(o.orbit_dim >= 1);
        }
}

TEST_CASE("cache round trip") {
    TempDir tmp;
    OrbitSet set{45, 4, "2026-01-02T03:04:05Z", {}};
    NewformOrbitRecord a{45, 4, "45.4.a.a", 1, 1, true, false, "fricke_eqsign", 1};
    NewformOrbitRecord b{45, 4, "45.4.a.b", 2, -1, std::nullopt, std::nullopt, "fricke_eqsign", -1};
    set.orbits = {a, b};
    write_cache(tmp.path, set);
    CHECK(fs::exists(cache_path(tmp.path, 45, 4)));
    CHECK(cache_path(tmp.path, 45, 4).filename() == "level-45_weight-4_char-1.json");
    const auto back = read_cache(tmp.path, 45, 4);
    REQUIRE(back);
    CHECK(*back == set);
    CHECK(parse_cache_document(serialize_orbits(set)) == set);
    CHECK_FALSE(read_cache(tmp.path, 45, 6));
    for (const auto& e : fs::directory_iterator(tmp.path)) CHECK(e.path().extension() == ".json");
}

TEST_CASE("cache schema and shape are checked") {
    CHECK_THROWS_AS(parse_cache_document("{\"schema\":\"other/9\",\"level\":1,\"weight\":12,\"orbits\":[]}"), ParseError);
    CHECK_THROWS_AS(parse_cache_document("not json"), ParseError);
    try {
        parse_cache_document("[1,2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.payload() == "[1,2");
    }
}

TEST_CASE("fetch from a local server writes the cache and normalizes signs") {
    TempDir tmp;
    LocalServer server([](const httplib::Request& req, httplib::Response& res) {
        CHECK(req.get_param_value("level") == "37");
        CHECK(req.get_param_value("weight") == "2");
        CHECK(req.get_param_value("char_order") == "1");
        res.set_content(api_body({api_record("37.2.a.a", 37, 2, 1, 1), api_record("37.2.a.b", 37, 2, 1, -1)}),
                        "application/json");
    });
    Client client(local_config(server, tmp.path));
    const auto set = client.fetch_newform_orbits(37, 2);
    REQUIRE(set.orbits.size() == 2);
    CHECK(set.orbits[0].raw_sign == 1);
    CHECK(set.orbits[0].root_number_sign == -1);  // k = 2: root number is minus the Fricke sign
    CHECK(set.orbits[1].root_number_sign == 1);
    CHECK(fs::exists(cache_path(tmp.path, 37, 2)));
    CHECK(client.network_requests() == 1);

    const auto report = client.validate_delta(37, 2);
    CHECK(report.match);
    CHECK(client.network_requests() == 1);  // second call served from cache
    CHECK(server.hits == 1);

    ClientConfig offline = local_config(server, tmp.path);
    offline.offline = true;
    Client warm(offline);
    CHECK(warm.validate_delta(37, 2).match);
    CHECK(warm.network_requests() == 0);
}

TEST_CASE("paginated responses are followed") {
    TempDir tmp;
    LocalServer server([](const httplib::Request& req, httplib::Response& res) {
        if (req.has_param("_offset"))
            res.set_content(api_body({api_record("58.2.a.b", 58, 2, 1, -1)}), "application/json");
        else
            res.set_content(api_body({api_record("58.2.a.a", 58, 2, 1, 1)}, "/api/mf_newforms/?level=58&_offset=1"),
                            "application/json");
    });
    Client client(local_config(server, tmp.path));
    const auto set = client.fetch_newform_orbits(58, 2);
    CHECK(set.orbits.size() == 2);
    CHECK(client.network_requests() == 2);
    CHECK(client.validate_delta(58, 2).match);
}

TEST_CASE("error classes") {
    TempDir tmp;
    SUBCASE("server error is a retryable network error") {
        LocalServer server([](const httplib::Request&, httplib::Response& res) { res.status = 503; });
        Client client(local_config(server, tmp.path));
        CHECK_THROWS_AS(client.fetch_newform_orbits(11, 2), NetworkError);
    }
    SUBCASE("404 means no data") {
        LocalServer server([](const httplib::Request&, httplib::Response& res) { res.status = 404; });
        Client client(local_config(server, tmp.path));
        CHECK_THROWS_AS(client.fetch_newform_orbits(11, 2), NoDataError);
    }
    SUBCASE("an empty answer for a nonzero space means no data") {
        LocalServer server([](const httplib::Request&, httplib::Response& res) {
            res.set_content(api_body(nlohmann::json::array()), "application/json");
        });
        Client client(local_config(server, tmp.path));
        CHECK_THROWS_AS(client.fetch_newform_orbits(11, 2), NoDataError);
        const auto empty = client.fetch_newform_orbits(10, 2);  // S_2^new(10) = 0
        CHECK(empty.orbits.empty());
        CHECK(client.validate_delta(10, 2).match);
    }
    SUBCASE("malformed bodies carry the payload") {
        LocalServer server([](const httplib::Request&, httplib::Response& res) {
            res.set_content("{\"data\": [{\"label\": \"11.2.a.a\"}]}", "application/json");
        });
        Client client(local_config(server, tmp.path));
        try {
            client.fetch_newform_orbits(11, 2);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.payload().find("11.2.a.a") != std::string::npos);
        }
        CHECK_FALSE(fs::exists(cache_path(tmp.path, 11, 2)));
    }
    SUBCASE("a bad sign is a parse error") {
        LocalServer server([](const httplib::Request&, httplib::Response& res) {
            res.set_content(api_body({api_record("11.2.a.a", 11, 2, 1, 0)}), "application/json");
        });
        Client client(local_config(server, tmp.path));
        CHECK_THROWS_AS(client.fetch_newform_orbits(11, 2), ParseError);
    }
    SUBCASE("unreachable host") {
        ClientConfig c;
        c.base_url = "http://127.0.0.1:1";
        c.cache_dir = tmp.path;
        c.timeout = std::chrono::seconds(2);
        Client client(c);
        CHECK_THROWS_AS(client.fetch_newform_orbits(11, 2), NetworkError);
    }
    SUBCASE("offline cache miss") {
        ClientConfig c;
        c.cache_dir = tmp.path;
        c.offline = true;
        Client client(c);
        CHECK_THROWS_AS(client.fetch_newform_orbits(11, 2), CacheMissError);
        CHECK(client.network_requests() == 0);
    }
    SUBCASE("bad arguments") {
        Client client(fixture_config());
        CHECK_THROWS_AS(client.fetch_newform_orbits(11, 3), std::invalid_argument);
    }
}

TEST_CASE("requests are spaced by the configured delay") {
    TempDir tmp;
    LocalServer server([](const httplib::Request& req, httplib::Response& res) {
        const int level = std::stoi(req.get_param_value("level"));
        res.set_content(api_body({api_record(std::to_string(level) + ".2.a.a", level, 2, 1, 1)}), "application/json");
    });
    ClientConfig c = local_config(server, tmp.path);
    c.request_delay = std::chrono::milliseconds(300);
    Client client(c);
    const auto start = std::chrono::steady_clock::now();
    client.fetch_newform_orbits(11, 2);
    client.fetch_newform_orbits(14, 2);
    CHECK(std::chrono::steady_clock::now() - start >= std::chrono::milliseconds(300));
}

TEST_CASE("minimal validation") {
    TempDir tmp;
    SUBCASE("balanced level: prediction 0 is checked") {
        // Synthetic orbits at N = 45, where a quadratic twist pairs up the minimal forms.
        LocalServer server([](const httplib::Request&, httplib::Response& res) {
            res.set_content(api_body({api_record("45.4.a.x", 45, 4, 1, 1), api_record("45.4.a.y", 45, 4, 1, -1),
                                      api_record("45.4.a.z", 45, 4, 3, 1, false)}),
                            "application/json");
        });
        Client client(local_config(server, tmp.path));
        const auto m = client.validate_minimal(45, 4);
        REQUIRE(m.status == MinimalReport::Status::Ok);
        REQUIRE(m.predicted);
        CHECK(*m.predicted == 0);
        CHECK(m.report.external_sum == 0);
        CHECK(m.report.match);
    }
    SUBCASE("imbalance at a balanced level is a mismatch") {
        LocalServer server([](const httplib::Request&, httplib::Response& res) {
            res.set_content(api_body({api_record("45.4.a.x", 45, 4, 2, 1)}), "application/json");
        });
        Client client(local_config(server, tmp.path));
        const auto m = client.validate_minimal(45, 4);
        CHECK_FALSE(m.report.match);
    }
    SUBCASE("missing minimality flags give insufficient data") {
        LocalServer server([](const httplib::Request&, httplib::Response& res) {
            res.set_content(api_body({api_record("45.4.a.x", 45, 4, 1, 1, nullptr)}), "application/json");
        });
        Client client(local_config(server, tmp.path));
        const auto m = client.validate_minimal(45, 4);
        CHECK(m.status == MinimalReport::Status::InsufficientData);
        CHECK(m.orbits_without_flag == 1);
    }
}

TEST_CASE("cache directory from the environment") {
    ::setenv(kCacheEnvVar, "/tmp/rootbias-env-cache", 1);
    CHECK(ClientConfig::from_env().cache_dir == fs::path("/tmp/rootbias-env-cache"));
    ::unsetenv(kCacheEnvVar);
    CHECK(ClientConfig::from_env().cache_dir.empty());
}
