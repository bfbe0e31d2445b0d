#include "rootbias/lmfdb.hpp"

#include "rootbias/arith.hpp"
#include "rootbias/bias.hpp"
#include "rootbias/dims.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

namespace rootbias::lmfdb {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void require_args(std::uint64_t level, int weight) {
    if (level == 0) throw std::invalid_argument("level must be positive");
    if (weight < 2 || weight % 2 != 0)
        throw std::invalid_argument("weight must be even and >= 2, got " + std::to_string(weight));
}

std::optional<bool> optional_bool(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (it->is_boolean()) return it->get<bool>();
    if (it->is_number_integer()) return it->get<int>() != 0;
    throw json::type_error::create(302, std::string("field ") + key + " is not boolean", &j);
}

json record_to_json(const NewformOrbitRecord& r) {
    json j{{"label", r.orbit_label},
           {"dim", r.orbit_dim},
           {"root_number_sign", r.root_number_sign},
           {"sign_field", r.sign_field},
           {"raw_sign", r.raw_sign}};
    j["is_twist_minimal"] = r.is_twist_minimal ? json(*r.is_twist_minimal) : json(nullptr);
    j["is_cm"] = r.is_cm ? json(*r.is_cm) : json(nullptr);
    return j;
}

void check_sign(int s, const std::string& what, const std::string& payload) {
    if (s != 1 && s != -1) throw ParseError(what + " must be +1 or -1, got " + std::to_string(s), payload);
}

}  // namespace

ClientConfig ClientConfig::from_env() {
    ClientConfig c;
    if (const char* dir = std::getenv(kCacheEnvVar); dir != nullptr && *dir != '\0') c.cache_dir = dir;
    return c;
}

fs::path cache_path(const fs::path& dir, std::uint64_t level, int weight) {
    return dir / ("level-" + std::to_string(level) + "_weight-" + std::to_string(weight) + "_char-1.json");
}

std::string serialize_orbits(const OrbitSet& set) {
    json j{{"schema", kCacheSchema},
           {"level", set.level},
           {"weight", set.weight},
           {"character_order", 1},
           {"fetched_at", set.fetched_at}};
    j["orbits"] = json::array();
    for (const auto& r : set.orbits) j["orbits"].push_back(record_to_json(r));
    return j.dump(2) + "\n";
}

OrbitSet parse_cache_document(const std::string& text) {
    try {
        const json j = json::parse(text);
        if (j.value("schema", "") != kCacheSchema)
            throw ParseError("unsupported cache schema '" + j.value("schema", "") + "'", text);
        OrbitSet set;
        set.level = j.at("level").get<std::uint64_t>();
        set.weight = j.at("weight").get<int>();
        set.fetched_at = j.value("fetched_at", "");
        for (const auto& o : j.at("orbits")) {
            NewformOrbitRecord r;
            r.level = set.level;
            r.weight = set.weight;
            r.orbit_label = o.at("label").get<std::string>();
            r.orbit_dim = o.at("dim").get<std::int64_t>();
            r.root_number_sign = o.at("root_number_sign").get<int>();
            r.sign_field = o.at("sign_field").get<std::string>();
            r.raw_sign = o.at("raw_sign").get<int>();
            r.is_twist_minimal = optional_bool(o, "is_twist_minimal");
            r.is_cm = optional_bool(o, "is_cm");
            check_sign(r.root_number_sign, "root_number_sign", text);
            if (r.orbit_dim < 1) throw ParseError("orbit dim must be >= 1", text);
            set.orbits.push_back(std::move(r));
        }
        return set;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed cache document: ") + e.what(), text);
    }
}

std::optional<OrbitSet> read_cache(const fs::path& dir, std::uint64_t level, int weight) {
    if (dir.empty()) return std::nullopt;
    std::ifstream in(cache_path(dir, level, weight), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    OrbitSet set = parse_cache_document(ss.str());
    if (set.level != level || set.weight != weight)
        throw ParseError("cache file for (" + std::to_string(level) + "," + std::to_string(weight) +
                             ") holds a different level/weight",
                         ss.str());
    return set;
}

void write_cache(const fs::path& dir, const OrbitSet& set) {
    fs::create_directories(dir);
    const fs::path target = cache_path(dir, set.level, set.weight);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(static_cast<unsigned long>(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << serialize_orbits(set);
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string api_query_path(std::uint64_t level, int weight) {
    return "/api/mf_newforms/?level=" + std::to_string(level) + "&weight=" + std::to_string(weight) +
           "&char_order=1&_format=json&_fields=label,level,weight,dim,fricke_eqsign,is_twist_minimal,is_cm";
}

std::vector<NewformOrbitRecord> parse_api_page(const std::string& body, std::uint64_t level, int weight,
                                               std::optional<std::string>* next_path) {
    try {
        const json j = json::parse(body);
        const json& data = j.at("data");
        if (!data.is_array()) throw ParseError("'data' is not an array", body);
        std::vector<NewformOrbitRecord> out;
        for (const auto& o : data) {
            NewformOrbitRecord r;
            r.level = o.at("level").get<std::uint64_t>();
            r.weight = o.at("weight").get<int>();
            if (r.level != level || r.weight != weight)
                throw ParseError("record " + o.value("label", "?") + " has the wrong level or weight", body);
            r.orbit_label = o.at("label").get<std::string>();
            r.orbit_dim = o.at("dim").get<std::int64_t>();
            if (r.orbit_dim < 1) throw ParseError("orbit dim must be >= 1", body);
            r.sign_field = "fricke_eqsign";
            r.raw_sign = o.at("fricke_eqsign").get<int>();
            check_sign(r.raw_sign, "fricke_eqsign", body);
            r.root_number_sign = sign_half_weight(weight) * r.raw_sign;
            r.is_twist_minimal = optional_bool(o, "is_twist_minimal");
            r.is_cm = optional_bool(o, "is_cm");
            out.push_back(std::move(r));
        }
        if (next_path != nullptr) {
            next_path->reset();
            auto it = j.find("next");
            if (it != j.end() && it->is_string() && !it->get<std::string>().empty()) *next_path = it->get<std::string>();
        }
        return out;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed API response: ") + e.what(), body);
    }
}

std::int64_t signed_sum(const std::vector<NewformOrbitRecord>& orbits) {
    std::int64_t s = 0;
    for (const auto& r : orbits) s += r.orbit_dim * r.root_number_sign;
    return s;
}

Client::Client(ClientConfig config) : config_(std::move(config)) {}

std::string Client::get(const std::string& path) {
    if (last_request_) {
        const auto wait_until = *last_request_ + config_.request_delay;
        std::this_thread::sleep_until(wait_until);
    }
    httplib::Client http(config_.base_url);
    http.set_connection_timeout(config_.timeout);
    http.set_read_timeout(config_.timeout);
    http.set_follow_location(true);
    ++requests_;
    auto res = http.Get(path);
    last_request_ = std::chrono::steady_clock::now();
    if (!res) throw NetworkError("GET " + config_.base_url + path + " failed: " + httplib::to_string(res.error()));
    if (res->status == 404) throw NoDataError("GET " + path + ": 404");
    if (res->status < 200 || res->status >= 300)
        throw NetworkError("GET " + path + ": HTTP " + std::to_string(res->status));
    return res->body;
}

OrbitSet Client::fetch_newform_orbits(std::uint64_t level, int weight) {
    require_args(level, weight);
    if (auto cached = read_cache(config_.cache_dir, level, weight)) return *cached;
    if (config_.offline)
        throw CacheMissError("offline and no cached data for (" + std::to_string(level) + "," +
                             std::to_string(weight) + ")");

    OrbitSet set{level, weight, utc_now(), {}};
    std::optional<std::string> next = api_query_path(level, weight);
    while (next) {
        const std::string body = get(*next);
        auto page = parse_api_page(body, level, weight, &next);
        set.orbits.insert(set.orbits.end(), page.begin(), page.end());
    }
    // An empty answer is only believable when the new space is zero.
    if (set.orbits.empty() && dim_sk_new(level, weight) != 0)
        throw NoDataError("no newform data for (" + std::to_string(level) + "," + std::to_string(weight) + ")");
    if (!config_.cache_dir.empty()) write_cache(config_.cache_dir, set);
    return set;
}

ValidationReport Client::validate_delta(std::uint64_t level, int weight) {
    const OrbitSet set = fetch_newform_orbits(level, weight);
    ValidationReport r;
    r.level = level;
    r.weight = weight;
    r.computed_delta = delta(level, weight);
    r.external_sum = signed_sum(set.orbits);
    r.orbit_count = set.orbits.size();
    r.match = r.computed_delta == r.external_sum;
    r.fetched_at = set.fetched_at;
    return r;
}

MinimalReport Client::validate_minimal(std::uint64_t level, int weight) {
    const OrbitSet set = fetch_newform_orbits(level, weight);
    MinimalReport m;
    m.report.level = level;
    m.report.weight = weight;
    m.report.fetched_at = set.fetched_at;
    std::vector<NewformOrbitRecord> minimal;
    for (const auto& r : set.orbits) {
        if (!r.is_twist_minimal) ++m.orbits_without_flag;
        else if (*r.is_twist_minimal) minimal.push_back(r);
    }
    if (minimal_balance(level)) m.predicted = 0;
    if (m.orbits_without_flag != 0) {
        m.status = MinimalReport::Status::InsufficientData;
        return m;
    }
    m.status = MinimalReport::Status::Ok;
    m.report.external_sum = signed_sum(minimal);
    m.report.orbit_count = minimal.size();
    m.report.computed_delta = m.predicted.value_or(m.report.external_sum);
    m.report.match = !m.predicted || *m.predicted == m.report.external_sum;
    return m;
}

}  // namespace rootbias::lmfdb
