#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rootbias::lmfdb {

inline constexpr const char* kCacheSchema = "rootbias.lmfdb-cache/1";
inline constexpr const char* kCacheEnvVar = "ROOTBIAS_LMFDB_CACHE";

/// One Galois orbit of trivial-character newforms.
struct NewformOrbitRecord {
    std::uint64_t level = 0;
    int weight = 0;
    std::string orbit_label;
    std::int64_t orbit_dim = 0;
    int root_number_sign = 0;  // normalized: (-1)^{k/2} * raw_sign
    std::optional<bool> is_twist_minimal;
    std::optional<bool> is_cm;
    std::string sign_field;  // name of the source field the sign came from
    int raw_sign = 0;

    friend bool operator==(const NewformOrbitRecord&, const NewformOrbitRecord&) = default;
};

struct OrbitSet {
    std::uint64_t level = 0;
    int weight = 0;
    std::string fetched_at;  // ISO 8601 UTC
    std::vector<NewformOrbitRecord> orbits;

    friend bool operator==(const OrbitSet&, const OrbitSet&) = default;
};

struct ValidationReport {
    std::uint64_t level = 0;
    int weight = 0;
    std::int64_t computed_delta = 0;
    std::int64_t external_sum = 0;
    std::size_t orbit_count = 0;
    bool match = false;
    std::string fetched_at;
};

/// validate_minimal either produces a sum or says why it cannot.
struct MinimalReport {
    enum class Status { Ok, InsufficientData };
    Status status = Status::InsufficientData;
    ValidationReport report;           // computed_delta holds the predicted value when one exists
    std::optional<std::int64_t> predicted;  // 0 when minimal_balance(N) holds
    std::size_t orbits_without_flag = 0;
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Transport failure or server error; the request may succeed if repeated.
class NetworkError : public Error {
  public:
    using Error::Error;
};

/// The source has no newform data for this (N, k).
class NoDataError : public Error {
  public:
    using Error::Error;
};

/// Offline mode and nothing cached.
class CacheMissError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::string payload) : Error(what), payload_(std::move(payload)) {}
    const std::string& payload() const { return payload_; }

  private:
    std::string payload_;
};

struct ClientConfig {
    std::string base_url = "https://www.lmfdb.org";
    std::filesystem::path cache_dir;  // empty: no cache
    bool offline = false;
    std::chrono::milliseconds request_delay{2000};
    std::chrono::seconds timeout{30};

    /// Defaults, with cache_dir taken from ROOTBIAS_LMFDB_CACHE if set.
    static ClientConfig from_env();
};

std::filesystem::path cache_path(const std::filesystem::path& dir, std::uint64_t level, int weight);
std::string serialize_orbits(const OrbitSet& set);
OrbitSet parse_cache_document(const std::string& text);
std::optional<OrbitSet> read_cache(const std::filesystem::path& dir, std::uint64_t level, int weight);
/// Atomic: writes a sibling temp file and renames it over the target.
void write_cache(const std::filesystem::path& dir, const OrbitSet& set);

/// Records from one page of the mf_newforms API response.  Returns the
/// records and, through next_path, the follow-up page if any.
std::vector<NewformOrbitRecord> parse_api_page(const std::string& body, std::uint64_t level, int weight,
                                               std::optional<std::string>* next_path = nullptr);

std::string api_query_path(std::uint64_t level, int weight);

/// Sum of orbit_dim * root_number_sign.
std::int64_t signed_sum(const std::vector<NewformOrbitRecord>& orbits);

class Client {
  public:
    explicit Client(ClientConfig config);

    /// Cache first, then the network (unless offline).  Fresh results are
    /// written to the cache before returning.
    OrbitSet fetch_newform_orbits(std::uint64_t level, int weight);

    ValidationReport validate_delta(std::uint64_t level, int weight);
    MinimalReport validate_minimal(std::uint64_t level, int weight);

    std::size_t network_requests() const { return requests_; }
    const ClientConfig& config() const { return config_; }

  private:
    std::string get(const std::string& path);

    ClientConfig config_;
    std::size_t requests_ = 0;
    std::optional<std::chrono::steady_clock::time_point> last_request_;
};

}  // namespace rootbias::lmfdb
