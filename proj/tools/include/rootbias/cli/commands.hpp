#pragma once

#include "rootbias/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

#ifdef ROOTBIAS_HAVE_LMFDB
#include "rootbias/lmfdb.hpp"
#endif

namespace rootbias::cli {

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kUsage = 2,
    kDataUnavailable = 3,  // network failure, no data, or offline cache miss
};

/// Closed interval "a..b" (or a single value "a").
struct Range {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

/// Throws std::invalid_argument on malformed or empty ranges.
Range parse_range(const std::string& text);

enum class TableFormat { Tsv, Json };

int cmd_delta(std::uint64_t level, int k, std::ostream& out, std::ostream& err);
/// Rows for every N in n_range and every even k in k_range, in (N, k) order.
int cmd_table(Range n_range, Range k_range, TableFormat format, unsigned jobs, std::ostream& out, std::ostream& err);
/// Cross-checks both trace routes and the class number relations.  hooks
/// replaces pieces of the closed new-space formula (fault injection).
int cmd_verify(std::uint64_t n_max, int k_max, unsigned jobs, std::ostream& out, std::ostream& err,
               const ClosedFormHooks& hooks = {});
int cmd_scan_negative(std::uint64_t n_max, int k_max, unsigned jobs, std::ostream& out, std::ostream& err);

#ifdef ROOTBIAS_HAVE_LMFDB
int cmd_validate_lmfdb(std::uint64_t level, int k, const lmfdb::ClientConfig& config, bool minimal,
                       std::ostream& out, std::ostream& err);
#endif

}  // namespace rootbias::cli
