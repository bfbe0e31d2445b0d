#include "rootbias/cli/commands.hpp"

#include "rootbias/arith.hpp"
#include "rootbias/bias.hpp"
#include "rootbias/classnum.hpp"
#include "rootbias/dims.hpp"
#include "rootbias/parallel.hpp"
#include "rootbias/trace.hpp"

#include <json.hpp>

#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rootbias::cli {

namespace {

std::uint64_t parse_u64(std::string_view s, const std::string& whole) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("malformed range '" + whole + "'");
    return v;
}

std::vector<int> even_weights(Range r) {
    std::vector<int> ks;
    for (std::uint64_t k = std::max<std::uint64_t>(r.lo, 2); k <= r.hi; ++k)
        if (k % 2 == 0) ks.push_back(static_cast<int>(k));
    return ks;
}

void require_weight(int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 2, got " + std::to_string(k));
}

struct Row {
    TraceReport trace;
    BiasRecord bias;
    std::int64_t dim_new;
};

Row make_row(std::uint64_t n, int k) {
    return {trace_report(n, k), bias_record(n, k), dim_sk_new(n, k)};
}

std::string zero_class_text(const std::optional<ZeroClass>& z) { return z ? std::string(to_string(*z)) : "-"; }

// Class number relations for fundamental -D with lambda^2 D <= bound.
void verify_class_numbers(std::int64_t bound, std::vector<std::string>& failures) {
    for (std::int64_t d = 3; d <= bound; ++d) {
        if (!is_fundamental_discriminant(-d)) continue;
        const Discriminant fund(-d);
        for (std::uint64_t lambda = 1; static_cast<std::int64_t>(lambda * lambda) * d <= bound; ++lambda) {
            const Discriminant full(-static_cast<std::int64_t>(lambda * lambda) * d);
            const Rational hp = h_prime(full);
            const Rational hp_prod = h_prime_scaled(fund, lambda);
            const Rational hp_mob = h_prime_scaled_mobius(fund, lambda);
            const Rational h = hurwitz(full);
            const Rational h_rel = hurwitz_via_relation(fund, lambda);
            if (hp != hp_prod || hp != hp_mob || h != h_rel) {
                std::ostringstream os;
                os << "classnum D=" << d << " lambda=" << lambda << ": h'=" << hp << " product=" << hp_prod
                   << " mobius=" << hp_mob << " H=" << h << " relation=" << h_rel;
                failures.push_back(os.str());
            }
        }
    }
}

}  // namespace

Range parse_range(const std::string& text) {
    Range r;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = parse_u64(text, text);
    } else {
        r.lo = parse_u64(std::string_view(text).substr(0, dots), text);
        r.hi = parse_u64(std::string_view(text).substr(dots + 2), text);
    }
    if (r.lo == 0 || r.lo > r.hi) throw std::invalid_argument("empty or non-positive range '" + text + "'");
    return r;
}

int cmd_delta(std::uint64_t level, int k, std::ostream& out, std::ostream& err) {
    try {
        if (level == 0) throw std::invalid_argument("level must be positive");
        require_weight(k);
        const Row row = make_row(level, k);
        out << "N            " << level << "\n"
            << "k            " << k << "\n"
            << "tr_full      " << row.trace.tr_full << "\n"
            << "tr_new       " << row.trace.tr_new << "\n"
            << "delta        " << row.bias.delta << "\n"
            << "dim_new      " << row.dim_new << "\n"
            << "dim_plus     " << row.bias.dim_plus << "\n"
            << "dim_minus    " << row.bias.dim_minus << "\n"
            << "case         " << to_string(row.trace.case_tag) << "\n"
            << "zero_class   " << zero_class_text(row.bias.zero_class) << "\n";
        if (row.bias.predicted_sign_large_k)
            out << "large_k_sign " << (*row.bias.predicted_sign_large_k > 0 ? "+1" : "-1") << "\n";
        return kOk;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

int cmd_table(Range n_range, Range k_range, TableFormat format, unsigned jobs, std::ostream& out,
              std::ostream& err) {
    const std::vector<int> ks = even_weights(k_range);
    if (n_range.lo == 0 || n_range.lo > n_range.hi || ks.empty()) {
        err << "error: ranges must be nonempty and contain an even weight >= 2\n";
        return kUsage;
    }
    const std::uint64_t count = n_range.hi - n_range.lo + 1;
    std::vector<std::vector<Row>> rows(count);
    parallel_for(n_range.lo, n_range.hi, jobs, [&](std::uint64_t n) {
        auto& slot = rows[n - n_range.lo];
        for (int k : ks) slot.push_back(make_row(n, k));
    });

    if (format == TableFormat::Tsv) {
        out << "N\tk\ttr_full\ttr_new\tdelta\tdim_new\tdim_plus\tdim_minus\tcase_tag\tzero_class\n";
        for (const auto& slot : rows)
            for (const auto& r : slot)
                out << r.trace.level << '\t' << r.trace.weight << '\t' << r.trace.tr_full << '\t' << r.trace.tr_new
                    << '\t' << r.bias.delta << '\t' << r.dim_new << '\t' << r.bias.dim_plus << '\t'
                    << r.bias.dim_minus << '\t' << to_string(r.trace.case_tag) << '\t'
                    << zero_class_text(r.bias.zero_class) << '\n';
        return kOk;
    }

    nlohmann::ordered_json doc;
    doc["schema"] = "rootbias.table/1";
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& slot : rows)
        for (const auto& r : slot) {
            nlohmann::ordered_json j;
            j["N"] = r.trace.level;
            j["k"] = r.trace.weight;
            j["tr_full"] = r.trace.tr_full;
            j["tr_new"] = r.trace.tr_new;
            j["delta"] = r.bias.delta;
            j["dim_new"] = r.dim_new;
            j["dim_plus"] = r.bias.dim_plus;
            j["dim_minus"] = r.bias.dim_minus;
            j["case_tag"] = to_string(r.trace.case_tag);
            j["zero_class"] = r.bias.zero_class ? nlohmann::ordered_json(to_string(*r.bias.zero_class))
                                                : nlohmann::ordered_json(nullptr);
            doc["rows"].push_back(std::move(j));
        }
    out << doc.dump(2) << "\n";
    return kOk;
}

int cmd_verify(std::uint64_t n_max, int k_max, unsigned jobs, std::ostream& out, std::ostream& err,
               const ClosedFormHooks& hooks) {
    if (n_max < 1 || k_max < 2) {
        err << "error: --N must be >= 1 and --k >= 2\n";
        return kUsage;
    }
    std::vector<std::vector<std::string>> failures(n_max + 1);
    parallel_for(1, n_max, jobs, [&](std::uint64_t n) {
        auto& f = failures[n];
        for (int k = 2; k <= k_max; k += 2) {
            auto report = [&](const char* what, std::int64_t a, std::int64_t b) {
                if (a == b) return;
                std::ostringstream os;
                os << what << " N=" << n << " k=" << k << ": " << a << " != " << b;
                f.push_back(os.str());
            };
            const std::int64_t full_closed = trace_full_closed(n, k);
            report("full closed/direct", full_closed, trace_full_direct(n, k));
            const std::int64_t new_mobius = trace_new_mobius(n, k);
            report("new closed/mobius", trace_new_closed(n, k, hooks), new_mobius);
            report("new corrections/mobius", trace_new_via_corrections(n, k), new_mobius);
        }
    });
    std::vector<std::string> class_failures;
    verify_class_numbers(4 * static_cast<std::int64_t>(n_max), class_failures);

    std::size_t total = class_failures.size();
    for (const auto& f : failures) total += f.size();
    for (const auto& f : failures)
        for (const auto& line : f) out << "MISMATCH " << line << "\n";
    for (const auto& line : class_failures) out << "MISMATCH " << line << "\n";
    out << (total == 0 ? "PASS" : "FAIL") << " verify N<=" << n_max << " k<=" << k_max << ": " << total
        << " mismatches\n";
    return total == 0 ? kOk : kMismatch;
}

int cmd_scan_negative(std::uint64_t n_max, int k_max, unsigned jobs, std::ostream& out, std::ostream& err) {
    if (n_max < 1 || k_max < 2) {
        err << "error: --N must be >= 1 and --k >= 2\n";
        return kUsage;
    }
    const auto hits = scan_negative(n_max, k_max, jobs);
    out << "N\tk\tdelta\n";
    std::size_t off_family = 0;
    for (const auto& h : hits) {
        out << h.level << '\t' << h.weight << '\t' << h.delta << '\n';
        if (!is_cubefree_square(h.level)) ++off_family;
    }
    if (off_family != 0) {
        err << off_family << " negative values at levels that are not cubefree squares\n";
        return kMismatch;
    }
    return kOk;
}

#ifdef ROOTBIAS_HAVE_LMFDB
int cmd_validate_lmfdb(std::uint64_t level, int k, const lmfdb::ClientConfig& config, bool minimal,
                       std::ostream& out, std::ostream& err) {
    try {
        if (level == 0) throw std::invalid_argument("level must be positive");
        require_weight(k);
        lmfdb::Client client(config);
        if (!minimal) {
            const auto r = client.validate_delta(level, k);
            out << "N=" << level << " k=" << k << " computed_delta=" << r.computed_delta
                << " external_sum=" << r.external_sum << " orbits=" << r.orbit_count << " fetched_at=" << r.fetched_at
                << " network_requests=" << client.network_requests() << " " << (r.match ? "match" : "MISMATCH")
                << "\n";
            return r.match ? kOk : kMismatch;
        }
        const auto m = client.validate_minimal(level, k);
        if (m.status == lmfdb::MinimalReport::Status::InsufficientData) {
            out << "N=" << level << " k=" << k << " insufficient data: " << m.orbits_without_flag
                << " orbits lack twist-minimality\n";
            return kDataUnavailable;
        }
        out << "N=" << level << " k=" << k << " minimal_sum=" << m.report.external_sum
            << " minimal_orbits=" << m.report.orbit_count << " predicted="
            << (m.predicted ? std::to_string(*m.predicted) : std::string("-"))
            << " network_requests=" << client.network_requests() << " " << (m.report.match ? "match" : "MISMATCH")
            << "\n";
        return m.report.match ? kOk : kMismatch;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const lmfdb::ParseError& e) {
        err << "error: " << e.what() << "\npayload:\n" << e.payload() << "\n";
        return kDataUnavailable;
    } catch (const lmfdb::Error& e) {
        err << "error: " << e.what() << "\n";
        return kDataUnavailable;
    }
}
#endif

}  // namespace rootbias::cli
