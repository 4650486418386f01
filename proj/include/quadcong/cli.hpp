#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quadcong/report.hpp"

namespace quadcong {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

struct ScanConfig {
    i64 p_max = 3;
    i64 d_min = -1;
    i64 d_max = 1;
    /// Unset: default_k(p, d) per point.
    std::optional<unsigned> k;
    unsigned jobs = 1;
    Format format = Format::Human;
    Method method = Method::Tree;
};

struct ScanResult {
    /// Sorted by (p, d) whatever the worker count.
    std::vector<VerificationRecord> records;
    /// Failure descriptions, in record order.
    std::vector<std::string> failures;
    /// (p, d) grid points dropped because p | d.
    std::vector<std::pair<i64, i64>> skipped;
};

/// Every odd prime p <= p_max against every d in [d_min, d_max] with p not
/// dividing d, on `jobs` worker threads.
ScanResult run_scan(const ScanConfig& cfg);

/// Jobs default: $QUADCONG_JOBS when set and positive, else the hardware
/// concurrency.
unsigned default_jobs();

/// Entry point behind the quadcong binary; args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace quadcong
