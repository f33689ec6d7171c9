#pragma once

#include "ballcert/certifier.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ballcert {

/// Evenly spaced exact rationals in [lo, hi] (endpoints included);
/// grid candidates are depth-limited only.
struct GammaGrid {
    BigRational lo, hi;
    long steps = 0;
};

/// Surds (P + sqrt(D))/Q for Q in [q_lo, q_hi]; P enumerated so the value
/// lands in the admissible window (or restricted to an explicit range).
struct SurdFamily {
    BigInt d;
    long q_lo = 0, q_hi = 0;
    std::optional<std::pair<BigInt, BigInt>> p_range;
};

/// Surds realized as prefix + digits from digit_set (lexicographic up to
/// max_candidates) + a purely periodic continuation of period_digit.
struct CfFamily {
    std::vector<BigInt> prefix;
    std::vector<BigInt> digit_set;
    size_t depth = 0;
    size_t max_candidates = 128;
    BigInt period_digit = 2;
};

struct ScanJob {
    std::variant<GammaGrid, SurdFamily, CfFamily> source;
    CertifyOptions options;
    int parallelism = 1;
};

struct ScanRecord {
    long id = 0;
    std::string candidate;       ///< surd triple or decimal gamma
    std::string gamma_lo, gamma_hi;
    double r_mid = 0, a_mid = 0; ///< midpoints (0 when not evaluable)
    Outcome outcome = Outcome::undecidable;
    long j0 = -1;
    std::string first_fail;      ///< first non-certified check, if any
    double min_margin = 0;       ///< smallest margin among certified checks
    mpfr_prec_t precision = 0;
    long ms = 0;
    std::string warning;
};

struct ScanSummary {
    size_t total = 0;
    size_t member = 0, not_certified = 0, depth_limited = 0, undecidable = 0;
};

std::vector<ScanRecord> run_scan(const ScanJob& job, ScanSummary* summary = nullptr);

/// CSV with the fixed column set
/// id,gamma_lo,gamma_hi,R_mid,A_mid,outcome,j0,first_fail,min_margin,precision_bits,ms
std::string to_csv(const std::vector<ScanRecord>& records);

/// JSON array mirroring the certificate summaries.
std::string to_json(const std::vector<ScanRecord>& records);

} // namespace ballcert
