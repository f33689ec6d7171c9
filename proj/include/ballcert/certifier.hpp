#pragma once

#include "ballcert/continued_fraction.hpp"
#include "ballcert/rotation.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ballcert {

enum class Outcome {
    member_of_A,   ///< every k >= 2 certified
    not_certified, ///< some premise or inequality certifiably fails
    depth_limited, ///< all checks up to depth K certified; tail unknown
    undecidable,   ///< precision or budget exhausted without a decision
};

const char* to_string(Outcome o);

/// One verified (or refuted, or undecided) inequality in a certificate.
struct CheckRecord {
    std::string kind; ///< cond_a | cond_a_tail | cond_b | cond_c | direct_C
    std::vector<BigInt> indices;
    std::string lhs_lo, lhs_hi, rhs_lo, rhs_hi;
    double margin = 0.0;
    Verdict verdict = Verdict::unknown;
    mpfr_prec_t precision = 0;
    std::string note;
};

/// Closed range of certified k values; hi absent means unbounded above.
struct CoverageRange {
    BigInt lo;
    std::optional<BigInt> hi;
    std::string source;
};

/// How condition (a) is closed over the infinite tail.
enum class TailStrategy {
    auto_detect, ///< periodic for surds (bound = max of tail digits)
    bounded,     ///< all coefficients <= an explicit bound
    polynomial,  ///< a_j <= j^2 beyond an index; closed via the exponential
                 ///< growth of q_j and a crossover index
};

struct CertifyOptions {
    PrecisionPolicy precision;
    size_t j0_search_depth = 64;  ///< CF terms explored for the tail condition
    size_t direct_cap = 100000;   ///< max individually checked k
    size_t bc_threshold = 64;     ///< use conditions (b)/(c) above this many residual k
    enum class BcMode { adaptive, always, never } bc_mode = BcMode::adaptive;
    TailStrategy tail = TailStrategy::auto_detect;
    BigInt tail_bound;            ///< for TailStrategy::bounded
    long area_depth = 1000;       ///< K for area-mode depth-limited checks
    size_t area_cf_digits = 48;   ///< digits streamed in area mode
};

struct Certificate {
    std::string input_kind;              ///< "surd" | "area"
    std::string input_text;
    long area_depth = 0;                 ///< area mode only

    std::string gamma_lo, gamma_hi;
    mpfr_prec_t gamma_prec = 0;
    std::string radius_lo, radius_hi, area_lo, area_hi;

    std::vector<BigInt> cf_preperiod, cf_period; ///< periodic case
    std::vector<BigInt> cf_digits;               ///< open-tail case
    std::string tail_text;

    Verdict parity = Verdict::unknown;
    std::string parity_detail;

    long j0 = -1;
    std::vector<CheckRecord> checks;
    std::vector<CoverageRange> coverage;
    std::vector<BigInt> direct_indices;

    Outcome outcome = Outcome::undecidable;
    std::string reason;
    mpfr_prec_t max_precision = 0;

    nlohmann::ordered_json to_json() const;
};

// --- building blocks (exposed for tests and the scanner) -------------------

struct J0Result {
    bool found = false;
    size_t j0 = 0;
    BigInt tail_max; ///< bound on a_j for j >= j0 + 2
    CheckRecord record;
};

/**
 * Smallest j0 in [3, depth] for which
 *   pi * (M+2) / (cos(pi/q_j0) * sqrt(R^2 cos(pi/q_{j0+1})^2 - 1)) <= q_j0
 * with M bounding every a_j, j >= j0+2. Requires a periodic or bounded tail.
 */
J0Result select_j0(const ContinuedFraction& cf, const ConvergentTable& table, const Rotation& rot,
                   size_t depth, const PrecisionPolicy& policy,
                   const std::optional<BigInt>& bound_override = std::nullopt);

struct ClosureResult {
    Verdict verdict = Verdict::unknown;
    std::vector<CheckRecord> records;
    std::optional<BigInt> covered_from;    ///< coverage is k >= covered_from
    bool tail_claim_violated = false;      ///< an observed digit refutes the tail claim
    std::string note;
};

/// Closes condition (a) for every j >= j0 from the j0 witness: both sides of
/// the inequality are monotone in j once the coefficient bound holds.
ClosureResult close_condition_a(const J0Result& j0res, const ConvergentTable& table);

/**
 * Closure of condition (a) under the polynomial tail claim a_j <= j^2
 * (j >= poly_from): per-index interval checks up to a crossover index, then
 * the conservative bound q_j >= 2^{(j-1)/2} and monotonicity of both sides.
 */
ClosureResult close_condition_a_polynomial(const ContinuedFraction& cf,
                                           const ConvergentTable& table, const Rotation& rot,
                                           size_t j0, size_t poly_from,
                                           const PrecisionPolicy& policy);

struct BandResult {
    Verdict verdict = Verdict::certified_true;
    std::vector<CheckRecord> records;
    std::vector<CoverageRange> coverage;
    std::string note;
};

/// Condition (b): for j = 4..j0 verify
/// max{F+(delta_{q~_{j-1}}, delta_{q~_{j-2}}), F-(delta_{q~_{j-1}})} < delta_{q~_j};
/// covers k in [q~_3, q~_{j0}). Vacuous when j0 = 3.
BandResult check_condition_b(const Rotation& rot, const ConvergentTable& table, size_t j0,
                             const PrecisionPolicy& policy);

/// Condition (c): when 3 <= q~_2 <= q~_3 - 2, one check of C(A, q~_2 - 1)
/// covers k in [q~_2 - 1, q~_3 - 2]. Skipped (empty coverage) otherwise.
BandResult check_condition_c(DeltaEngine& engine, const ConvergentTable& table,
                             const PrecisionPolicy& policy);

/// Uncovered k >= 2 below the (mandatory) unbounded range. Throws if no
/// unbounded range exists or the uncovered count exceeds `cap`.
std::vector<BigInt> coverage_gaps(const std::vector<CoverageRange>& ranges, size_t cap);

// --- entry points -----------------------------------------------------------

Certificate certify(const QuadraticSurd& s, const CertifyOptions& opt = {});
Certificate certify_area(const BigRational& area, const std::string& area_text,
                         const CertifyOptions& opt = {});

} // namespace ballcert
