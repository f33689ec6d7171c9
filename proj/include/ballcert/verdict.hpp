#pragma once

#include <mpfr.h>

#include <string>

namespace ballcert {

/// Three-valued certification result. `unknown` means the precision budget
/// could not separate the quantities, never that the statement is false.
enum class Verdict {
    certified_true,
    certified_false,
    unknown,
};

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::certified_true: return "certified_true";
        case Verdict::certified_false: return "certified_false";
        default: return "unknown";
    }
}

inline Verdict negate(Verdict v) {
    if (v == Verdict::certified_true) return Verdict::certified_false;
    if (v == Verdict::certified_false) return Verdict::certified_true;
    return Verdict::unknown;
}

/**
 * Adaptive precision schedule: evaluations start at `start` bits and double
 * on every `unknown` until `cap`. Past the cap the verdict stays unknown;
 * a strict inequality is never decided by a guess.
 */
struct PrecisionPolicy {
    mpfr_prec_t start = 128;
    mpfr_prec_t cap = 8192;
};

/**
 * Run a tri-valued evaluation up the precision ladder. `eval` receives the
 * working precision and returns a Verdict; the first decided verdict wins.
 * `used` (optional) reports the precision of the deciding evaluation (or the
 * last one tried).
 */
template <typename Eval>
Verdict run_ladder(const PrecisionPolicy& policy, Eval&& eval, mpfr_prec_t* used = nullptr) {
    mpfr_prec_t p = policy.start;
    for (;;) {
        Verdict v = eval(p);
        if (used) *used = p;
        if (v != Verdict::unknown) return v;
        if (p >= policy.cap) return Verdict::unknown;
        p *= 2;
        if (p > policy.cap) p = policy.cap;
    }
}

} // namespace ballcert
