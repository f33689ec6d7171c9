#include "ballcert/scanner.hpp"

#include "ballcert/errors.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace ballcert {

namespace {

struct Candidate {
    long id = 0;
    std::optional<QuadraticSurd> surd;  // full certification
    std::optional<BigRational> rational; // depth-limited grid point
    std::string warning;
};

std::vector<Candidate> enumerate_grid(const GammaGrid& grid, const PrecisionPolicy& policy) {
    if (grid.steps < 1) throw InputError("grid needs at least one step");
    // bounds must sit inside the admissible window
    for (const BigRational& edge : { grid.lo, grid.hi }) {
        Rotation rot = Rotation::of_exact(QuadraticNumber(edge));
        if (rot.in_window(policy) != Verdict::certified_true)
            throw InputError("grid bounds must lie in (arctan(2)/pi, 1/2)");
    }
    std::vector<Candidate> out;
    BigRational span = grid.hi - grid.lo;
    long denom = std::max(grid.steps - 1, 1L);
    for (long i = 0; i < grid.steps; ++i) {
        Candidate c;
        c.id = static_cast<long>(out.size());
        c.rational = grid.lo + span * BigRational(i, denom);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Candidate> enumerate_surd_family(const SurdFamily& fam,
                                             const PrecisionPolicy& policy) {
    if (fam.q_lo < 1 || fam.q_hi < fam.q_lo) throw InputError("bad Q range");
    if (is_perfect_square(fam.d)) throw PerfectSquare("family radicand D is a perfect square");
    double sqrt_d = std::sqrt(fam.d.get_d());
    std::vector<Candidate> out;
    for (long q = fam.q_lo; q <= fam.q_hi; ++q) {
        // window (arctan(2)/pi, 1/2) pins P to a short integer range
        long p_min = static_cast<long>(std::floor(0.35 * q - sqrt_d)) - 1;
        long p_max = static_cast<long>(std::ceil(0.5 * q - sqrt_d)) + 1;
        if (fam.p_range) {
            p_min = std::max(p_min, static_cast<long>(fam.p_range->first.get_si()));
            p_max = std::min(p_max, static_cast<long>(fam.p_range->second.get_si()));
        }
        for (long p = p_min; p <= p_max; ++p) {
            QuadraticSurd s = QuadraticSurd::normalize(p, fam.d, q);
            Rotation rot = Rotation::of_surd(s);
            if (rot.in_window(policy) != Verdict::certified_true) continue;
            Candidate c;
            c.id = static_cast<long>(out.size());
            c.surd = s;
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<Candidate> enumerate_cf_family(const CfFamily& fam) {
    if (fam.depth < fam.prefix.size()) throw InputError("depth smaller than the prefix");
    for (const auto& d : fam.digit_set)
        if (d < 1) throw InputError("digit set entries must be >= 1");
    if (fam.digit_set.empty()) throw InputError("digit set must be non-empty");
    std::string warning;
    for (const auto& d : fam.digit_set)
        if (mpz_odd_p(d.get_mpz_t()))
            warning = "digit set contains odd digits: parity will fail beyond index 3";
    if (mpz_odd_p(fam.period_digit.get_mpz_t()))
        warning = "periodic continuation digit is odd: parity will fail";

    size_t free_slots = fam.depth - fam.prefix.size();
    std::vector<Candidate> out;
    std::vector<size_t> choice(free_slots, 0);
    for (;;) {
        std::vector<BigInt> digits = fam.prefix;
        for (size_t slot : choice) digits.push_back(fam.digit_set[slot]);
        QuadraticNumber value = periodic_value(digits, { fam.period_digit });
        Candidate c;
        c.id = static_cast<long>(out.size());
        c.surd = QuadraticSurd::from_value(value);
        c.warning = warning;
        out.push_back(std::move(c));
        if (out.size() >= fam.max_candidates) break;
        // next lexicographic choice
        size_t i = free_slots;
        while (i > 0) {
            --i;
            if (++choice[i] < fam.digit_set.size()) break;
            choice[i] = 0;
            if (i == 0) return out; // wrapped past the last combination
        }
        if (free_slots == 0) break;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ScanRecord scan_full(const Candidate& cand, const CertifyOptions& options) {
    ScanRecord rec;
    rec.id = cand.id;
    rec.candidate = cand.surd->str();
    rec.warning = cand.warning;

    Certificate cert = certify(*cand.surd, options);
    rec.gamma_lo = cert.gamma_lo;
    rec.gamma_hi = cert.gamma_hi;
    rec.outcome = cert.outcome;
    rec.j0 = cert.j0;
    rec.precision = cert.max_precision;

    Rotation rot = Rotation::of_surd(*cand.surd);
    try {
        rec.r_mid = rot.radius(128).mid_double();
        rec.a_mid = rot.area(128).mid_double();
    } catch (const DomainViolation&) {
        // outside the window; leave zeros
    }

    bool have_margin = false;
    for (const auto& check : cert.checks) {
        if (check.verdict == Verdict::certified_true) {
            if (!have_margin || check.margin < rec.min_margin) rec.min_margin = check.margin;
            have_margin = true;
        } else if (rec.first_fail.empty()) {
            std::ostringstream os;
            os << check.kind;
            if (!check.indices.empty()) os << "@" << check.indices.front();
            rec.first_fail = os.str();
        }
    }
    if (rec.first_fail.empty() && cert.outcome == Outcome::not_certified)
        rec.first_fail = cert.reason;
    return rec;
}

ScanRecord scan_depth_limited(const Candidate& cand, const CertifyOptions& options) {
    ScanRecord rec;
    rec.id = cand.id;
    {
        std::ostringstream os;
        os << *cand.rational;
        rec.candidate = os.str();
    }
    rec.warning = cand.warning;
    rec.j0 = -1;

    Rotation rot = Rotation::of_exact(QuadraticNumber(*cand.rational));
    Interval g = rot.gamma(options.precision.start);
    rec.gamma_lo = g.lo_decimal(20);
    rec.gamma_hi = g.hi_decimal(20);
    try {
        rec.r_mid = rot.radius(128).mid_double();
        rec.a_mid = rot.area(128).mid_double();
    } catch (const DomainViolation&) {
    }

    if (rot.in_window(options.precision) != Verdict::certified_true) {
        rec.outcome = Outcome::not_certified;
        rec.first_fail = "window";
        return rec;
    }

    DeltaEngine engine(rot, options.precision);
    bool have_margin = false;
    for (long k = 2; k <= options.area_depth; ++k) {
        CheckCResult c = check_C(engine, k, options.precision);
        rec.precision = std::max(rec.precision, c.precision);
        if (c.verdict == Verdict::certified_true) {
            if (!have_margin || c.margin < rec.min_margin) rec.min_margin = c.margin;
            have_margin = true;
            continue;
        }
        rec.outcome =
            c.verdict == Verdict::certified_false ? Outcome::not_certified : Outcome::undecidable;
        std::ostringstream os;
        os << "direct_C@" << k;
        if (!c.note.empty()) os << " (" << c.note << ")";
        rec.first_fail = os.str();
        return rec;
    }
    rec.outcome = Outcome::depth_limited;
    return rec;
}

ScanRecord scan_one(const Candidate& cand, const CertifyOptions& options) {
    auto start = std::chrono::steady_clock::now();
    ScanRecord rec;
    try {
        rec = cand.surd ? scan_full(cand, options) : scan_depth_limited(cand, options);
    } catch (const Error& e) {
        // a candidate failure is a record, never a scan abort
        rec.id = cand.id;
        rec.candidate = cand.surd ? cand.surd->str() : "";
        rec.outcome = Outcome::undecidable;
        rec.first_fail = std::string("error: ") + e.what();
    }
    auto end = std::chrono::steady_clock::now();
    rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    return rec;
}

} // namespace

std::vector<ScanRecord> run_scan(const ScanJob& job, ScanSummary* summary) {
    std::vector<Candidate> candidates;
    if (std::holds_alternative<GammaGrid>(job.source))
        candidates = enumerate_grid(std::get<GammaGrid>(job.source), job.options.precision);
    else if (std::holds_alternative<SurdFamily>(job.source))
        candidates = enumerate_surd_family(std::get<SurdFamily>(job.source), job.options.precision);
    else
        candidates = enumerate_cf_family(std::get<CfFamily>(job.source));

    std::vector<ScanRecord> records(candidates.size());
    int width = std::max(job.parallelism, 1);
    if (width == 1) {
        for (size_t i = 0; i < candidates.size(); ++i) records[i] = scan_one(candidates[i], job.options);
    } else {
        std::atomic<size_t> next{ 0 };
        auto worker = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= candidates.size()) return;
                records[i] = scan_one(candidates[i], job.options);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(width));
        for (int t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (summary) {
        summary->total = records.size();
        for (const auto& r : records) {
            switch (r.outcome) {
                case Outcome::member_of_A: ++summary->member; break;
                case Outcome::not_certified: ++summary->not_certified; break;
                case Outcome::depth_limited: ++summary->depth_limited; break;
                default: ++summary->undecidable; break;
            }
        }
    }
    return records;
}

std::string to_csv(const std::vector<ScanRecord>& records) {
    std::ostringstream os;
    os << "id,gamma_lo,gamma_hi,R_mid,A_mid,outcome,j0,first_fail,min_margin,precision_bits,ms\n";
    for (const auto& r : records) {
        std::string fail = r.first_fail;
        for (auto& ch : fail)
            if (ch == ',') ch = ';';
        os << r.id << ',' << r.gamma_lo << ',' << r.gamma_hi << ',' << format_double(r.r_mid)
           << ',' << format_double(r.a_mid) << ',' << to_string(r.outcome) << ',' << r.j0 << ','
           << fail << ',' << format_double(r.min_margin) << ',' << r.precision << ',' << r.ms
           << '\n';
    }
    return os.str();
}

std::string to_json(const std::vector<ScanRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["candidate"] = r.candidate;
        j["gamma"] = { { "lo", r.gamma_lo }, { "hi", r.gamma_hi } };
        j["R_mid"] = r.r_mid;
        j["A_mid"] = r.a_mid;
        j["outcome"] = to_string(r.outcome);
        j["j0"] = r.j0;
        j["first_fail"] = r.first_fail;
        j["min_margin"] = r.min_margin;
        j["precision_bits"] = r.precision;
        j["ms"] = r.ms;
        if (!r.warning.empty()) j["warning"] = r.warning;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

} // namespace ballcert
