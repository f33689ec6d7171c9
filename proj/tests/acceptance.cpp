#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ballcert/certifier.hpp"
#include "ballcert/geometry.hpp"
#include "ballcert/scanner.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace ballcert;

namespace {

const PrecisionPolicy kPolicy{ 128, 8192 };

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int criterion, const std::string& name, bool pass, double secs) {
    std::printf("ACCEPTANCE %d (%s): %s [%.1fs]\n", criterion, name.c_str(),
                pass ? "PASS" : "FAIL", secs);
    std::fflush(stdout);
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// run the installed CLI binary; the path arrives via BALLCERT_CLI
CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("BALLCERT_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "BALLCERT_CLI must point at the ballcert binary");
    std::string cmd = std::string("'") + bin + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) res.out.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string temp_path(const std::string& stem) {
    return "acceptance_" + stem + ".json";
}

std::string strip_ms_column(const std::string& csv) {
    std::istringstream is(csv);
    std::ostringstream os;
    std::string line;
    while (std::getline(is, line)) os << line.substr(0, line.rfind(',')) << "\n";
    return os.str();
}

} // namespace

TEST_CASE("acceptance 1: gamma0 end to end") {
    auto t0 = std::chrono::steady_clock::now();
    std::string json_path = temp_path("g0");
    CliResult cli = run_cli("certify --surd 4,2,14 --json " + json_path);
    bool ok = cli.exit_code == 0;
    CHECK(cli.exit_code == 0);

    std::ifstream in(json_path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    ok = ok && j["outcome"]["kind"] == "member_of_A";
    CHECK(j["outcome"]["kind"] == "member_of_A");
    ok = ok && j["cf"]["preperiod"] == nlohmann::json({ 0, 2, 1, 1 });
    CHECK(j["cf"]["preperiod"] == nlohmann::json({ 0, 2, 1, 1 }));
    ok = ok && j["cf"]["period"] == nlohmann::json({ 2 });
    CHECK(j["cf"]["period"] == nlohmann::json({ 2 }));
    ok = ok && j["j0"] == 4;
    CHECK(j["j0"] == 4);

    std::vector<long> direct;
    for (const auto& c : j["checks"])
        if (c["kind"] == "direct_C") direct.push_back(c["indices"][0].get<long>());
    ok = ok && direct == std::vector<long>{ 2, 3, 4, 5, 6 };
    CHECK(direct == std::vector<long>{ 2, 3, 4, 5, 6 });

    // convergent denominators behind the certificate
    ConvergentTable t = convergents(expand_surd(QuadraticSurd::normalize(4, 2, 14)), 5);
    bool qs = t.q(2) == 3 && t.q(3) == 5 && t.q(4) == 13 && t.q(5) == 31;
    bool qts = t.q_tilde(2) == 2 && t.q_tilde(3) == 3 && t.q_tilde(4) == 7 && t.q_tilde(5) == 16;
    CHECK(qs);
    CHECK(qts);
    ok = ok && qs && qts;

    double secs = seconds_since(t0);
    ok = ok && secs < 10.0;
    CHECK(secs < 10.0);
    report(1, "gamma0 end to end", ok, secs);
}

TEST_CASE("acceptance 2: gamma1 end to end") {
    auto t0 = std::chrono::steady_clock::now();
    std::string json_path = temp_path("g1");
    CliResult cli = run_cli("certify --surd 40,2,94 --json " + json_path);
    bool ok = cli.exit_code == 0;
    CHECK(cli.exit_code == 0);

    std::ifstream in(json_path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    ok = ok && j["outcome"]["kind"] == "member_of_A" && j["j0"] == 3;
    CHECK(j["outcome"]["kind"] == "member_of_A");
    CHECK(j["j0"] == 3);
    std::vector<long> direct;
    for (const auto& c : j["checks"])
        if (c["kind"] == "direct_C") direct.push_back(c["indices"][0].get<long>());
    ok = ok && direct == std::vector<long>{ 2, 3, 4 };
    CHECK(direct == std::vector<long>{ 2, 3, 4 });

    double secs = seconds_since(t0);
    ok = ok && secs < 10.0;
    CHECK(secs < 10.0);
    report(2, "gamma1 end to end", ok, secs);
}

TEST_CASE("acceptance 3: derived constants") {
    auto t0 = std::chrono::steady_clock::now();
    Rotation rot = Rotation::of_surd(QuadraticSurd::normalize(4, 2, 14));

    Interval R = rot.radius(128).widened(4e-5);
    bool r_ok = R.width_double() < 1e-4 && R.contains(parse_decimal("2.87037"));
    CHECK(r_ok);

    Interval A = rot.area(128).widened(4e-4);
    bool a_ok = A.width_double() < 1e-3 && A.contains(parse_decimal("81.5849"));
    CHECK(a_ok);

    double secs = seconds_since(t0);
    report(3, "derived constants", r_ok && a_ok, secs);
}

TEST_CASE("acceptance 4: oracle consistency to k = 10^4") {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const char* surd : { "4,2,14", "40,2,94" }) {
        Rotation rot = Rotation::of_surd(QuadraticSurd::parse(surd));
        DeltaEngine engine(rot, kPolicy);
        for (long k = 2; k <= 10000; ++k) {
            CheckCResult res = check_C(engine, k, kPolicy);
            if (res.verdict != Verdict::certified_true) {
                ok = false;
                MESSAGE("C fails/undecided at k=", k, " for ", surd);
                break;
            }
        }
    }
    CHECK(ok);
    double secs = seconds_since(t0);
    bool in_time = secs < 600.0;
    CHECK(in_time);
    report(4, "oracle consistency 2..10^4", ok && in_time, secs);
}

TEST_CASE("acceptance 5: diophantine suite on random surds") {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(987654321);
    std::uniform_int_distribution<long> dd(2, 400);
    std::uniform_int_distribution<long> qd(7, 120);
    std::uniform_real_distribution<double> td(0.34, 0.49);

    QuadraticNumber third(BigRational(1, 3)), half(BigRational(1, 2));
    int generated = 0;
    bool ok = true;
    while (generated < 50) {
        long d = dd(rng);
        if (is_perfect_square(BigInt(d))) continue;
        long q = qd(rng);
        long p = static_cast<long>(std::lround(td(rng) * q - std::sqrt(double(d))));
        QuadraticSurd s = QuadraticSurd::normalize(p, d, q);
        if (!(s.value() > third && s.value() < half)) continue;
        ++generated;
        ContinuedFraction cf = expand_surd(s);
        ConvergentTable t = convergents(cf, 13);
        DiophantineReport rep = diophantine_bounds_check(cf, t, s, 12, 6);
        if (!rep.all_ok()) {
            ok = false;
            MESSAGE("diophantine failure for ", s.str(), ": ", rep.detail);
        }
    }
    CHECK(ok);
    double secs = seconds_since(t0);
    report(5, "diophantine suite, 50 random surds", ok, secs);
}

TEST_CASE("acceptance 6: geometry oracle") {
    auto t0 = std::chrono::steady_clock::now();
    const double R0 = 2.8703719435319899503;
    bool ok = true;

    for (double R : { 2.5, R0, 5.0 }) {
        geometry::ConvexProfile prof = geometry::ConvexProfile::circle(R);
        double expected = (4.0 / 3.0) * M_PI * std::pow(R * R - 1.0, 1.5);
        for (int i = 0; i < 100; ++i) {
            double s = -4.0 + 8.0 * i / 99.0;
            double a = geometry::section_area(prof, s);
            if (std::abs(a - expected) > 1e-8 * expected) ok = false;
        }
        for (int i = 0; i < 50; ++i) {
            double s = (i < 25 ? -5.0 + i * 0.196 : 0.1 + (i - 25) * 0.196);
            if (geometry::cubic_residual(R, s) > 1e-10) ok = false;
        }
        double expected_step = -2.0 * std::acos(1.0 / R);
        geometry::Point p{ 1.0, -std::sqrt(R * R - 1.0) };
        double prev = std::atan2(p.y, p.x);
        for (int k = 2; k <= 100; ++k) {
            p = geometry::chord_map_circle(R, p);
            double ang = std::atan2(p.y, p.x);
            double step = ang - prev;
            while (step > 0) step -= 2 * M_PI;
            if (std::abs(step - expected_step) > 1e-10) ok = false;
            prev = ang;
        }
    }

    // chord iterates match the arithmetic rotation points at R0
    Rotation rot = Rotation::of_surd(QuadraticSurd::normalize(4, 2, 14));
    geometry::Point p{ 1.0, -std::sqrt(R0 * R0 - 1.0) };
    for (long k = 2; k <= 100; ++k) {
        p = geometry::chord_map_circle(R0, p);
        auto [x, y] = rotation_point(rot, k, 160);
        if (std::abs(p.x - x.mid_double()) > 1e-10) ok = false;
        if (std::abs(p.y - y.mid_double()) > 1e-10) ok = false;
    }

    // z t = 1 for 100 random slopes
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> sd(-6.0, 6.0);
    int done = 0;
    while (done < 100) {
        double s = sd(rng);
        if (std::abs(s) < 1e-3) continue;
        ++done;
        geometry::TangentLine l;
        l.s = s;
        if (std::abs(l.z() * l.t() - 1.0) > 1e-12) ok = false;
    }

    CHECK(ok);
    double secs = seconds_since(t0);
    report(6, "geometry oracle", ok, secs);
}

TEST_CASE("acceptance 7: scan phenomenon") {
    auto t0 = std::chrono::steady_clock::now();

    ScanJob grid_job;
    GammaGrid grid;
    grid.lo = parse_decimal("0.36");
    grid.hi = parse_decimal("0.48");
    grid.steps = 500;
    grid_job.source = grid;
    grid_job.options.area_depth = 1000;
    grid_job.parallelism = 8;
    ScanSummary grid_summary;
    std::vector<ScanRecord> grid_records = run_scan(grid_job, &grid_summary);

    ScanJob family_job;
    SurdFamily fam;
    fam.d = 2;
    fam.q_lo = 10;
    fam.q_hi = 100;
    family_job.source = fam;
    family_job.parallelism = 8;
    ScanSummary family_summary;
    std::vector<ScanRecord> family_records = run_scan(family_job, &family_summary);

    size_t certified = family_summary.member;
    size_t with_failures = 0;
    for (const auto& r : grid_records)
        if (!r.first_fail.empty()) ++with_failures;
    for (const auto& r : family_records)
        if (!r.first_fail.empty()) ++with_failures;

    bool found_g0 = false, found_g1 = false;
    for (const auto& r : family_records) {
        if (r.candidate == "(4+sqrt(2))/14" && r.outcome == Outcome::member_of_A) found_g0 = true;
        if (r.candidate == "(40+sqrt(2))/94" && r.outcome == Outcome::member_of_A) found_g1 = true;
    }

    bool ok = certified >= 1 && with_failures >= 1 && found_g0 && found_g1;
    CHECK(certified >= 1);
    CHECK(with_failures >= 1);
    CHECK(found_g0);
    CHECK(found_g1);

    double secs = seconds_since(t0);
    bool in_time = secs < 1800.0;
    CHECK(in_time);
    report(7, "scan phenomenon", ok && in_time, secs);
}

TEST_CASE("acceptance 8: negative paths") {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;

    // rational input: (1+sqrt(4))/2 = 3/2
    CliResult rational = run_cli("certify --surd 1,4,2");
    ok = ok && rational.exit_code == 3;
    CHECK(rational.exit_code == 3);

    // a_3-even continued fraction: parity refusal with a reason
    CliResult parity_cli = run_cli("certify --surd 6,2,20");
    ok = ok && parity_cli.exit_code == 1;
    CHECK(parity_cli.exit_code == 1);
    Certificate cert = certify(QuadraticSurd::normalize(6, 2, 20));
    ok = ok && cert.parity == Verdict::certified_false &&
         cert.outcome == Outcome::not_certified &&
         cert.reason.find("parity") != std::string::npos;
    CHECK(cert.parity == Verdict::certified_false);
    CHECK(cert.outcome == Outcome::not_certified);
    CHECK(cert.reason.find("parity") != std::string::npos);

    // near tie: a deep convergent of sqrt(2) sits ~1.3e-41 above it; 64 bits
    // cannot separate, escalation to 256 bits can
    BigRational close(BigInt("233806732499933208099"), BigInt("165326326037771920630"));
    QuadraticSurd r2 = QuadraticSurd::normalize(0, 2, 1);
    auto cmp = [&](mpfr_prec_t p) {
        return certify_less(r2.enclosure(p), Interval::of_rational(close, p));
    };
    Verdict at64 = run_ladder(PrecisionPolicy{ 64, 64 }, cmp);
    Verdict at256 = run_ladder(PrecisionPolicy{ 64, 256 }, cmp);
    ok = ok && at64 == Verdict::unknown && at256 == Verdict::certified_true;
    CHECK(at64 == Verdict::unknown);
    CHECK(at256 == Verdict::certified_true);

    double secs = seconds_since(t0);
    report(8, "negative paths", ok, secs);
}

TEST_CASE("acceptance 9: scan determinism") {
    auto t0 = std::chrono::steady_clock::now();

    auto make_job = [](int parallel) {
        ScanJob job;
        GammaGrid grid;
        grid.lo = parse_decimal("0.37");
        grid.hi = parse_decimal("0.47");
        grid.steps = 40;
        job.source = grid;
        job.options.area_depth = 300;
        job.parallelism = parallel;
        return job;
    };

    std::string first = strip_ms_column(to_csv(run_scan(make_job(1))));
    std::string second = strip_ms_column(to_csv(run_scan(make_job(1))));
    std::string parallel = strip_ms_column(to_csv(run_scan(make_job(8))));

    bool ok = first == second && first == parallel;
    CHECK(first == second);
    CHECK(first == parallel);

    double secs = seconds_since(t0);
    report(9, "scan determinism", ok, secs);
}
