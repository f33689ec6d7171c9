#include "ballcert/certifier.hpp"
#include "ballcert/geometry.hpp"
#include "ballcert/scanner.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace ballcert;

// exit codes: 0 certified / completed, 1 not certified, 2 depth-limited or
// undecidable, 3 input error
constexpr int kExitOk = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 3;

struct CommonOptions {
    std::string surd_text;
    std::string area_text;
    unsigned prec = 128;
    unsigned max_prec = 8192;
    long depth = 1000;
    std::string tail = "auto";
    std::string json_path;
    bool verbose = false;
};

CertifyOptions build_options(const CommonOptions& c) {
    CertifyOptions opt;
    opt.precision.start = static_cast<mpfr_prec_t>(c.prec);
    opt.precision.cap = static_cast<mpfr_prec_t>(c.max_prec);
    if (opt.precision.cap < opt.precision.start)
        throw InputError("--max-prec must be >= --prec");
    opt.area_depth = c.depth;
    if (c.tail == "auto") {
        opt.tail = TailStrategy::auto_detect;
    } else if (c.tail == "poly2") {
        opt.tail = TailStrategy::polynomial;
    } else if (c.tail.rfind("bounded:", 0) == 0) {
        opt.tail = TailStrategy::bounded;
        opt.tail_bound = BigInt(c.tail.substr(8));
        if (opt.tail_bound < 1) throw InputError("tail bound must be >= 1");
    } else {
        throw InputError("--tail must be auto, bounded:M or poly2");
    }
    return opt;
}

nlohmann::ordered_json effective_config(const CommonOptions& c, const std::string& subcommand) {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    if (!c.surd_text.empty()) j["surd"] = c.surd_text;
    if (!c.area_text.empty()) j["area"] = c.area_text;
    j["prec"] = c.prec;
    j["max_prec"] = c.max_prec;
    j["depth"] = c.depth;
    j["tail"] = c.tail;
    return j;
}

int outcome_exit_code(Outcome o) {
    switch (o) {
        case Outcome::member_of_A: return kExitOk;
        case Outcome::not_certified: return kExitNotCertified;
        default: return kExitInconclusive;
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open output file " + path);
    out << content;
}

int run_certify(const CommonOptions& common) {
    if (common.surd_text.empty() == common.area_text.empty())
        throw InputError("certify needs exactly one of --surd or --area");

    CertifyOptions opt = build_options(common);
    Certificate cert;
    if (!common.surd_text.empty()) {
        QuadraticSurd surd = QuadraticSurd::parse(common.surd_text);
        cert = certify(surd, opt);
    } else {
        BigRational area = parse_decimal(common.area_text);
        cert = certify_area(area, common.area_text, opt);
    }

    std::cout << "outcome: " << to_string(cert.outcome) << "\n";
    if (!cert.reason.empty()) std::cout << "reason: " << cert.reason << "\n";
    std::cout << "gamma in [" << cert.gamma_lo << ", " << cert.gamma_hi << "]\n";
    if (!cert.radius_lo.empty())
        std::cout << "R in [" << cert.radius_lo << ", " << cert.radius_hi << "]\n";
    if (!cert.area_lo.empty())
        std::cout << "A in [" << cert.area_lo << ", " << cert.area_hi << "]\n";
    if (!cert.cf_period.empty()) {
        std::cout << "cf preperiod: [";
        for (size_t i = 0; i < cert.cf_preperiod.size(); ++i)
            std::cout << (i ? "," : "") << cert.cf_preperiod[i];
        std::cout << "] period: [";
        for (size_t i = 0; i < cert.cf_period.size(); ++i)
            std::cout << (i ? "," : "") << cert.cf_period[i];
        std::cout << "]\n";
    }
    std::cout << "parity: " << to_string(cert.parity) << "\n";
    if (cert.j0 >= 0) std::cout << "j0: " << cert.j0 << "\n";
    if (!cert.direct_indices.empty()) {
        std::cout << "direct checks k: ";
        for (size_t i = 0; i < cert.direct_indices.size(); ++i)
            std::cout << (i ? "," : "") << cert.direct_indices[i];
        std::cout << "\n";
    }
    std::cout << "max precision: " << cert.max_precision << " bits\n";
    if (common.verbose) {
        for (const auto& c : cert.checks) {
            std::cout << "  " << c.kind;
            if (!c.indices.empty()) std::cout << "[" << c.indices.front() << "]";
            std::cout << " " << to_string(c.verdict) << " margin=" << c.margin << "\n";
        }
    }

    if (!common.json_path.empty()) {
        nlohmann::ordered_json j = cert.to_json();
        j["config"] = effective_config(common, "certify");
        write_file(common.json_path, j.dump(2) + "\n");
    }
    return outcome_exit_code(cert.outcome);
}

int run_cf(const CommonOptions& common, long terms, bool as_json) {
    if (common.surd_text.empty() == common.area_text.empty())
        throw InputError("cf needs exactly one of --surd or --area");
    if (terms < 1) throw InputError("-n must be >= 1");

    CertifyOptions opt = build_options(common);
    ContinuedFraction cf;
    if (!common.surd_text.empty()) {
        QuadraticSurd surd = QuadraticSurd::parse(common.surd_text);
        cf = expand_surd(surd);
    } else {
        BigRational area = parse_decimal(common.area_text);
        Rotation rot = Rotation::of_area(area, opt.precision);
        StreamExpansion stream = expand_stream(gamma_enclosure_from_area(area),
                                               static_cast<size_t>(terms), opt.precision);
        cf.digits = stream.digits;
        cf.tail = TailDescriptor::unknown_tail(stream.digits.size());
    }

    size_t n = std::min<size_t>(static_cast<size_t>(terms),
                                cf.known_digits() == SIZE_MAX ? static_cast<size_t>(terms)
                                                              : cf.known_digits());
    if (n == 0) throw InputError("no digits available");
    ConvergentTable table = convergents(cf, n - 1);

    if (as_json || !common.json_path.empty()) {
        nlohmann::ordered_json j;
        nlohmann::ordered_json digits = nlohmann::ordered_json::array();
        for (size_t i = 0; i < n; ++i) digits.push_back(cf.digit(i).get_str());
        j["digits"] = digits;
        j["tail"] = cf.tail.str();
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& r : table.rows()) {
            nlohmann::ordered_json row;
            row["j"] = r.j;
            row["p"] = r.p.get_str();
            row["q"] = r.q.get_str();
            if (r.q_tilde) row["q_tilde"] = r.q_tilde->get_str();
            rows.push_back(row);
        }
        j["convergents"] = rows;
        std::string text = j.dump(2) + "\n";
        if (!common.json_path.empty())
            write_file(common.json_path, text);
        else
            std::cout << text;
        return kExitOk;
    }

    std::cout << "digits:";
    for (size_t i = 0; i < n; ++i) std::cout << " " << cf.digit(i);
    std::cout << "\ntail: " << cf.tail.str() << "\n";
    std::cout << "   j            p            q      q~\n";
    for (const auto& r : table.rows()) {
        std::printf("%4zu %12s %12s %7s\n", r.j, r.p.get_str().c_str(), r.q.get_str().c_str(),
                    r.q_tilde ? r.q_tilde->get_str().c_str() : "-");
    }
    return kExitOk;
}

int run_scan(const CommonOptions& common, const std::string& grid_text,
             const std::string& family_text, const std::string& cf_family_text,
             const std::string& digit_set_text, long cf_depth, long max_candidates,
             int parallel, const std::string& csv_path) {
    int sources = (!grid_text.empty()) + (!family_text.empty()) + (!cf_family_text.empty());
    if (sources != 1) throw InputError("scan needs exactly one of --grid, --surd-family, --cf-family");

    ScanJob job;
    job.options = build_options(common);
    job.parallelism = parallel;

    auto split = [](const std::string& text) {
        std::vector<std::string> parts;
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ',')) parts.push_back(tok);
        return parts;
    };

    if (!grid_text.empty()) {
        auto parts = split(grid_text);
        if (parts.size() != 3) throw InputError("--grid lo,hi,steps");
        GammaGrid g;
        g.lo = parse_decimal(parts[0]);
        g.hi = parse_decimal(parts[1]);
        g.steps = std::stol(parts[2]);
        job.source = g;
    } else if (!family_text.empty()) {
        auto parts = split(family_text);
        if (parts.size() != 3 && parts.size() != 5)
            throw InputError("--surd-family D,Qlo,Qhi[,Plo,Phi]");
        SurdFamily f;
        f.d = BigInt(parts[0]);
        f.q_lo = std::stol(parts[1]);
        f.q_hi = std::stol(parts[2]);
        if (parts.size() == 5) f.p_range = std::make_pair(BigInt(parts[3]), BigInt(parts[4]));
        job.source = f;
    } else {
        auto prefix_parts = split(cf_family_text);
        CfFamily f;
        for (const auto& t : prefix_parts) f.prefix.push_back(BigInt(t));
        if (digit_set_text.empty()) throw InputError("--cf-family needs --digit-set");
        for (const auto& t : split(digit_set_text)) f.digit_set.push_back(BigInt(t));
        f.depth = static_cast<size_t>(cf_depth);
        f.max_candidates = static_cast<size_t>(max_candidates);
        job.source = f;
    }

    ScanSummary summary;
    std::vector<ScanRecord> records = ballcert::run_scan(job, &summary);

    std::cout << "scanned " << summary.total << " candidates: " << summary.member
              << " member_of_A, " << summary.not_certified << " not_certified, "
              << summary.depth_limited << " depth_limited, " << summary.undecidable
              << " undecidable\n";

    if (!csv_path.empty()) write_file(csv_path, to_csv(records));
    if (!common.json_path.empty()) write_file(common.json_path, to_json(records));
    return kExitOk;
}

int run_simulate(const CommonOptions& common, double radius, int steps,
                 const std::string& csv_path) {
    double R = radius;
    if (!common.surd_text.empty()) {
        QuadraticSurd surd = QuadraticSurd::parse(common.surd_text);
        Rotation rot = Rotation::of_surd(surd);
        R = rot.radius(128).mid_double();
    }
    if (R <= 1.0) throw InputError("simulate needs --radius > 1 or a surd in range");

    auto rows = geometry::simulate_circle(R, steps);
    std::ostringstream os;
    os << "k,x,y,angle,angle_step,cubic_residual\n";
    for (const auto& r : rows) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%d,%.15g,%.15g,%.15g,%.15g,%.3e\n", r.k, r.x, r.y,
                      r.angle, r.angle_step, r.cubic_residual);
        os << buf;
    }
    if (!csv_path.empty())
        write_file(csv_path, os.str());
    else
        std::cout << os.str();
    std::cout << "simulated " << rows.size() << " steps at R = " << R << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{ "certified roundness from constant-area tangent sections" };
    app.require_subcommand(1);

    CommonOptions common;

    auto add_common = [&common](CLI::App* sub, bool with_input) {
        if (with_input) {
            sub->add_option("--surd", common.surd_text, "exact rotation number (P+sqrt(D))/Q as P,D,Q");
            sub->add_option("--area", common.area_text, "section area as an exact decimal");
        }
        sub->add_option("--prec", common.prec, "starting precision in bits");
        sub->add_option("--max-prec", common.max_prec, "precision cap in bits");
        sub->add_option("--depth", common.depth, "k-depth for enclosure-backed inputs");
        sub->add_option("--tail", common.tail, "tail closure: auto | bounded:M | poly2");
        sub->add_option("--json", common.json_path, "write a JSON report to this path");
        sub->add_flag("--verbose", common.verbose, "print every check");
    };

    auto* certify_cmd = app.add_subcommand("certify", "decide membership for one value");
    add_common(certify_cmd, true);

    auto* cf_cmd = app.add_subcommand("cf", "print digits and convergents");
    add_common(cf_cmd, true);
    long cf_terms = 16;
    bool cf_json = false;
    cf_cmd->add_option("-n,--terms", cf_terms, "number of digits");
    cf_cmd->add_flag("--json-stdout", cf_json, "print JSON to stdout");

    auto* scan_cmd = app.add_subcommand("scan", "classify a family of candidates");
    add_common(scan_cmd, false);
    std::string grid_text, family_text, cf_family_text, digit_set_text, csv_path;
    long cf_depth = 8, max_candidates = 128;
    int parallel = 1;
    scan_cmd->add_option("--grid", grid_text, "gamma grid lo,hi,steps (depth-limited)");
    scan_cmd->add_option("--surd-family", family_text, "family D,Qlo,Qhi[,Plo,Phi]");
    scan_cmd->add_option("--cf-family", cf_family_text, "digit prefix a0,a1,...");
    scan_cmd->add_option("--digit-set", digit_set_text, "allowed digits for --cf-family");
    scan_cmd->add_option("--cf-depth", cf_depth, "total digits for --cf-family");
    scan_cmd->add_option("--max-candidates", max_candidates, "cap for --cf-family enumeration");
    scan_cmd->add_option("--parallel", parallel, "worker threads");
    scan_cmd->add_option("--csv", csv_path, "write records as CSV");

    auto* sim_cmd = app.add_subcommand("simulate", "tangent-chord trajectory on a circle");
    add_common(sim_cmd, true);
    double radius = 0.0;
    int steps = 100;
    std::string sim_csv;
    sim_cmd->add_option("--radius", radius, "circle radius R > 1");
    sim_cmd->add_option("--steps", steps, "trajectory length");
    sim_cmd->add_option("--csv", sim_csv, "write the trajectory as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify_cmd->parsed()) return run_certify(common);
        if (cf_cmd->parsed()) return run_cf(common, cf_terms, cf_json);
        if (scan_cmd->parsed())
            return run_scan(common, grid_text, family_text, cf_family_text, digit_set_text,
                            cf_depth, max_candidates, parallel, csv_path);
        if (sim_cmd->parsed()) return run_simulate(common, radius, steps, sim_csv);
    } catch (const ballcert::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ballcert::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
