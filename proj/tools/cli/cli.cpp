#include "cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <pfaffcount/bounds.hpp>
#include <pfaffcount/census.hpp>
#include <pfaffcount/cover.hpp>
#include <pfaffcount/errors.hpp>
#include <pfaffcount/io.hpp>
#include <pfaffcount/monomial.hpp>
#include <pfaffcount/verify.hpp>

namespace pfaffcount::cli {

namespace {

std::string decimal(const Rational& q, int places, bool round_up)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    const Rational scaled = q * Rational(scale);
    Integer n;
    if (round_up) {
        mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    } else {
        mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    }
    const bool negative = n < 0;
    std::string digits = Integer(abs(n)).get_str();
    if (digits.size() <= static_cast<std::size_t>(places)) {
        digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    return (negative ? "-" : "") + digits;
}

struct MonomialChoice {
    MonomialSet M;
    std::string label;
};

MonomialChoice monomials(const RunPlan& plan)
{
    if (plan.box && plan.total_degree) {
        throw PreconditionError("--box and --total-degree are mutually exclusive");
    }
    if (plan.box) {
        if (plan.box->first < 1 || plan.box->second < 1) {
            throw PreconditionError("--box needs B, G >= 1");
        }
        return {box_set(plan.box->first, plan.box->second),
                "box " + std::to_string(plan.box->first) + " " + std::to_string(plan.box->second)};
    }
    const int d = plan.total_degree.value_or(1);
    if (d < 0) {
        throw PreconditionError("--total-degree needs D >= 0");
    }
    return {total_degree_set(d), "total-degree " + std::to_string(d)};
}

void require_heights(const RunPlan& plan)
{
    if (plan.H.empty()) {
        throw PreconditionError("--H is required");
    }
}

CurveSpec require_curve(const RunPlan& plan)
{
    if (!plan.curve) {
        throw PreconditionError("--curve is required");
    }
    return io::load_curve_spec(*plan.curve);
}

void emit(const RunPlan& plan, const std::string& text, std::ostream& out)
{
    if (plan.out) {
        io::write_file(*plan.out, text);
    } else {
        out << text;
    }
}

int run_params(const RunPlan& plan, std::ostream& out)
{
    const auto choice = monomials(plan);
    const auto p = parameters(choice.M);
    out << "M=" << choice.label << "\n";
    out << "D=" << p.D << " R=" << p.R << " s=" << p.s << " t=" << p.t << " S=" << p.S;
    if (p.rho) {
        out << " rho=" << format_rational(*p.rho) << " sigma=" << format_rational(*p.sigma)
            << " C<=" << decimal(*p.C_upper, 4, true);
    } else {
        out << " rho=n/a sigma=n/a C=n/a";
    }
    out << "\n";
    return kOk;
}

VerifyOptions verify_options(const RunPlan& plan)
{
    const auto choice = monomials(plan);
    VerifyOptions options;
    options.H = plan.H;
    options.M = choice.M;
    options.M_label = choice.label;
    options.jobs = plan.jobs;
    options.precision.max = plan.precision;
    options.precision.start = std::min<Precision>(64, plan.precision);
    return options;
}

int run_bounds(const RunPlan& plan, std::ostream& out)
{
    require_heights(plan);
    if (plan.curve) {
        const CurveSpec spec = require_curve(plan);
        const VerificationBundle bundle = run_verification(spec, verify_options(plan));
        emit(plan, io::bounds_csv(bundle), out);
        return kOk;
    }
    if (!plan.thm13 && !plan.thm14 && !plan.lemma21) {
        throw PreconditionError("bounds needs --curve, --thm13, --thm14 or --lemma21");
    }
    std::ostringstream csv;
    csv << "bound_name,H,bound_value\n";
    for (const auto& H : plan.H) {
        if (plan.thm14) {
            const std::string tag = "(" + std::to_string(plan.b) + "," + std::to_string(plan.c) + ")";
            csv << "thm14" << tag << "," << H.get_str() << "," << thm14_bound(plan.b, plan.c, H).upper_decimal() << "\n";
            csv << "thm14_pipeline" << tag << "," << H.get_str() << ","
                << thm14_pipeline(plan.b, plan.c, H).value.upper_decimal() << "\n";
        }
        if (plan.thm13) {
            const Thm13Report rep = thm13_best(plan.r, plan.alpha, plan.beta, H);
            csv << "thm13_simple," << H.get_str() << "," << rep.simple_value().upper_decimal() << "\n";
            csv << "thm13_pipeline(d=" << rep.d << ")," << H.get_str() << "," << rep.pipeline_value().upper_decimal()
                << "\n";
        }
        if (plan.lemma21) {
            const auto choice = monomials(plan);
            csv << "lemma21[" << choice.label << ";L=" << plan.L << "]," << H.get_str() << ","
                << lemma21_bound(choice.M, parse_length(plan.L), H).upper_decimal() << "\n";
        }
    }
    emit(plan, csv.str(), out);
    return kOk;
}

int run_census_command(const RunPlan& plan, std::ostream& out)
{
    require_heights(plan);
    const CurveSpec spec = require_curve(plan);
    PrecisionPolicy precision;
    precision.max = plan.precision;
    precision.start = std::min<Precision>(64, plan.precision);
    std::ostringstream csv;
    csv << io::census_csv_header(plan.timing) << "\n";
    for (const auto& H : plan.H) {
        csv << io::census_csv_row(run_census(spec, H, plan.jobs, precision), plan.timing) << "\n";
    }
    emit(plan, csv.str(), out);
    return kOk;
}

int run_cover(const RunPlan& plan, std::ostream& out)
{
    require_heights(plan);
    const CurveSpec spec = require_curve(plan);
    const VerificationBundle bundle = run_verification(spec, verify_options(plan));
    std::ostringstream text;
    text << "[\n";
    bool first = true;
    for (const auto& h : bundle.heights) {
        for (const auto& pc : h.covers) {
            text << (first ? "" : ",\n");
            first = false;
            std::string cover = io::cover_json(pc.report, pc.points);
            text << cover;
        }
    }
    text << "\n]\n";
    emit(plan, text.str(), out);
    bool ok = true;
    for (const auto& h : bundle.heights) {
        for (const auto& pc : h.covers) {
            ok = ok && pc.sound && pc.within_bound;
        }
    }
    return ok ? kOk : kVerificationFailed;
}

int run_verify(const RunPlan& plan, std::ostream& out)
{
    require_heights(plan);
    const CurveSpec spec = require_curve(plan);
    const VerificationBundle bundle = run_verification(spec, verify_options(plan));
    emit(plan, io::bundle_json(bundle), out);
    if (plan.plot) {
        io::write_file(*plan.plot, io::plot_csv(bundle));
    }
    if (plan.out) {
        for (const auto& h : bundle.heights) {
            out << bundle.curve_id << " H=" << h.census.H.get_str() << " N=" << h.census.N << " "
                << (h.pass ? "pass" : "FAIL") << "\n";
        }
    }
    return bundle.pass ? kOk : kVerificationFailed;
}

int run_threshold(const RunPlan& plan, std::ostream& out)
{
    const Thm13Threshold th = thm13_threshold(plan.r, plan.alpha, plan.beta);
    std::ostringstream text;
    text << "r=" << plan.r << " alpha=" << plan.alpha << " beta=" << plan.beta << "\n";
    text << "H0=m*2^e m=" << th.mantissa.get_str() << " e=" << th.exponent << "\n";
    text << "log_H0=" << th.log_H0.upper_decimal(8) << "\n";
    text << "probes=" << th.probes.size() << " all_pass=" << (th.all_probes_pass ? "true" : "false")
         << " restarts=" << th.restarts << "\n";
    const auto& top = th.probes.back().report;
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.3f", th.top_log10_ratio);
    text << "top_probe d=" << top.d << " log10(pipeline/simple)<=" << ratio << "\n";
    emit(plan, text.str(), out);
    return th.all_probes_pass ? kOk : kVerificationFailed;
}

int run(const RunPlan& plan, std::ostream& out)
{
    if (plan.jobs < 1) {
        throw PreconditionError("--jobs needs N >= 1");
    }
    if (plan.precision < 64) {
        throw PreconditionError("--precision needs BITS >= 64");
    }
    switch (plan.command) {
    case Command::params:
        return run_params(plan, out);
    case Command::bounds:
        return run_bounds(plan, out);
    case Command::census:
        return run_census_command(plan, out);
    case Command::cover:
        return run_cover(plan, out);
    case Command::verify:
        return run_verify(plan, out);
    case Command::threshold:
        return run_threshold(plan, out);
    }
    return kInternalError;
}

void add_monomial_flags(CLI::App* sub, RunPlan& plan, std::vector<int>& box)
{
    sub->add_option("--box", box, "Monomial set M(B, G) = {x^h y^k : h < B, k < G}")->expected(2);
    sub->add_option("--total-degree", plan.total_degree, "Monomial set of total degree <= D");
}

} // namespace

std::vector<Integer> parse_height_list(const std::string& text)
{
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Integer value;
        const auto e = item.find_first_of("eE");
        try {
            if (e == std::string::npos) {
                value = Integer(item, 10);
            } else {
                Integer mantissa(item.substr(0, e), 10);
                const unsigned long exponent = std::stoul(item.substr(e + 1));
                Integer scale;
                mpz_ui_pow_ui(scale.get_mpz_t(), 10, exponent);
                value = mantissa * scale;
            }
        } catch (const std::exception&) {
            throw FormatError("--H: malformed height '" + item + "'");
        }
        if (value < 1) {
            throw PreconditionError("--H: heights must be >= 1");
        }
        if (!out.empty() && value <= out.back()) {
            throw PreconditionError("--H: schedule must be strictly increasing");
        }
        out.push_back(value);
    }
    if (out.empty()) {
        throw PreconditionError("--H: schedule must be nonempty");
    }
    return out;
}

int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"pfaffcount: rational points of bounded height on pfaff and algebraic curves"};
    app.require_subcommand(1);
    app.footer("Exit status: 0 ok, 1 internal error, 2 usage or precondition error, 3 a verification flag failed.\n"
               "PFAFF_CENSUS_SEED is reserved and unused.");

    RunPlan plan;
    std::string heights;
    std::vector<int> box;
    bool no_timing = false;

    auto* params = app.add_subcommand("params", "Print D, R, s, t, S, rho, sigma and an upper bound on C for M");
    add_monomial_flags(params, plan, box);

    auto* bounds = app.add_subcommand("bounds", "Evaluate bounds, or bound rows of a curve as CSV");
    bounds->add_option("--curve", plan.curve, "Curve-spec JSON; prints curve_id,H,N_empirical,bound_name,...");
    bounds->add_option("--H", heights, "Comma-separated strictly increasing heights");
    bounds->add_flag("--thm13", plan.thm13, "Pfaff curve bounds for chain parameters --r --alpha --beta");
    bounds->add_flag("--thm14", plan.thm14, "Algebraic curve bound for bidegree --b --c");
    bounds->add_flag("--lemma21", plan.lemma21, "Cover bound for M, --L and H");
    bounds->add_option("--b", plan.b, "x-degree for --thm14");
    bounds->add_option("--c", plan.c, "y-degree for --thm14");
    bounds->add_option("--r", plan.r, "Chain order for --thm13");
    bounds->add_option("--alpha", plan.alpha, "Chain degree for --thm13");
    bounds->add_option("--beta", plan.beta, "Degree of P for --thm13");
    bounds->add_option("--L", plan.L, "Interval length for --lemma21: p/q or sqrt(p/q)");
    add_monomial_flags(bounds, plan, box);
    bounds->add_option("--jobs", plan.jobs, "Worker threads for the census");
    bounds->add_option("--precision", plan.precision, "Precision ceiling in bits for numeric censuses");
    bounds->add_option("--out", plan.out, "Write output to PATH instead of stdout");

    auto* census = app.add_subcommand("census", "Census CSV: curve_id,H,N,status,seconds");
    census->add_option("--curve", plan.curve, "Curve-spec JSON")->required();
    census->add_option("--H", heights, "Comma-separated strictly increasing heights")->required();
    census->add_option("--jobs", plan.jobs, "Worker threads");
    census->add_option("--precision", plan.precision, "Precision ceiling in bits for numeric censuses");
    census->add_flag("--no-timing", no_timing, "Omit the seconds column");
    census->add_option("--out", plan.out, "Write CSV to PATH instead of stdout");

    auto* cover = app.add_subcommand("cover", "Block covers of each slope piece as JSON");
    cover->add_option("--curve", plan.curve, "Curve-spec JSON")->required();
    cover->add_option("--H", heights, "Comma-separated strictly increasing heights")->required();
    add_monomial_flags(cover, plan, box);
    cover->add_option("--jobs", plan.jobs, "Worker threads for the census");
    cover->add_option("--precision", plan.precision, "Precision ceiling in bits for numeric censuses");
    cover->add_option("--out", plan.out, "Write JSON to PATH instead of stdout");

    auto* verify = app.add_subcommand("verify", "Census, covers and bounds with pass/fail flags as a JSON bundle");
    verify->add_option("--curve", plan.curve, "Curve-spec JSON")->required();
    verify->add_option("--H", heights, "Comma-separated strictly increasing heights")->required();
    add_monomial_flags(verify, plan, box);
    verify->add_option("--jobs", plan.jobs, "Worker threads for the census");
    verify->add_option("--precision", plan.precision, "Precision ceiling in bits for numeric censuses");
    verify->add_option("--out", plan.out, "Write the bundle to PATH instead of stdout");
    verify->add_option("--plot", plan.plot, "Also write plot-ready CSV (curve_id,H,N,bound_name,bound) to PATH");

    auto* threshold = app.add_subcommand("threshold", "Certified-probe threshold H0 for the Pfaff pipeline");
    threshold->add_option("--r", plan.r, "Chain order");
    threshold->add_option("--alpha", plan.alpha, "Chain degree");
    threshold->add_option("--beta", plan.beta, "Degree of P");
    threshold->add_option("--out", plan.out, "Write output to PATH instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        for (const auto& [sub, cmd] : {std::pair{params, Command::params}, std::pair{bounds, Command::bounds},
                                       std::pair{census, Command::census}, std::pair{cover, Command::cover},
                                       std::pair{verify, Command::verify}, std::pair{threshold, Command::threshold}}) {
            if (sub->parsed()) {
                plan.command = cmd;
            }
        }
        if (!box.empty()) {
            plan.box = std::pair{box[0], box[1]};
        }
        if (!heights.empty()) {
            plan.H = parse_height_list(heights);
        }
        plan.timing = !no_timing;
        return run(plan, out);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}

} // namespace pfaffcount::cli
