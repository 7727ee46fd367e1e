#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pfaffcount/census.hpp"
#include "pfaffcount/cover.hpp"
#include "pfaffcount/monomial.hpp"
#include "pfaffcount/pfaffian.hpp"
#include "pfaffcount/verify.hpp"

/// Text formats. Malformed input raises FormatError naming the offending field.
namespace pfaffcount::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// {"support": [[h,k],...], "coeffs": [["p/q"],...]}
PlaneCurve parse_plane_curve(std::string_view json_text);
std::string plane_curve_json(const PlaneCurve& curve);

/// {"r", "alpha", "evaluator", "params", "g", "P", "beta", "domain"}; polynomials
/// are lists of {"exponents": [...], "coeff": "p/q" | {"const": name, "times": "p/q"}}.
PfaffianFunction parse_function(std::string_view json_text);
std::string function_json(const PfaffianFunction& f);

/// {"id", "kind": "algebraic" | "pfaff-exact" | "pfaff-numeric", ...}
CurveSpec parse_curve_spec(std::string_view json_text);
CurveSpec load_curve_spec(const std::filesystem::path& path);

/// {"M", "H", "bound", "blocks": [{"points": [...], "curve": {...}}]}
std::string cover_json(const CoverReport& report, const std::vector<RationalPoint>& points);

std::string census_csv_header(bool timing = true);
std::string census_csv_row(const CensusRecord& record, bool timing = true);

std::string bundle_json(const VerificationBundle& bundle);
/// curve_id,H,N_empirical,bound_name,bound_value,ratio
std::string bounds_csv(const VerificationBundle& bundle);
/// curve_id,H,N,bound_name,bound (one row per bound, plot-ready)
std::string plot_csv(const VerificationBundle& bundle);

} // namespace pfaffcount::io
