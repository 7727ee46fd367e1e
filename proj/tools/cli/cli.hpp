#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pfaffcount/interval.hpp>
#include <pfaffcount/rational.hpp>

namespace pfaffcount::cli {

enum class Command { params, bounds, census, cover, verify, threshold };

struct RunPlan {
    Command command = Command::params;
    std::optional<std::string> curve;
    /// Strictly increasing, nonempty where a command needs it.
    std::vector<Integer> H;
    std::optional<std::pair<int, int>> box;
    std::optional<int> total_degree;
    std::optional<std::string> out;
    std::optional<std::string> plot;
    Precision precision = 1024;
    int jobs = 1;
    bool timing = true;

    // bounds
    bool thm13 = false;
    bool thm14 = false;
    bool lemma21 = false;
    int b = 0;
    int c = 0;
    int r = 1;
    int alpha = 1;
    int beta = 1;
    std::string L = "1";
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kVerificationFailed = 3;

/// Parses "4,10,100" (entries may be written 1e6); nonempty and strictly increasing.
std::vector<Integer> parse_height_list(const std::string& text);

/// Runs one command. Returns the exit code; messages go to `err`.
int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pfaffcount::cli
