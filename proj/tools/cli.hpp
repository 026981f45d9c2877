#pragma once

#include "kronbound/quadrature.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kronbound::cli {

enum ExitCode : int {
    kPass = 0,
    kPropertyViolation = 1,
    kConfigError = 2,
    kNotSpd = 3,
    kQuadratureFailure = 4,
};

struct RunConfiguration {
    std::optional<std::string> preset;
    std::optional<std::filesystem::path> matrix_file;
    std::optional<int> n;
    bool scale_diagonal = false;
    std::vector<std::int64_t> columns;
    QuadratureSettings quadrature;
    std::filesystem::path out = ".";
    std::string figure;
    // Test hook: every bound is divided by this before verification.
    double bound_divisor = 1.0;
};

/// Entry point shared by the executable and the tests. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_bounds(const RunConfiguration& config, std::ostream& out);
int cmd_verify(const RunConfiguration& config, std::ostream& out);
int cmd_figure(const RunConfiguration& config, std::ostream& out);

/// Full-precision scientific notation, as written to every CSV.
std::string format_number(double v);

} // namespace kronbound::cli
