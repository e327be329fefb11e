#ifndef SEMICLASSICA_CLI_CORE_HPP
#define SEMICLASSICA_CLI_CORE_HPP

#include <map>
#include <string>
#include <vector>

namespace semiclassica::cli {

inline constexpr const char* kVersion = "semiclassica 1.0.0";

// exit codes: 0 success, 2 validation error, 3 numerical failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct TableOutput {
    std::vector<std::string> columns;            ///< names carry unit suffixes
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> params;   ///< fully resolved parameter set
    std::string subcommand;
};

/// Write the table as CSV (# metadata header) or JSON, plus a JSON sidecar.
void emit_table(const TableOutput& t, const std::string& out_path,
                const std::string& format, double wall_seconds);

int run_cli(int argc, char** argv);

} // namespace semiclassica::cli

#endif
