#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qaudit/audit.hpp"

namespace qaudit {

enum class OutputFormat { Json, Csv };

enum class TableKind { AsymptoticIM, AsymptoticSW, LimitQ1 };

/// Parsed command-line configuration shared by the subcommands.
struct CliConfig {
    std::vector<double> q_grid;
    double tol = 1e-8;
    std::uint64_t seed = 42;
    int n_max = 40;
    double u = 2.0;
    std::complex<double> z = 1.0;
    OutputFormat format = OutputFormat::Json;
    std::optional<std::string> out_path;
};

struct TableRow {
    double key = 0.0;       // n for asymptotic tables, q for the limit table
    double measured = 0.0;
    double bound = 0.0;     // envelope (plus margin) or previous limit error
    CheckStatus status = CheckStatus::Fail;
};

std::vector<TableRow> emit_table(TableKind kind, const CliConfig& cfg);

/// Entry point behind the qaudit binary. Returns the process exit code:
/// 0 when every requested check passes, 1 when any check fails or is
/// inconclusive, 2 on usage errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace qaudit
