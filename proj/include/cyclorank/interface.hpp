#pragma once

/**
 * @file interface.hpp
 * @brief Structured output and truth-table validation.
 *
 * Per-prime CSV columns, in this order:
 *
 *     N,p,class_mod_p2,A,B,rank3,alpha,lower,upper
 *
 * A, B and rank3 are left empty for p != 3. Scan summaries use
 *
 *     p,limit,kind,key,total,hits,density
 *
 * with kind one of class, checkpoint, alpha, bounds. Truth tables are UTF-8
 * CSV with header N,p,rank or N,p,rank,rank_f; lines starting with '#' are
 * comments.
 */

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cyclorank/rank.hpp"
#include "cyclorank/scan.hpp"

namespace cyclorank {

enum class Format { text, csv, json };
Format parse_format(std::string_view name);

inline constexpr std::string_view kReportCsvHeader = "N,p,class_mod_p2,A,B,rank3,alpha,lower,upper";
inline constexpr std::string_view kSummaryCsvHeader = "p,limit,kind,key,total,hits,density";

std::string report_csv_row(const RankReport& r);

// Each returns the number of bytes written; throws IoError if the sink fails.
std::size_t emit(std::span<const RankReport> reports, Format format, std::ostream& sink);
std::size_t emit(const ScanSummary& summary, Format format, std::ostream& sink);

// Reads back what emit(reports, csv) wrote.
struct ReportRow {
    u64 n = 0;
    u64 p = 0;
    u64 class_mod_p2 = 0;
    std::optional<i64> A;
    std::optional<i64> B;
    std::optional<unsigned> rank3;
    unsigned alpha = 0;
    unsigned lower = 0;
    unsigned upper = 0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

std::vector<ReportRow> parse_report_csv(std::istream& in);

struct TruthRow {
    u64 n = 0;
    u64 p = 0;
    unsigned rank = 0;
    std::optional<unsigned> rank_f;
    std::size_t line = 0;
};

// Throws ParseError (with the 1-based line number) on malformed input.
std::vector<TruthRow> parse_truth_table(std::istream& in);

struct Mismatch {
    std::size_t line = 0;
    u64 n = 0;
    u64 p = 0;
    std::string predicted; // "2", or "[2,8]", or "rank >= 3"
    unsigned observed = 0;
};

struct RowError {
    std::size_t line = 0;
    u64 n = 0;
    std::string reason;
};

struct ValidationReport {
    std::size_t rows_checked = 0; // p = 3 rows compared against rank3
    std::size_t matches = 0;
    std::vector<Mismatch> mismatches;
    std::size_t bound_rows = 0;   // p >= 5 rows checked against bounds
    std::vector<Mismatch> bound_violations;
    std::vector<RowError> skipped;
};

ValidationReport validate_truth(std::span<const TruthRow> rows);
ValidationReport ingest_truth(const std::filesystem::path& path);

std::size_t emit(const ValidationReport& report, Format format, std::ostream& sink);

// Entry point of the command-line tool. Exit codes: 0 success, 1 domain or
// usage error, 2 I/O error.
int cli_dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace cyclorank
