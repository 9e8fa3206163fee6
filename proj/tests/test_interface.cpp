#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyclorank/errors.hpp"
#include "cyclorank/interface.hpp"
#include "json.hpp"

using namespace cyclorank;

namespace {

const std::filesystem::path kFixtures = CYCLORANK_FIXTURE_DIR;

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << contents;
    return path;
}

ValidationReport validate_text(const std::string& csv) {
    std::istringstream in(csv);
    const auto rows = parse_truth_table(in);
    return validate_truth(rows);
}

} // namespace

TEST_CASE("report CSV rows") {
    CHECK(report_csv_row(bounds(61, 3)) == "61,3,7,1,3,2,0,1,2");
    CHECK(report_csv_row(bounds(11, 5)) == "11,5,11,,,,0,2,8");
    std::ostringstream os;
    const std::size_t bytes = emit(std::span<const RankReport>{}, Format::csv, os);
    CHECK(os.str() == std::string(kReportCsvHeader) + "\n");
    CHECK(bytes == os.str().size());
}

TEST_CASE("CSV round trip") {
    std::vector<RankReport> reports;
    for (u64 n : {7, 13, 19, 31, 37, 61, 67, 73, 103}) reports.push_back(bounds(n, 3));
    for (u64 n : {11, 31, 41, 61, 211, 281}) reports.push_back(bounds(n, 5));
    for (u64 n : {29, 43, 197}) reports.push_back(bounds(n, 7));
    std::ostringstream os;
    emit(reports, Format::csv, os);
    std::istringstream in(os.str());
    const auto rows = parse_report_csv(in);
    REQUIRE(rows.size() == reports.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const RankReport& r = reports[k];
        const ReportRow& row = rows[k];
        CHECK(row.n == r.n);
        CHECK(row.p == r.p);
        CHECK(row.class_mod_p2 == r.target_class.residue_mod_p2);
        CHECK(row.A == (r.rep ? std::optional<i64>(r.rep->A) : std::nullopt));
        CHECK(row.B == (r.rep ? std::optional<i64>(r.rep->B) : std::nullopt));
        CHECK(row.rank3 == r.exact_rank3);
        CHECK(row.alpha == r.alpha);
        CHECK(row.lower == r.lower);
        CHECK(row.upper == r.upper);
    }
    // Byte-deterministic.
    std::ostringstream again;
    emit(reports, Format::csv, again);
    CHECK(again.str() == os.str());
}

TEST_CASE("JSON report mirrors field names") {
    const RankReport r = bounds(61, 3);
    std::ostringstream os;
    emit(std::span<const RankReport>(&r, 1), Format::json, os);
    const auto j = nlohmann::json::parse(os.str());
    REQUIRE(j.is_array());
    CHECK(j[0]["n"] == 61);
    CHECK(j[0]["rep"]["A"] == 1);
    CHECK(j[0]["exact_rank3"] == 2);
    CHECK(j[0]["lower"] == 1);
    CHECK(j[0]["upper"] == 2);
}

TEST_CASE("summary output") {
    ScanSummary empty;
    std::ostringstream os;
    emit(empty, Format::csv, os);
    CHECK(os.str() == std::string(kSummaryCsvHeader) + "\n");

    const ScanSummary s = scan_alpha(5, 2000, 2, 1);
    std::ostringstream csv;
    emit(s, Format::csv, csv);
    CHECK(csv.str().rfind(std::string(kSummaryCsvHeader) + "\n", 0) == 0);
    CHECK(csv.str().find("5,2000,checkpoint,2000,") != std::string::npos);
    CHECK(csv.str().find(",alpha,1,") != std::string::npos);

    std::ostringstream js;
    emit(s, Format::json, js);
    const auto j = nlohmann::json::parse(js.str());
    CHECK(j["total"] == s.total());
    CHECK(j["checkpoints"].back()["threshold"] == 2000);
}

TEST_CASE("failing sink raises IoError") {
    std::ostringstream os;
    os.setstate(std::ios::badbit);
    const RankReport r = bounds(61, 3);
    CHECK_THROWS_AS(emit(std::span<const RankReport>(&r, 1), Format::csv, os), IoError);
    CHECK_THROWS_AS(emit(ScanSummary{}, Format::json, os), IoError);
}

TEST_CASE("truth-table parsing") {
    std::istringstream ok("# comment\nN,p,rank\r\n7,3,1\n\n61,3,2\n");
    const auto rows = parse_truth_table(ok);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].n == 61);
    CHECK(rows[1].line == 5);

    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            parse_truth_table(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("N,p,rank\n7,3,1\n13,3\n") == 3);
    CHECK(line_of("N,p,rank\n7,3,x\n") == 2);
    CHECK(line_of("N,p,rank\n7,3,-1\n") == 2);
    CHECK(line_of("# only\nN,rank\n") == 2);
    std::istringstream none("");
    CHECK_THROWS_AS(parse_truth_table(none), ParseError);
}

TEST_CASE("validation examples") {
    const ValidationReport good = validate_text("N,p,rank\n7,3,1\n");
    CHECK(good.rows_checked == 1);
    CHECK(good.matches == 1);

    const ValidationReport bad = validate_text("N,p,rank\n7,3,1\n61,3,1\n");
    REQUIRE(bad.mismatches.size() == 1);
    CHECK(bad.mismatches[0].line == 3);
    CHECK(bad.mismatches[0].n == 61);
    CHECK(bad.mismatches[0].predicted == "2");
    CHECK(bad.mismatches[0].observed == 1);
    CHECK(bad.matches + bad.mismatches.size() == bad.rows_checked);

    const ValidationReport p5 = validate_text("N,p,rank\n11,5,2\n");
    CHECK(p5.bound_rows == 1);
    CHECK(p5.bound_violations.empty());

    const ValidationReport skip = validate_text("N,p,rank\n13,5,2\n15,3,1\n19,3,0\n");
    CHECK(skip.skipped.size() == 3);
    CHECK(skip.rows_checked == 0);

    const ValidationReport floor = validate_text("N,p,rank,rank_f\n11,5,2,2\n");
    CHECK(floor.bound_violations.size() == 1);
}

TEST_CASE("self-consistency: predictions validate with zero mismatches") {
    std::ostringstream table;
    table << "N,p,rank\n";
    const std::array<u64, 1> one{1};
    for (u64 n : primes_in_class(20000, 3, one)) table << n << ",3," << rank3(n).rank << '\n';
    const ValidationReport r = validate_text(table.str());
    CHECK(r.rows_checked > 700);
    CHECK(r.matches == r.rows_checked);
    CHECK(r.mismatches.empty());
}

TEST_CASE("bundled fixtures") {
    const ValidationReport p3 = ingest_truth(kFixtures / "truth_p3.csv");
    CHECK(p3.rows_checked >= 50);
    CHECK(p3.mismatches.empty());
    CHECK(p3.skipped.empty());

    const ValidationReport p5 = ingest_truth(kFixtures / "truth_p5.csv");
    CHECK(p5.bound_rows > 0);
    CHECK(p5.bound_violations.empty());

    CHECK_THROWS_AS(ingest_truth(kFixtures / "does_not_exist.csv"), IoError);
}

TEST_CASE("CLI examples") {
    auto r = run({"rank3", "61"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rank3=2") != std::string::npos);
    CHECK(r.out.find("(A,B)=(1,3)") != std::string::npos);

    r = run({"bounds", "11", "--p", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("alpha=0 lower=2 upper=8") != std::string::npos);

    r = run({"classify", "19", "--p", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "N≡1 (mod 9): pi unramified (splits), zeta_3 is a norm\n");

    r = run({"rep4n", "13"});
    CHECK(r.out == "A=-5 B=1\n");

    r = run({"rank3", "61", "--method", "all"});
    CHECK(r.code == 0);

    r = run({"bounds", "61", "--p", "3", "--format", "csv"});
    CHECK(r.out == std::string(kReportCsvHeader) + "\n61,3,7,1,3,2,0,1,2\n");

    r = run({"invariants", "11", "--p", "5", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["alpha"] == 0);

    r = run({"scan", "--p", "3", "--limit", "1000", "--shards", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind(std::string(kSummaryCsvHeader), 0) == 0);

    r = run({"validate", "--table", (kFixtures / "truth_p3.csv").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("mismatches=0") != std::string::npos);

    r = run({"--help"});
    CHECK(r.code == 0);
}

TEST_CASE("CLI exit codes") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"rank3", "61", "--bogus"}).code == 1);
    CHECK(run({"rank3", "11"}).code == 1);
    CHECK(run({"rank3", "19", "--method", "gerth"}).code == 1);
    CHECK(run({"rank3", "61", "--method", "magic"}).code == 1);
    CHECK(run({"classify", "13", "--p", "5"}).code == 1);
    CHECK(run({"invariants", "149", "--p", "37"}).code == 1);
    CHECK(run({"bounds", "11", "--p", "5", "--format", "xml"}).code == 1);
    CHECK(run({"scan", "--limit", "50"}).code == 1);
    CHECK(run({"scan", "--limit", "2000", "--max-limit", "1000"}).code == 1);
    CHECK(run({"scan", "--limit", "1000", "--classes", "2"}).code == 1);
    CHECK(run({"validate", "--table", "/nonexistent/truth.csv"}).code == 2);
    CHECK(run({"scan", "--limit", "1000", "--out", "/nonexistent/dir/out.csv"}).code == 2);

    const auto bad = temp_file("cyclorank_bad_table.csv", "N,p,rank\n7,3,1\n7,3\n");
    const auto r = run({"validate", "--table", bad.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
    std::filesystem::remove(bad);
}

TEST_CASE("scan --out writes a file") {
    const auto path = std::filesystem::temp_directory_path() / "cyclorank_scan_out.json";
    const auto r = run({"scan", "--p", "5", "--limit", "1000", "--format", "json", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["p"] == 5);
    std::filesystem::remove(path);
}
