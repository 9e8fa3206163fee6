#include "cyclorank/interface.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cyclorank/errors.hpp"
#include "json.hpp"

namespace cyclorank {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::size_t write(std::ostream& sink, const std::string& s) {
    sink.write(s.data(), static_cast<std::streamsize>(s.size()));
    sink.flush();
    if (!sink) throw IoError("write to output sink failed");
    return s.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <class T>
T parse_number(std::string_view field, std::size_t line, std::string_view what) {
    T value{};
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError(line, "bad " + std::string(what) + " '" + std::string(field) + "'");
    }
    return value;
}

template <class T>
std::optional<T> parse_optional(std::string_view field, std::size_t line, std::string_view what) {
    if (field.empty()) return std::nullopt;
    return parse_number<T>(field, line, what);
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

ordered_json to_json(const RankReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["target_class"] = {{"residue_mod_p2", r.target_class.residue_mod_p2},
                         {"pi_ramified", r.target_class.pi_ramified},
                         {"zeta_is_norm", r.target_class.zeta_is_norm}};
    if (r.rep) {
        j["rep"] = {{"A", r.rep->A}, {"B", r.rep->B}};
    } else {
        j["rep"] = nullptr;
    }
    j["exact_rank3"] = r.exact_rank3 ? ordered_json(*r.exact_rank3) : ordered_json(nullptr);
    j["methods_agreed"] = r.methods_agreed;
    j["alpha"] = r.alpha;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["coarse_lower"] = r.coarse_lower;
    j["coarse_upper"] = r.coarse_upper;
    j["cl_f_upper"] = r.cl_f_upper ? ordered_json(*r.cl_f_upper) : ordered_json(nullptr);
    return j;
}

ordered_json to_json(const ScanSummary& s) {
    ordered_json j;
    j["p"] = s.p;
    j["limit"] = s.limit;
    j["total"] = s.total();
    j["hits"] = s.hits();
    j["density"] = s.density();
    j["classes"] = ordered_json::array();
    for (const auto& c : s.classes) {
        j["classes"].push_back(
            {{"key", c.key}, {"total", c.total}, {"hits", c.hits}, {"density", c.density()}});
    }
    j["checkpoints"] = ordered_json::array();
    for (const auto& c : s.checkpoints) {
        j["checkpoints"].push_back({{"threshold", c.threshold},
                                    {"total", c.total},
                                    {"hits", c.hits},
                                    {"density", c.density()}});
    }
    j["alpha_histogram"] = ordered_json::array();
    for (const auto& [a, count] : s.alpha_histogram) {
        j["alpha_histogram"].push_back({{"alpha", a}, {"count", count}});
    }
    j["bounds_histogram"] = ordered_json::array();
    for (const auto& [lu, count] : s.bounds_histogram) {
        j["bounds_histogram"].push_back({{"lower", lu.first}, {"upper", lu.second}, {"count", count}});
    }
    return j;
}

ordered_json to_json(const Mismatch& m) {
    return {{"line", m.line}, {"n", m.n}, {"p", m.p}, {"predicted", m.predicted}, {"observed", m.observed}};
}

} // namespace

Format parse_format(std::string_view name) {
    if (name == "text") return Format::text;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw DomainError("unknown format '" + std::string(name) + "'");
}

std::string report_csv_row(const RankReport& r) {
    std::ostringstream os;
    os << r.n << ',' << r.p << ',' << r.target_class.residue_mod_p2 << ',';
    if (r.rep) os << r.rep->A;
    os << ',';
    if (r.rep) os << r.rep->B;
    os << ',';
    if (r.exact_rank3) os << *r.exact_rank3;
    os << ',' << r.alpha << ',' << r.lower << ',' << r.upper;
    return os.str();
}

std::size_t emit(std::span<const RankReport> reports, Format format, std::ostream& sink) {
    std::string out;
    if (format == Format::json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        out = arr.dump(2) + "\n";
    } else {
        out.append(kReportCsvHeader).append("\n");
        for (const auto& r : reports) out += report_csv_row(r) + "\n";
    }
    return write(sink, out);
}

std::size_t emit(const ScanSummary& s, Format format, std::ostream& sink) {
    if (format == Format::json) return write(sink, to_json(s).dump(2) + "\n");

    std::ostringstream os;
    os << kSummaryCsvHeader << '\n';
    const u64 total = s.total();
    auto prefix = [&](std::string_view kind) -> std::ostream& {
        return os << s.p << ',' << s.limit << ',' << kind << ',';
    };
    for (const auto& c : s.classes) {
        prefix("class") << c.key << ',' << c.total << ',' << c.hits << ',' << fixed6(c.density()) << '\n';
    }
    for (const auto& c : s.checkpoints) {
        prefix("checkpoint") << c.threshold << ',' << c.total << ',' << c.hits << ','
                             << fixed6(c.density()) << '\n';
    }
    for (const auto& [a, count] : s.alpha_histogram) {
        prefix("alpha") << a << ',' << count << ",,"
                        << fixed6(total ? static_cast<double>(count) / total : 0.0) << '\n';
    }
    for (const auto& [lu, count] : s.bounds_histogram) {
        prefix("bounds") << lu.first << ':' << lu.second << ',' << count << ",,"
                         << fixed6(total ? static_cast<double>(count) / total : 0.0) << '\n';
    }
    return write(sink, os.str());
}

std::vector<ReportRow> parse_report_csv(std::istream& in) {
    std::vector<ReportRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != kReportCsvHeader) throw ParseError(line_no, "unexpected report header");
            header = true;
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 9) throw ParseError(line_no, "expected 9 fields");
        ReportRow r;
        r.n = parse_number<u64>(f[0], line_no, "N");
        r.p = parse_number<u64>(f[1], line_no, "p");
        r.class_mod_p2 = parse_number<u64>(f[2], line_no, "class_mod_p2");
        r.A = parse_optional<i64>(f[3], line_no, "A");
        r.B = parse_optional<i64>(f[4], line_no, "B");
        r.rank3 = parse_optional<unsigned>(f[5], line_no, "rank3");
        r.alpha = parse_number<unsigned>(f[6], line_no, "alpha");
        r.lower = parse_number<unsigned>(f[7], line_no, "lower");
        r.upper = parse_number<unsigned>(f[8], line_no, "upper");
        rows.push_back(r);
    }
    return rows;
}

std::vector<TruthRow> parse_truth_table(std::istream& in) {
    std::vector<TruthRow> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty() || line.front() == '#') continue;
        if (columns == 0) {
            if (line == "N,p,rank") {
                columns = 3;
            } else if (line == "N,p,rank,rank_f") {
                columns = 4;
            } else {
                throw ParseError(line_no, "expected header N,p,rank or N,p,rank,rank_f");
            }
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != columns) {
            throw ParseError(line_no, "expected " + std::to_string(columns) + " fields, got " +
                                          std::to_string(f.size()));
        }
        TruthRow r;
        r.line = line_no;
        r.n = parse_number<u64>(f[0], line_no, "N");
        r.p = parse_number<u64>(f[1], line_no, "p");
        r.rank = parse_number<unsigned>(f[2], line_no, "rank");
        if (columns == 4) r.rank_f = parse_number<unsigned>(f[3], line_no, "rank_f");
        rows.push_back(r);
    }
    if (columns == 0) throw ParseError(line_no, "missing header");
    return rows;
}

ValidationReport validate_truth(std::span<const TruthRow> rows) {
    ValidationReport rep;
    for (const TruthRow& row : rows) {
        try {
            if (row.rank < 1) throw DomainError("rank below the genus-theory floor of 1");
            if (row.p == 3) {
                const unsigned predicted = rank3(row.n, Rank3Method::cornacchia).rank;
                ++rep.rows_checked;
                if (predicted == row.rank) {
                    ++rep.matches;
                } else {
                    rep.mismatches.push_back({row.line, row.n, row.p, std::to_string(predicted), row.rank});
                }
                continue;
            }
            const RankReport b = bounds(row.n, row.p, 0, Rank3Method::cornacchia);
            ++rep.bound_rows;
            if (row.rank < b.lower || row.rank > b.upper) {
                rep.bound_violations.push_back({row.line, row.n, row.p,
                                                "[" + std::to_string(b.lower) + "," +
                                                    std::to_string(b.upper) + "]",
                                                row.rank});
            }
            if (row.rank_f) {
                // rk_p Cl(L) >= (p-7)/2 + 2 rk_p Cl(F) for regular p.
                const long floor_l = (static_cast<long>(row.p) - 7) / 2 + 2L * *row.rank_f;
                if (static_cast<long>(row.rank) < floor_l) {
                    rep.bound_violations.push_back(
                        {row.line, row.n, row.p, "rank >= " + std::to_string(floor_l), row.rank});
                }
            }
        } catch (const DomainError& e) {
            rep.skipped.push_back({row.line, row.n, e.what()});
        }
    }
    return rep;
}

ValidationReport ingest_truth(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open truth table " + path.string());
    const auto rows = parse_truth_table(in);
    if (in.bad()) throw IoError("error reading " + path.string());
    return validate_truth(rows);
}

std::size_t emit(const ValidationReport& r, Format format, std::ostream& sink) {
    if (format == Format::json) {
        ordered_json j;
        j["rows_checked"] = r.rows_checked;
        j["matches"] = r.matches;
        j["mismatches"] = ordered_json::array();
        for (const auto& m : r.mismatches) j["mismatches"].push_back(to_json(m));
        j["bound_rows"] = r.bound_rows;
        j["bound_violations"] = ordered_json::array();
        for (const auto& m : r.bound_violations) j["bound_violations"].push_back(to_json(m));
        j["skipped"] = ordered_json::array();
        for (const auto& s : r.skipped) {
            j["skipped"].push_back({{"line", s.line}, {"n", s.n}, {"reason", s.reason}});
        }
        return write(sink, j.dump(2) + "\n");
    }
    std::ostringstream os;
    os << "rows_checked=" << r.rows_checked << " matches=" << r.matches
       << " mismatches=" << r.mismatches.size() << " bound_rows=" << r.bound_rows
       << " bound_violations=" << r.bound_violations.size() << " skipped=" << r.skipped.size() << '\n';
    for (const auto& m : r.mismatches) {
        os << "mismatch line " << m.line << ": N=" << m.n << " p=" << m.p << " predicted "
           << m.predicted << " observed " << m.observed << '\n';
    }
    for (const auto& m : r.bound_violations) {
        os << "bound violation line " << m.line << ": N=" << m.n << " p=" << m.p << " expected "
           << m.predicted << " observed " << m.observed << '\n';
    }
    for (const auto& s : r.skipped) {
        os << "skipped line " << s.line << ": N=" << s.n << ": " << s.reason << '\n';
    }
    return write(sink, os.str());
}

} // namespace cyclorank
