#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cyclorank/errors.hpp"
#include "cyclorank/interface.hpp"
#include "cyclorank/invariants.hpp"
#include "json.hpp"

namespace cyclorank {

namespace {

Rank3Classes parse_classes(const std::string& s) {
    if (s == "1") return Rank3Classes::one_mod_9;
    if (s == "4,7" || s == "47" || s == "4/7") return Rank3Classes::four_seven_mod_9;
    if (s == "all") return Rank3Classes::all;
    throw DomainError("--classes must be one of 1, 4,7, all");
}

std::string ordinal_power(u64 p) {
    return std::to_string(p) + (p == 3 ? "rd" : "th");
}

void print_classify(const TargetClass& t, std::ostream& out) {
    out << "N≡" << t.residue_mod_p2 << " (mod " << t.p * t.p << "): pi "
        << (t.pi_ramified ? "ramified" : "unramified (splits)") << ", zeta_" << t.p
        << (t.zeta_is_norm ? " is a norm" : " is not a norm") << '\n';
}

void print_invariants(const InvariantRecord& r, std::ostream& out) {
    auto describe = [&](const PowerClass& c) {
        std::ostringstream os;
        os << "index " << c.index << (c.is_pth_power() ? " (" : " (not ") << "a "
           << ordinal_power(r.p) << " power)";
        return os.str();
    };
    out << "N=" << r.n << " p=" << r.p << " f=" << r.f << '\n';
    out << "M: " << describe(r.m_class) << '\n';
    for (const auto& mi : r.mi_classes) out << "M_" << mi.i << ": " << describe(mi.cls) << '\n';
    out << "mu=" << r.mu << " cl_f_upper=" << r.cl_f_upper << '\n';
    for (const auto& [k, v] : r.mk_classes) {
        out << "M_k k=" << k << ": value=" << v.value << ' ' << describe(v.cls) << '\n';
    }
    for (const auto& t : r.twists) {
        out << "i=" << t.i << " dim H1_Lambda(F_p(-i))=" << t.dimension << '\n';
    }
    out << "alpha=" << r.alpha << '\n';
}

nlohmann::ordered_json invariants_json(const InvariantRecord& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["f"] = r.f;
    j["m_class"] = r.m_class.index;
    j["mi_classes"] = nlohmann::ordered_json::array();
    for (const auto& mi : r.mi_classes) j["mi_classes"].push_back({{"i", mi.i}, {"index", mi.cls.index}});
    j["mk_classes"] = nlohmann::ordered_json::array();
    for (const auto& [k, v] : r.mk_classes) {
        j["mk_classes"].push_back({{"k", k}, {"value", v.value}, {"index", v.cls.index}});
    }
    j["mu"] = r.mu;
    j["cl_f_upper"] = r.cl_f_upper;
    j["alpha"] = r.alpha;
    return j;
}

void print_bounds(const RankReport& r, std::ostream& out) {
    out << "alpha=" << r.alpha << " lower=" << r.lower << " upper=" << r.upper << '\n';
    out << "coarse_lower=" << r.coarse_lower << " coarse_upper=" << r.coarse_upper
        << (r.refined ? "" : " (alpha refinement not applied)") << '\n';
    if (r.cl_f_upper) out << "cl_f_upper=" << *r.cl_f_upper << '\n';
    if (r.exact_rank3) {
        out << "rank3=" << *r.exact_rank3 << (r.methods_agreed ? "" : " (methods DISAGREE)") << '\n';
    }
}

// Opens --out; "-" means the caller's stdout stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& stdout_stream) : stream_(&stdout_stream) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open " + path + " for writing");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

} // namespace

int cli_dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Class group p-rank criteria for Q(zeta_p, N^(1/p))", "cyclorank"};
    app.require_subcommand(1);

    u64 n = 0;
    u64 p = 3;
    std::string method = "cornacchia";
    std::string format = "text";
    unsigned clk = 0;
    u64 limit = 0;
    std::string classes = "all";
    unsigned shards = 0;
    std::string out_path = "-";
    std::string table;
    u64 max_limit = SieveOptions{}.max_limit;

    auto* classify = app.add_subcommand("classify", "Ramification of pi and norm status of zeta_p");
    classify->add_option("N", n, "prime N = 1 (mod p)")->required();
    classify->add_option("--p", p, "odd prime p");

    auto* rep4n = app.add_subcommand("rep4n", "Solve 4N = A^2 + 27B^2");
    rep4n->add_option("N", n, "prime N = 1 (mod 3)")->required();

    auto* r3 = app.add_subcommand("rank3", "Exact 3-rank of Cl(Q(zeta_3, N^(1/3)))");
    r3->add_option("N", n, "prime N = 1 (mod 3)")->required();
    r3->add_option("--method", method, "cornacchia|gerth|star|factorial|all");

    auto* inv = app.add_subcommand("invariants", "M, M_i, mu, M_k and alpha");
    inv->add_option("N", n, "prime N = 1 (mod p)")->required();
    inv->add_option("--p", p, "regular odd prime p");
    inv->add_option("--format", format, "text|json");

    auto* bnd = app.add_subcommand("bounds", "Lower and upper bounds on rk_p Cl(L)");
    bnd->add_option("N", n, "prime N = 1 (mod p)")->required();
    bnd->add_option("--p", p, "odd prime p");
    bnd->add_option("--clk", clk, "rk_p Cl(Q(zeta_p)) for irregular p");
    bnd->add_option("--format", format, "text|csv|json");

    auto* scan = app.add_subcommand("scan", "Density scan over primes up to a limit");
    scan->add_option("--p", p, "odd prime p");
    scan->add_option("--limit", limit, "largest N scanned")->required();
    scan->add_option("--classes", classes, "p = 3 only: 1, 4,7 or all");
    scan->add_option("--shards", shards, "number of contiguous sub-ranges (default: workers)");
    scan->add_option("--format", format, "csv|json");
    scan->add_option("--out", out_path, "output path, - for stdout");
    scan->add_option("--max-limit", max_limit, "raise the sieve ceiling");

    auto* validate = app.add_subcommand("validate", "Check rank predictions against a truth table");
    validate->add_option("--table", table, "CSV with header N,p,rank[,rank_f]")->required();
    validate->add_option("--format", format, "text|json");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (*classify) {
            print_classify(classify_target(n, p), out);
        } else if (*rep4n) {
            const QuadRep rep = represent_4N(n);
            out << "A=" << rep.A << " B=" << rep.B << '\n';
        } else if (*r3) {
            const Rank3Result r = rank3(n, parse_rank3_method(method));
            const QuadRep rep = represent_4N(n);
            out << "rank3=" << r.rank << " (A,B)=(" << rep.A << ',' << rep.B << ")\n";
            for (const auto& [m, value] : r.by_method) out << to_string(m) << '=' << value << '\n';
            if (!r.methods_agreed) {
                err << "methods disagree for N=" << n << '\n';
                return 1;
            }
        } else if (*inv) {
            const InvariantRecord rec = compute_invariants(n, p);
            if (parse_format(format) == Format::json) {
                out << invariants_json(rec).dump(2) << '\n';
            } else {
                print_invariants(rec, out);
            }
        } else if (*bnd) {
            RankReport r = bounds(n, p, clk);
            if (clk == 0) {
                const ModulusContext ctx(n, p);
                r.cl_f_upper = mu_count(ctx, find_order_p_element(ctx)).cl_f_upper;
            }
            const Format fmt = parse_format(format);
            if (fmt == Format::text) {
                print_bounds(r, out);
            } else {
                emit(std::span<const RankReport>(&r, 1), fmt, out);
            }
        } else if (*scan) {
            const Format fmt = format == "text" ? Format::csv : parse_format(format);
            const unsigned workers = default_workers();
            if (shards == 0) shards = workers;
            const SieveOptions sieve{max_limit};
            const ScanSummary s = p == 3 ? scan_rank3(limit, parse_classes(classes), shards, workers, sieve)
                                         : scan_alpha(p, limit, shards, workers, sieve);
            Sink sink(out_path, out);
            emit(s, fmt, sink.get());
        } else if (*validate) {
            const ValidationReport r = ingest_truth(table);
            emit(r, parse_format(format), out);
        }
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace cyclorank
