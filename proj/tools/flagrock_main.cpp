// flagrock: certificates of failure of maximal hypoellipticity for the
// horizontal Dolbeault Laplacian on U(p,q)/(U(p1) x U(p2,q) cap K).
//
// Exit codes: 0 analysis completed (whatever the verdict), 2 invalid
// parameters or flags, 3 internal-consistency failure.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "flagrock/report.hpp"
#include "flagrock/selftest.hpp"
#include "flagrock/spectral.hpp"

namespace {

using namespace flagrock;

int thread_budget() {
    if (const char* env = std::getenv("FLAGROCK_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<Quad> parse_weights(const std::string& csv) {
    std::vector<Quad> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(parse_quad(tok));
    return out;
}

int cmd_analyze(int p, int q, int p1, const std::string& weights_csv,
                const std::string& output, const std::string& format) {
    auto start = std::chrono::steady_clock::now();
    std::vector<Quad> weights = weights_csv.empty() ? std::vector<Quad>{}
                                                    : parse_weights(weights_csv);
    Report rep;
    rep.verdict = analyze(p, q, p1, weights);
    rep.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    std::string body = format == "json" ? report_to_json(rep).dump(2) + "\n"
                                        : report_to_text(rep);
    if (output.empty()) std::cout << body;
    else write_file_atomic(output, body);
    return 0;
}

struct ScanRow {
    int p, q, p1;
    Verdict v;
};

int cmd_scan(int max_n, const std::string& format, const std::string& output) {
    std::vector<std::tuple<int, int, int>> params;
    for (int n = 2; n <= max_n; ++n)
        for (int p = 1; p < n; ++p)
            for (int p1 = 1; p1 <= p; ++p1) params.emplace_back(p, n - p, p1);

    std::vector<ScanRow> rows(params.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::min<int>(thread_budget(), static_cast<int>(params.size()));
    auto work = [&] {
        for (std::size_t k = next.fetch_add(1); k < params.size(); k = next.fetch_add(1)) {
            auto [p, q, p1] = params[k];
            rows[k] = {p, q, p1, analyze(p, q, p1)};
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    int failures = 0, degenerate = 0;
    std::ostringstream text;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    text << std::left << std::setw(4) << "p" << std::setw(4) << "q" << std::setw(5)
         << "p1" << std::setw(4) << "s" << std::setw(4) << "t" << std::setw(11)
         << "hormander" << std::setw(6) << "(H)" << std::setw(12) << "case"
         << "rockland_fails\n";
    for (const ScanRow& row : rows) {
        const Verdict& v = row.v;
        std::string verdict = "n/a (degenerate)";
        if (v.rockland_fails) {
            verdict = *v.rockland_fails ? "true" : "false";
            if (*v.rockland_fails) ++failures;
        } else {
            ++degenerate;
        }
        text << std::left << std::setw(4) << row.p << std::setw(4) << row.q
             << std::setw(5) << row.p1 << std::setw(4) << v.s << std::setw(4) << v.t
             << std::setw(11) << (v.hormander_ok ? "ok" : "FAIL") << std::setw(6)
             << (v.degenerate ? "-" : (v.hypothesis_h ? "ok" : "FAIL")) << std::setw(12)
             << v.case_name << verdict << "\n";
        jrows.push_back({{"p", row.p},
                         {"q", row.q},
                         {"p1", row.p1},
                         {"s", v.s},
                         {"t", v.t},
                         {"hormander", v.hormander_ok},
                         {"hypothesis_H", v.degenerate ? nlohmann::ordered_json(nullptr)
                                                       : nlohmann::ordered_json(v.hypothesis_h)},
                         {"case", v.case_name},
                         {"rockland_fails", v.rockland_fails
                                                ? nlohmann::ordered_json(*v.rockland_fails)
                                                : nlohmann::ordered_json(nullptr)}});
    }
    text << "summary: " << rows.size() << " instances, " << failures
         << " rockland failures, " << degenerate << " degenerate\n";
    std::string body;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["schema"] = kSchemaVersion;
        j["max_n"] = max_n;
        j["rows"] = jrows;
        j["summary"] = {{"instances", rows.size()},
                        {"rockland_failures", failures},
                        {"degenerate", degenerate}};
        body = j.dump(2) + "\n";
    } else {
        body = text.str();
    }
    if (output.empty()) std::cout << body;
    else write_file_atomic(output, body);
    return 0;
}

int cmd_selftest(int max_n, const std::string& fault) {
    SelftestResult res = run_selftest(max_n, fault);
    if (res.ok) {
        std::cout << "selftest: " << res.instances << " instances, all invariants hold ("
                  << res.seconds << " s)\n";
        return 0;
    }
    std::cerr << "selftest FAILED at invariant '" << res.failed_invariant
              << "': " << res.detail << "\n";
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rockland-condition certificates for horizontal Dolbeault "
                 "Laplacians on flag-manifold fibrations of U(p,q)"};
    app.require_subcommand(1);

    // analyze: parameters positionally (analyze 2 2 1) or by flag (--p 2 ...)
    auto* analyze_cmd = app.add_subcommand(
        "analyze", "analyze one instance (p, q, p1) and emit a certificate");
    int p = 0, q = 0, p1 = 0;
    std::string weights, output, format = "text";
    analyze_cmd->add_option("p,--p", p, "signature p of U(p,q)")->required();
    analyze_cmd->add_option("q,--q", q, "signature q of U(p,q)")->required();
    analyze_cmd->add_option("p1,--p1", p1, "size of the U(p1) factor of L")->required();
    analyze_cmd->add_option("--weights", weights,
                            "comma-separated weights (rationals or sqrt2 multiples), "
                            "one per strongly orthogonal root");
    analyze_cmd->add_option("--output", output, "write the report to this path");
    analyze_cmd->add_option("--format", format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "analyze every (p, q, p1) with p+q <= N");
    int max_n = 4;
    std::string scan_format = "text", scan_output;
    scan_cmd->add_option("--max-n", max_n, "bound on p+q")->required();
    scan_cmd->add_option("--format", scan_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    scan_cmd->add_option("--output", scan_output, "write the table to this path");

    // selftest
    auto* selftest_cmd =
        app.add_subcommand("selftest", "run the built-in invariant suite");
    int st_max_n = 6;
    std::string fault;
    selftest_cmd->add_option("--max-n", st_max_n, "bound on p+q (default 6)");
    selftest_cmd
        ->add_option("--inject-fault", fault,
                     "corrupt an internal table to demonstrate detection "
                     "(value: structure-constants)")
        ->group("");  // hidden: test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze_cmd))
            return cmd_analyze(p, q, p1, weights, output, format);
        if (app.got_subcommand(scan_cmd)) {
            if (max_n < 2) {
                std::cerr << "error: --max-n must be at least 2\n";
                return 2;
            }
            return cmd_scan(max_n, scan_format, scan_output);
        }
        if (app.got_subcommand(selftest_cmd)) return cmd_selftest(st_max_n, fault);
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal consistency failure [" << e.invariant << "]: " << e.what()
                  << "\n";
        return 3;
    } catch (const InvalidParameterError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const InvalidFormError& e) {
        std::cerr << "invalid form: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
