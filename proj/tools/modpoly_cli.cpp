#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "mpv/cval.hpp"
#include "mpv/modpoly.hpp"
#include "mpv/quatorder.hpp"
#include "mpv/shiftval.hpp"
#include "mpv/velu.hpp"
#include "report_json.hpp"

using namespace mpv;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kViolations = 1, kUsage = 2 };

struct Config {
    std::string format = "text";
    std::string data_dir;
    std::uint64_t ceiling = 13;
    std::int64_t precision = 0;
    std::string c_norm = "calibrate";

    bool json() const { return format == "json"; }
    PhiOptions phi_options() const {
        PhiOptions o;
        o.ceiling = ceiling;
        o.initial_precision = precision;
        return o;
    }
};

void emit(const json& j) { std::cout << j.dump() << '\n'; }

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

BivarPoly get_phi(const Config& cfg, std::optional<std::uint64_t> level, const std::string& in) {
    if (!in.empty()) return parse_modpoly_file(read_text_file(in), level);
    if (!level) throw CLI::ValidationError("--level", "either --level or --in is required");
    return load_phi(*level, cfg.phi_options());
}

std::string slack_str(const std::optional<Rat>& s) { return s ? s->get_str() : "-"; }

/// Prints the reports and returns the number of violations.
std::size_t print_reports(const Config& cfg, const std::vector<ValuationReport>& reports) {
    std::size_t bad = 0;
    for (const auto& r : reports) {
        bad += r.violations.size();
        if (cfg.json()) {
            emit(r);
            continue;
        }
        std::cout << "N=" << r.level << " p=" << r.p << " n=" << r.n.get_str() << " C=" << r.C << "  [" << r.rule << "]\n";
        if (r.skipped) {
            std::cout << "  skipped: " << r.note << '\n';
            continue;
        }
        std::cout << "  constrained coefficients: " << r.entries.size() << ", min_slack: " << slack_str(r.min_slack)
                  << ", violations: " << r.violations.size() << '\n';
        for (const auto& v : r.violations)
            std::cout << "  VIOLATION a_{" << v.i << "," << v.j << "}: v_p = " << v.valuation << " < " << v.bound.get_str()
                      << " (slack " << v.slack.get_str() << ")\n";
        if (!r.note.empty()) std::cout << "  note: " << r.note << '\n';
    }
    if (!cfg.json()) std::cout << (bad == 0 ? "no violations\n" : std::to_string(bad) + " violation(s)\n");
    return bad;
}

CNorm resolve_cnorm(const Config& cfg, std::string* report) {
    if (cfg.c_norm == "per-unit") return CNorm::PerUnit;
    if (cfg.c_norm == "printed") return CNorm::Printed;
    const Calibration c = calibrate_cnorm(c_val_modp(load_phi(3, cfg.phi_options()), 0, 2).value);
    if (report) *report = c.report;
    return c.chosen;
}

QuatOrder get_order(std::uint64_t p, const std::string& order_file) {
    if (!order_file.empty()) {
        QuatOrder o = parse_order_file(read_text_file(order_file));
        if (o.p() != p) throw std::invalid_argument("order file is for p = " + std::to_string(o.p()));
        return o;
    }
    return order_registry(p);
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Modular polynomials: computation, coefficient divisibility checks and compressed storage"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--data-dir", cfg.data_dir, "Data directory (overrides MODPOLY_DATA_DIR)");
    app.add_option("--ceiling", cfg.ceiling, "Largest prime level computed from q-expansions");
    app.add_option("--precision", cfg.precision, "Initial q-expansion precision (0 = automatic)");
    app.add_option("--c-norm", cfg.c_norm, "Normalization of the theta count")
        ->check(CLI::IsMember({"calibrate", "per-unit", "printed"}));

    std::optional<std::uint64_t> level;
    std::string in, out;
    int exit_code = kOk;

    // compute
    auto* compute = app.add_subcommand("compute", "Compute Phi_N and write it in the published format");
    compute->add_option("--level", level, "Prime level N")->required();
    compute->add_option("--out", out, "Output file (default stdout)");
    compute->callback([&] {
        const BivarPoly p = compute_phi(*level, cfg.phi_options());
        write_output(out, "# Phi_" + std::to_string(*level) + "(X,Y): [i,j] a_ij for i >= j, monic term omitted\n" +
                              serialize_modpoly(p));
    });

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Parse and validate a coefficient file");
    ingest->add_option("file", in, "Coefficient file")->required()->check(CLI::ExistingFile);
    ingest->add_option("--level", level, "Level (inferred from the degree when omitted)");
    ingest->callback([&] {
        const BivarPoly p = parse_modpoly_file(read_text_file(in), level);
        p.check_modular_shape();
        std::size_t stored = 0, longest = 0;
        for (const auto& [ij, c] : p.entries())
            if (ij.first >= ij.second) {
                ++stored;
                longest = std::max(longest, decimal_digits(c));
            }
        if (cfg.json()) {
            emit({{"kind", "ingest"}, {"level", p.level()}, {"degree", psi(p.level())}, {"coefficients", stored},
                  {"max_digits", longest}, {"symmetric", p.is_symmetric()}});
        } else {
            std::cout << "Phi_" << p.level() << ": degree " << psi(p.level()) << ", " << stored
                      << " coefficients with i >= j, largest has " << longest << " digits; symmetric and monic\n";
        }
    });

    // verify main / singular
    auto* verify = app.add_subcommand("verify", "Check coefficient divisibility bounds");
    verify->require_subcommand(1);
    auto* vmain = verify->add_subcommand("main", "Bounds for Phi_N at p = 2, 3, 5 and p = 2 mod 3 below 3N");
    vmain->add_option("--level", level, "Level N");
    vmain->add_option("--in", in, "Coefficient file")->check(CLI::ExistingFile);
    vmain->callback([&] {
        if (print_reports(cfg, verify_coefficient_bounds(get_phi(cfg, level, in))) > 0) exit_code = kViolations;
    });
    std::int64_t D = 0;
    auto* vsing = verify->add_subcommand("singular", "Bounds for Phi_N(X + J, Y + J) at a rational singular modulus J");
    vsing->add_option("--D", D, "Discriminant of J")->required();
    vsing->add_option("--level", level, "Level N");
    vsing->add_option("--in", in, "Coefficient file")->check(CLI::ExistingFile);
    vsing->callback([&] {
        const auto& rec = singular_modulus_by_D(D);
        if (print_reports(cfg, verify_singular(get_phi(cfg, level, in), rec)) > 0) exit_code = kViolations;
    });

    // cval, cval-scan
    std::string J_text = "0";
    std::uint64_t p = 0, pmax = 0;
    auto* cval = app.add_subcommand("cval", "C_J(N,p): order of X = 0 in Phi_N(X + J, J) mod p");
    cval->add_option("--level", level, "Level N");
    cval->add_option("--in", in, "Coefficient file")->check(CLI::ExistingFile);
    cval->add_option("--J", J_text, "j-invariant")->required();
    cval->add_option("--p", p, "Prime p (0 for characteristic zero)")->required();
    cval->callback([&] {
        const BivarPoly phi = get_phi(cfg, level, in);
        const Int J(J_text);
        const CValResult r = p == 0 ? c_val_char0(phi, J) : c_val_modp(phi, J, p);
        if (cfg.json()) {
            emit(r);
        } else {
            std::cout << "C_" << J.get_str() << "(" << r.level << "," << r.p << ") = " << r.value << '\n';
            if (!r.warning.empty()) std::cout << "warning: " << r.warning << '\n';
        }
    });
    auto* scan = app.add_subcommand("cval-scan", "Primes p <= pmax with C_J(N,p) > C_J(N,0)");
    scan->add_option("--level", level, "Level N");
    scan->add_option("--in", in, "Coefficient file")->check(CLI::ExistingFile);
    scan->add_option("--J", J_text, "j-invariant")->required();
    scan->add_option("--D", D, "Discriminant of J")->required();
    scan->add_option("--pmax", pmax, "Largest prime scanned")->required();
    scan->callback([&] {
        const ScanResult s = ss_prime_scan(get_phi(cfg, level, in), Int(J_text), D, pmax);
        if (!s.violations.empty()) exit_code = kViolations;
        if (cfg.json()) {
            emit(s);
            return;
        }
        std::cout << "N=" << s.level << " J=" << s.J.get_str() << " D=" << s.D << ": C_J(N,0) = " << s.char0 << '\n';
        for (auto [q, c] : s.entries) std::cout << "  p=" << q << "  C_J(N,p) = " << c << (q >= s.prime_bound ? "  VIOLATION" : "") << '\n';
        std::cout << s.entries.size() << " prime(s); all must lie below |D|N = " << s.prime_bound << '\n';
    });

    // theta, cyclic
    std::uint64_t upto = 0;
    std::string order_file;
    auto* theta = app.add_subcommand("theta", "Representation numbers of the maximal order for p");
    theta->add_option("--p", p, "Prime in {2, 3, 5, 7, 13}")->required();
    theta->add_option("--upto", upto, "Largest norm")->required();
    theta->add_option("--order-file", order_file, "Gram matrix file overriding the registry")->check(CLI::ExistingFile);
    theta->callback([&] {
        const QuatOrder o = get_order(p, order_file);
        const auto counts = theta_series(o, upto);
        if (cfg.json()) {
            emit({{"kind", "theta"}, {"p", p}, {"order", o.label()}, {"unit_count", o.unit_count()}, {"counts", counts}});
            return;
        }
        std::cout << o.label() << ": #O* = " << o.unit_count() << ", det(2Q) = " << o.trace_form_det().get_str() << '\n';
        for (std::uint64_t m = 0; m <= upto; ++m) std::cout << "  theta(" << m << ") = " << counts[m] << '\n';
    });
    auto* cyclic = app.add_subcommand("cyclic", "Theta-series count of cyclic N-endomorphisms at the supersingular j");
    cyclic->add_option("--p", p, "Prime in {2, 3, 5, 7, 13}")->required();
    cyclic->add_option("--level", level, "Level N")->required();
    cyclic->add_option("--order-file", order_file, "Gram matrix file overriding the registry")->check(CLI::ExistingFile);
    cyclic->callback([&] {
        std::string calib;
        const CNorm norm = resolve_cnorm(cfg, &calib);
        const Rat v = cyclic_count(get_order(p, order_file), *level, norm);
        if (cfg.json()) {
            emit({{"kind", "cyclic"}, {"p", p}, {"level", *level}, {"c_norm", norm == CNorm::PerUnit ? "per-unit" : "printed"},
                  {"value", v.get_str()}, {"calibration", calib}});
            return;
        }
        std::cout << "cyclic count (p=" << p << ", N=" << *level << ") = " << v.get_str() << '\n';
        if (!calib.empty()) std::cout << calib << '\n';
    });

    // nv
    std::string fixture, fixture_file;
    std::uint64_t nclass = 0;
    auto* nv = app.add_subcommand("nv", "v(g) for a fixture curve and a representative N");
    nv->add_option("--fixture", fixture, "Fixture name")->required();
    nv->add_option("--nclass", nclass, "Representative N of the congruence class")->required();
    nv->add_option("--fixtures", fixture_file, "Fixture file (default: velu_fixtures.txt in the data directory)")
        ->check(CLI::ExistingFile);
    nv->callback([&] {
        const auto all = fixture_file.empty() ? load_default_fixtures() : parse_fixtures(read_text_file(fixture_file));
        const VeluFixture& f = find_fixture(all, fixture);
        const GValuation g = g_valuation(f.curve, nclass);
        const auto want = f.expected(nclass);
        const bool consistent = g_consistent(f.curve, nclass);
        if (!g.non_integral.empty() || (want && *want != g.n_v) || !consistent) exit_code = kViolations;
        if (cfg.json()) {
            emit({{"kind", "nv"}, {"fixture", f.name}, {"N", nclass}, {"e", f.curve.ring->e()}, {"n_v", g.n_v},
                  {"n_p", g.n_p.get_str()}, {"expected", want ? json(*want) : json(nullptr)},
                  {"non_integral", g.non_integral.size()}, {"image_identities", consistent}});
            return;
        }
        std::cout << f.name << " N=" << nclass << ": n_v = " << g.n_v << ", n_v/e = " << g.n_p.get_str() << " (e = " << f.curve.ring->e()
                  << ")";
        if (want) std::cout << (*want == g.n_v ? ", as expected" : ", EXPECTED " + std::to_string(*want));
        std::cout << '\n';
        if (!g.non_integral.empty()) std::cout << "g has " << g.non_integral.size() << " non-integral coefficient(s)\n";
        if (!consistent) std::cout << "g disagrees with the image-curve reconstruction\n";
    });

    // compress / decompress
    unsigned version = 2;
    auto* comp = app.add_subcommand("compress", "Write the compressed form of a coefficient file");
    comp->add_option("--in", in, "Coefficient file")->required()->check(CLI::ExistingFile);
    comp->add_option("--out", out, "Output file (default stdout)");
    comp->add_option("--level", level, "Level (inferred when omitted)");
    comp->add_option("--version", version, "Format version")->check(CLI::IsMember({1u, 2u}));
    comp->callback([&] { write_output(out, serialize_compressed(compress(parse_modpoly_file(read_text_file(in), level), version))); });
    auto* decomp = app.add_subcommand("decompress", "Restore a coefficient file from its compressed form");
    decomp->add_option("--in", in, "Compressed file")->required()->check(CLI::ExistingFile);
    decomp->add_option("--out", out, "Output file (default stdout)");
    decomp->callback([&] {
        const BivarPoly p = decompress(parse_compressed(read_text_file(in)));
        p.check_modular_shape();
        write_output(out, serialize_modpoly(p));
    });

    // stats
    auto* stats = app.add_subcommand("stats", "Decimal characters before and after compression");
    stats->add_option("--in", in, "Coefficient file")->check(CLI::ExistingFile);
    stats->add_option("--level", level, "Level N");
    stats->add_option("--version", version, "Format version")->check(CLI::IsMember({1u, 2u}));
    stats->callback([&] {
        const BivarPoly p = get_phi(cfg, level, in);
        const DigitStats s = digit_stats(p, compress(p, version));
        if (cfg.json()) {
            emit({{"kind", "stats"}, {"level", p.level()}, {"naive", s.naive_digits}, {"compressed", s.compressed_digits},
                  {"saving", s.saving}});
            return;
        }
        std::cout << s.naive_digits << " → " << s.compressed_digits << " (" << std::llround(100.0 * s.saving) << "%)\n";
    });

    // lambda
    auto* lam = app.add_subcommand("lambda", "lambda_N and the averaged bound over p < 3N");
    lam->add_option("--level", level, "Odd level N")->required();
    lam->add_option("--in", in, "Coefficient file")->check(CLI::ExistingFile);
    lam->callback([&] {
        const double l = lambda_N(*level);
        std::optional<AverageBound> b;
        if (!in.empty() || (is_prime(*level) && *level <= cfg.ceiling) ||
            std::filesystem::exists(std::filesystem::path(data_dir()) / ("phi_" + std::to_string(*level) + ".txt")))
            b = avg_bound_check(get_phi(cfg, level, in));
        if (b && !b->skipped && !b->holds) exit_code = kViolations;
        if (cfg.json()) {
            json j{{"kind", "lambda"}, {"level", *level}, {"lambda", l}};
            if (b) {
                j["lhs"] = b->lhs;
                j["rhs"] = b->rhs;
                j["holds"] = b->holds;
                j["skipped"] = b->skipped;
                j["note"] = b->note;
            }
            emit(j);
            return;
        }
        std::cout << std::setprecision(6) << "lambda_" << *level << " = " << l << '\n';
        if (!b) {
            std::cout << "Phi_" << *level << " not available; averaged bound not evaluated\n";
        } else if (b->skipped) {
            std::cout << "averaged bound skipped: " << b->note << '\n';
        } else {
            std::cout << "sum C_0(N,p) log p = " << b->lhs << (b->holds ? " <= " : " > ") << b->rhs << '\n';
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return exit_code;
}

int main(int argc, char** argv) {
    // --data-dir has to take effect before any callback runs
    for (int k = 1; k < argc; ++k) {
        const std::string a = argv[k];
        if (a == "--data-dir" && k + 1 < argc) setenv("MODPOLY_DATA_DIR", argv[k + 1], 1);
        if (a.rfind("--data-dir=", 0) == 0) setenv("MODPOLY_DATA_DIR", a.substr(11).c_str(), 1);
    }
    return run(argc, argv);
}
