// Batch front end: compute partition functions, run verification suites,
// sweep over N, emit JSON/CSV.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hpf/json_io.hpp"
#include "hpf/oracles.hpp"
#include "hpf/parallel.hpp"
#include "hpf/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDisagreement = 3;

struct WeightOptions {
    std::string kind = "gaussian";
    double a = 1.0, b = 1.0;
    double lo = 0.0, hi = 1.0;
    int quad_order = 80;
};

hpf::Measure make_measure(const WeightOptions& w, int beta, int n) {
    if (w.kind == "gaussian") return hpf::Measure::gaussian(w.quad_order);
    if (w.kind == "jacobi") return hpf::Measure::jacobi(w.a, w.b, w.quad_order);
    if (w.kind == "uniform") return hpf::Measure::uniform(w.lo, w.hi, w.quad_order);
    if (w.kind == "circular") return hpf::Measure::circular(n, beta, w.quad_order);
    throw std::invalid_argument("unknown weight kind: " + w.kind);
}

double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

double rel_err(hpf::cplx value, double reference) {
    return std::abs(value - hpf::cplx(reference)) / std::max(std::abs(reference), 1e-300);
}

std::string pick_auto_oracle(const hpf::EnsembleSpec& spec) {
    if (spec.geometry == hpf::Geometry::circle) return "dyson";
    if (spec.measure.kind() == hpf::MeasureKind::gaussian) return "mehta";
    if (spec.measure.kind() == hpf::MeasureKind::jacobi) return "selberg";
    return "direct";
}

void attach_oracle(hpf::ZnResult& result, const hpf::EnsembleSpec& spec,
                   const std::string& name, std::uint64_t seed) {
    double value = 0.0;
    if (name == "mehta") {
        value = hpf::mehta_value(0.5 * spec.beta, spec.N);
    } else if (name == "selberg") {
        value = hpf::selberg_value(0.5 * spec.beta, spec.measure.jacobi_a(),
                                   spec.measure.jacobi_b(), spec.N);
    } else if (name == "dyson") {
        value = hpf::dyson_value(spec.beta, spec.N) *
                std::pow(2.0 * std::numbers::pi, spec.N);  // unnormalized d(theta)
    } else if (name == "direct") {
        if (spec.N > 4) return;
        value = hpf::direct_partition_tensor(spec).value;
    } else if (name == "mc") {
        if (spec.N > 6) return;
        value = hpf::direct_partition_mc(spec, 200000, seed).value;
    } else {
        throw std::invalid_argument("unknown oracle: " + name);
    }
    result.oracle_values[name] = value;
    result.discrepancies[name] = rel_err(result.value, value);
}

void attach_oracles(hpf::ZnResult& result, const hpf::EnsembleSpec& spec,
                    const std::string& choice, std::uint64_t seed) {
    if (choice == "none") return;
    const std::string primary = pick_auto_oracle(spec);
    if (choice == "auto") {
        attach_oracle(result, spec, primary, seed);
        if (spec.N <= 3 && primary != "direct") attach_oracle(result, spec, "direct", seed);
        return;
    }
    if (choice == "all") {
        attach_oracle(result, spec, primary, seed);
        if (primary != "direct") attach_oracle(result, spec, "direct", seed);
        attach_oracle(result, spec, "mc", seed);
        return;
    }
    throw std::invalid_argument("unknown oracle choice: " + choice);
}

struct CheckRow {
    std::string suite;
    std::string check;
    double lhs;
    double rhs;
    double rel;
    bool pass;
};

void print_rows(const std::vector<CheckRow>& rows) {
    std::printf("suite,check,lhs,rhs,rel_err,pass\n");
    for (const auto& r : rows)
        std::printf("%s,%s,%.12g,%.12g,%.3g,%s\n", r.suite.c_str(), r.check.c_str(), r.lhs, r.rhs,
                    r.rel, r.pass ? "true" : "false");
}

hpf::Matrix random_antisymmetric(int order, hpf::CounterRng& rng, std::uint64_t& counter) {
    hpf::Matrix a(order, order);
    for (int i = 0; i < order; ++i)
        for (int j = i + 1; j < order; ++j) {
            const double v = rng.uniform(counter++, -1.0, 1.0);
            a.at(i, j) = v;
            a.at(j, i) = -v;
        }
    return a;
}

void suite_exterior(std::vector<CheckRow>& rows, double tol) {
    hpf::CounterRng rng(2024);
    std::uint64_t counter = 0;

    double worst = 0.0, wl = 0.0, wr = 0.0;
    for (int rep = 0; rep < 60; ++rep) {
        const int order = 2 * (1 + int(rng.uniform(counter++) * 6));
        const hpf::Matrix a = random_antisymmetric(order, rng, counter);
        const hpf::cplx pf = hpf::pfaffian(a);
        const hpf::cplx hp = hpf::hyperpfaffian(hpf::form_from_matrix(a));
        const double rel = std::abs(pf - hp) / std::max(1e-300, std::abs(pf));
        if (rel > worst) { worst = rel; wl = hp.real(); wr = pf.real(); }
    }
    rows.push_back({"exterior", "hyperpfaffian_vs_pfaffian", wl, wr, worst, worst <= tol});

    worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const int dim = 6;
        std::vector<hpf::ExtForm::Term> ta, tb;
        hpf::for_each_multi_index(dim, 2, [&](std::uint64_t m) {
            ta.emplace_back(m, hpf::cplx(rng.uniform(counter++, -1, 1), rng.uniform(counter++, -1, 1)));
        });
        hpf::for_each_multi_index(dim, 3, [&](std::uint64_t m) {
            tb.emplace_back(m, hpf::cplx(rng.uniform(counter++, -1, 1), rng.uniform(counter++, -1, 1)));
        });
        const hpf::ExtForm a = hpf::ExtForm::from_terms(dim, 2, ta);
        const hpf::ExtForm b = hpf::ExtForm::from_terms(dim, 3, tb);
        const hpf::ExtForm ab = hpf::wedge(a, b);
        hpf::ExtForm ba = hpf::wedge(b, a);
        ba *= std::pow(-1.0, a.degree() * b.degree());
        for (const auto& [mask, v] : ab.terms()) worst = std::max(worst, std::abs(v - ba.coefficient(mask)));
    }
    rows.push_back({"exterior", "graded_commutativity", worst, 0.0, worst, worst <= 1e-12});

    worst = 0.0;
    for (int rep = 0; rep < 30; ++rep) {
        const int order = 2 * (1 + int(rng.uniform(counter++) * 5));
        const hpf::Matrix a = random_antisymmetric(order, rng, counter);
        const hpf::cplx pf2 = hpf::pfaffian(a) * hpf::pfaffian(a);
        const hpf::cplx det = a.determinant();
        worst = std::max(worst, std::abs(pf2 - det) / std::max(1e-300, std::abs(det)));
    }
    rows.push_back({"exterior", "pfaffian_squared_vs_det", worst, 0.0, worst, worst <= 1e-9});
}

// points in [lo, hi] with pairwise gaps bounded away from zero, so the
// product-formula references stay well conditioned
std::vector<double> separated_points(hpf::CounterRng& rng, std::uint64_t& counter, int n,
                                     double lo, double hi) {
    std::vector<double> out;
    const double step = (hi - lo) / n;
    for (int i = 0; i < n; ++i)
        out.push_back(lo + step * (i + 0.25 + 0.5 * rng.uniform(counter++)));
    return out;
}

void suite_identities(std::vector<CheckRow>& rows, double tol) {
    hpf::CounterRng rng(777);
    std::uint64_t counter = 0;

    double worst = 0.0;
    const hpf::FamilyKind kinds[] = {hpf::FamilyKind::monomial, hpf::FamilyKind::hermite_monic,
                                     hpf::FamilyKind::legendre_monic, hpf::FamilyKind::random_monic};
    for (int rep = 0; rep < 50; ++rep) {
        const int L = 1 + int(rng.uniform(counter++) * 3);
        const int n = 1 + int(rng.uniform(counter++) * 3);
        const auto kind = kinds[rep % 4];
        const hpf::CompleteFamily fam = hpf::standard_family(kind, n * L, 11 + rep);
        const auto lambdas = separated_points(rng, counter, n, -2.0, 2.0);
        const auto check = hpf::vandermonde_identity_check(fam, L, lambdas);
        if (!check.degenerate) worst = std::max(worst, check.rel_err);
    }
    rows.push_back({"identities", "confluent_vandermonde", worst, 0.0, worst, worst <= 1e-9});

    double worst_t = 0.0, worst_s = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 2 * (1 + int(rng.uniform(counter++) * 3));
        const auto lambdas = separated_points(rng, counter, n, -2.0, 2.0);
        const auto check = hpf::sign_matrix_pfaffian_check(lambdas);
        worst_t = std::max(worst_t, std::abs(check.pf_sign_matrix - hpf::cplx(check.sign_product)));
        worst_s = std::max(worst_s,
                           std::abs(check.pf_power_matrix - hpf::cplx(check.difference_product)) /
                               std::max(1e-300, std::abs(check.difference_product)));
    }
    rows.push_back({"identities", "pf_sign_matrix", worst_t, 0.0, worst_t, worst_t <= 1e-10});
    rows.push_back({"identities", "pf_power_matrix", worst_s, 0.0, worst_s, worst_s <= std::max(tol, 1e-10)});
}

void suite_closed_form(std::vector<CheckRow>& rows, const std::string& suite, double tol,
                       int threads) {
    struct Config { int beta, n; };
    std::vector<Config> grid;
    if (suite == "mehta")
        grid = {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {4, 2}, {4, 3}, {4, 4}, {9, 2}, {9, 3}, {9, 5}};
    else if (suite == "selberg")
        grid = {{1, 2}, {1, 3}, {4, 2}, {4, 3}, {9, 2}};
    else
        grid = {{1, 2}, {1, 3}, {4, 2}, {4, 3}, {9, 2}};

    for (const auto& [beta, n] : grid) {
        hpf::EnsembleSpec spec;
        double reference = 0.0;
        if (suite == "mehta") {
            spec = hpf::make_ensemble_spec(beta, n, hpf::Geometry::real_line,
                                           hpf::Measure::gaussian(), hpf::FamilyKind::monomial, 0,
                                           threads);
            reference = hpf::mehta_value(0.5 * beta, n);
        } else if (suite == "selberg") {
            spec = hpf::make_ensemble_spec(beta, n, hpf::Geometry::real_line,
                                           hpf::Measure::jacobi(1.0, 1.0), hpf::FamilyKind::monomial,
                                           0, threads);
            reference = hpf::selberg_value(0.5 * beta, 1.0, 1.0, n);
        } else {
            spec = hpf::make_ensemble_spec(beta, n, hpf::Geometry::circle,
                                           hpf::Measure::circular(n, beta), hpf::FamilyKind::monomial,
                                           0, threads);
            reference = hpf::dyson_value(beta, n) * std::pow(2.0 * std::numbers::pi, n);
        }
        const hpf::ZnResult result = hpf::partition_function(spec);
        const double rel = rel_err(result.value, reference);
        rows.push_back({suite, "beta" + std::to_string(beta) + "_N" + std::to_string(n),
                        result.value.real(), reference, rel, rel <= tol});
    }
}

void suite_invariance(std::vector<CheckRow>& rows, double tol, int threads) {
    const hpf::FamilyKind kinds[] = {hpf::FamilyKind::monomial, hpf::FamilyKind::hermite_monic,
                                     hpf::FamilyKind::legendre_monic, hpf::FamilyKind::random_monic};
    for (int L = 1; L <= 3; ++L) {
        const int beta = L * L;
        for (int n = 1; n <= 4; ++n) {
            double lo = 0.0, hi = 0.0;
            bool first = true;
            for (const auto kind : kinds) {
                const auto spec = hpf::make_ensemble_spec(beta, n, hpf::Geometry::real_line,
                                                          hpf::Measure::gaussian(), kind, 41, threads);
                const double v = hpf::partition_function(spec).value.real();
                if (first) { lo = hi = v; first = false; }
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            const double spread = (hi - lo) / std::max(1e-300, std::abs(hi));
            rows.push_back({"invariance", "beta" + std::to_string(beta) + "_N" + std::to_string(n),
                            lo, hi, spread, spread <= tol});
        }
    }
}

int cmd_verify(const std::string& suite, double tol, int threads) {
    std::vector<CheckRow> rows;
    const bool all = suite == "all";
    if (all || suite == "exterior") suite_exterior(rows, 1e-10);
    if (all || suite == "identities") suite_identities(rows, tol);
    if (all || suite == "mehta") suite_closed_form(rows, "mehta", std::min(tol, 1e-6), threads);
    if (all || suite == "selberg") suite_closed_form(rows, "selberg", std::min(tol, 1e-6), threads);
    if (all || suite == "dyson") suite_closed_form(rows, "dyson", std::min(tol, 1e-6), threads);
    if (all || suite == "invariance") suite_invariance(rows, 1e-8, threads);
    if (rows.empty()) {
        std::cerr << "unknown suite: " << suite << "\n";
        return kExitUsage;
    }
    print_rows(rows);
    for (const auto& r : rows)
        if (!r.pass) return kExitDisagreement;
    return kExitOk;
}

struct ComputeOptions {
    int beta = 0;
    int n = 0;
    std::string geometry = "line";
    WeightOptions weight;
    std::string family = "monomial";
    std::uint64_t seed = 0;
    std::string oracle = "auto";
    double tol = 1e-6;
    int threads = 0;
};

hpf::EnsembleSpec spec_from_options(const ComputeOptions& opt) {
    const hpf::Geometry geometry =
        (opt.geometry == "circle") ? hpf::Geometry::circle : hpf::Geometry::real_line;
    WeightOptions weight = opt.weight;
    if (geometry == hpf::Geometry::circle) weight.kind = "circular";
    const int threads = opt.threads > 0 ? opt.threads : hpf::default_thread_count();
    return hpf::make_ensemble_spec(opt.beta, opt.n, geometry, make_measure(weight, opt.beta, opt.n),
                                   hpf::family_kind_from_string(opt.family), opt.seed, threads);
}

int cmd_compute(const ComputeOptions& opt) {
    const hpf::EnsembleSpec spec = spec_from_options(opt);
    hpf::ZnResult result = hpf::partition_function(spec);
    attach_oracles(result, spec, opt.oracle, opt.seed);
    std::cout << hpf::result_to_json(result).dump(2) << "\n";
    for (const auto& [name, rel] : result.discrepancies)
        if (rel > opt.tol) {
            std::cerr << "oracle disagreement: " << name << " rel_err " << rel << "\n";
            return kExitDisagreement;
        }
    return kExitOk;
}

int cmd_sweep(const ComputeOptions& base, const std::string& range, const std::string& out_path) {
    const auto sep = range.find("..");
    if (sep == std::string::npos)
        throw std::invalid_argument("sweep: --n-range must look like A..B");
    const int n_lo = std::stoi(range.substr(0, sep));
    const int n_hi = std::stoi(range.substr(sep + 2));

    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("sweep: cannot open " + out_path);
    out << "beta,L,N,case,value_re,value_im,oracle,oracle_value,rel_err,seconds\n";
    out.flush();

    for (int n = n_lo; n <= n_hi; ++n) {
        ComputeOptions opt = base;
        opt.n = n;
        const hpf::EnsembleSpec spec = spec_from_options(opt);
        hpf::ZnResult result = hpf::partition_function(spec);
        const std::string oracle = pick_auto_oracle(spec);
        attach_oracle(result, spec, oracle, opt.seed);
        const double oracle_value =
            result.oracle_values.count(oracle) ? result.oracle_values.at(oracle) : 0.0;
        const double rel = result.discrepancies.count(oracle) ? result.discrepancies.at(oracle) : 0.0;
        char line[512];
        std::snprintf(line, sizeof line, "%d,%d,%d,%s,%.17g,%.17g,%s,%.17g,%.6g,%.6g\n", result.beta,
                      result.L, result.N, hpf::to_string(result.ensemble_case).c_str(),
                      result.value.real(), result.value.imag(), oracle.c_str(), oracle_value, rel,
                      result.seconds);
        out << line;
        out.flush();
        if (result.discrepancies.count(oracle) && rel > opt.tol) {
            std::cerr << "sweep: oracle disagreement at N=" << n << " rel_err " << rel << "\n";
            return kExitDisagreement;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperpfaffian partition functions for beta ensembles"};
    app.require_subcommand(1);

    ComputeOptions opt;
    std::string config_path;

    auto add_shared = [&](CLI::App* cmd) {
        cmd->add_option("--beta", opt.beta, "Dyson index (L^2 or L^2+1 with L odd)");
        cmd->add_option("--n", opt.n, "number of eigenvalues");
        cmd->add_option("--geometry", opt.geometry, "line|circle")
            ->check(CLI::IsMember({"line", "circle"}));
        cmd->add_option("--weight", opt.weight.kind, "gaussian|jacobi|uniform|circular")
            ->check(CLI::IsMember({"gaussian", "jacobi", "uniform", "circular"}));
        cmd->add_option("--a", opt.weight.a, "jacobi exponent a");
        cmd->add_option("--b", opt.weight.b, "jacobi exponent b");
        cmd->add_option("--lo", opt.weight.lo, "uniform lower bound");
        cmd->add_option("--hi", opt.weight.hi, "uniform upper bound");
        cmd->add_option("--family", opt.family, "monomial|hermite|legendre|random")
            ->check(CLI::IsMember({"monomial", "hermite", "legendre", "random"}));
        cmd->add_option("--seed", opt.seed, "seed for random family / Monte Carlo");
        cmd->add_option("--quad-order", opt.weight.quad_order, "quadrature order");
        cmd->add_option("--tol", opt.tol, "oracle disagreement tolerance");
        cmd->add_option("--threads", opt.threads, "worker thread cap (default HPF_THREADS or 1)");
    };

    CLI::App* compute = app.add_subcommand("compute", "compute one partition function as JSON");
    add_shared(compute);
    compute->add_option("--oracle", opt.oracle, "auto|none|all")
        ->check(CLI::IsMember({"auto", "none", "all"}));
    compute->add_option("--config", config_path, "JSON config mirroring the flags");

    std::string suite = "all";
    double verify_tol = 1e-6;
    int verify_threads = 0;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite, CSV per check");
    verify->add_option("--suite", suite, "exterior|identities|mehta|selberg|dyson|invariance|all")
        ->check(CLI::IsMember({"exterior", "identities", "mehta", "selberg", "dyson", "invariance", "all"}));
    verify->add_option("--tol", verify_tol, "tolerance");
    verify->add_option("--threads", verify_threads, "worker thread cap");

    std::string n_range;
    std::string out_path = "sweep.csv";
    CLI::App* sweep = app.add_subcommand("sweep", "one CSV row per N over a range");
    add_shared(sweep);
    sweep->add_option("--n-range", n_range, "inclusive range A..B")->required();
    sweep->add_option("--out", out_path, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) {
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::invalid_argument("cannot open config: " + config_path);
                nlohmann::json cfg = nlohmann::json::parse(in);
                if (!compute->count("--beta") && cfg.contains("beta")) opt.beta = cfg["beta"];
                if (!compute->count("--n") && cfg.contains("n")) opt.n = cfg["n"];
                if (!compute->count("--geometry") && cfg.contains("geometry"))
                    opt.geometry = cfg["geometry"];
                if (!compute->count("--family") && cfg.contains("family")) opt.family = cfg["family"];
                if (!compute->count("--seed") && cfg.contains("seed")) opt.seed = cfg["seed"];
                if (!compute->count("--oracle") && cfg.contains("oracle")) opt.oracle = cfg["oracle"];
                if (!compute->count("--tol") && cfg.contains("tol")) opt.tol = cfg["tol"];
                if (!compute->count("--threads") && cfg.contains("threads")) opt.threads = cfg["threads"];
                if (cfg.contains("measure")) {
                    const auto& m = cfg["measure"];
                    if (!compute->count("--weight") && m.contains("kind")) opt.weight.kind = m["kind"];
                    if (!compute->count("--a") && m.contains("a")) opt.weight.a = m["a"];
                    if (!compute->count("--b") && m.contains("b")) opt.weight.b = m["b"];
                    if (!compute->count("--lo") && m.contains("lo")) opt.weight.lo = m["lo"];
                    if (!compute->count("--hi") && m.contains("hi")) opt.weight.hi = m["hi"];
                    if (!compute->count("--quad-order") && m.contains("quad_order"))
                        opt.weight.quad_order = m["quad_order"];
                }
            }
            return cmd_compute(opt);
        }
        if (verify->parsed()) {
            return cmd_verify(suite, verify_tol,
                              verify_threads > 0 ? verify_threads : hpf::default_thread_count());
        }
        if (sweep->parsed()) return cmd_sweep(opt, n_range, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
