// qno_sim: qubit-nonlinear-oscillator simulator front end. Each subcommand
// reproduces one figure-style dataset (spectra, ground-state scans, Wigner
// grids, ...) as CSV or JSON; `validate` runs the invariant battery.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qno/eigensolver.hpp"
#include "qno/errors.hpp"
#include "qno/hamiltonian.hpp"
#include "qno/observables.hpp"
#include "qno/oscillator.hpp"
#include "qno/parallel.hpp"
#include "qno/pt_exact.hpp"
#include "qno/quadrature.hpp"
#include "qno/vanvleck.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;

    double value(int i) const { return start + i * (stop - start) / (steps - 1); }
};

SweepSpec parse_sweep(const std::string& text, const std::string& flag) {
    SweepSpec s;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &s.start, &s.stop, &s.steps, &extra) != 3)
        throw ConfigError(flag + ": expected start:stop:steps, got '" + text + "'");
    if (s.steps < 2) throw ConfigError(flag + ": steps must be >= 2");
    if (!(s.stop > s.start)) throw ConfigError(flag + ": stop must exceed start");
    return s;
}

enum class OutFormat { Csv, Json };

struct RunConfig {
    qno::OscKind kind = qno::OscKind::Tpt;
    double lambda_inv = 0.025;
    double omega = 1.0;
    double epsilon = 0.0;
    double gbar = 0.2;
    std::optional<SweepSpec> gbar_sweep;
    std::optional<SweepSpec> omega_sweep;
    std::optional<SweepSpec> epsilon_sweep;
    std::optional<int> fock_dim;
    bool fock_auto = false;
    qno::ModelVariant variant = qno::ModelVariant::extended(3);
    double grid_max = 6.0;
    int grid_points = 121;
    int n_max = 15;
    std::string output = "-";
    OutFormat format = OutFormat::Csv;
};

qno::OscKind parse_kind(const std::string& s) {
    if (s == "tpt") return qno::OscKind::Tpt;
    if (s == "mpt") return qno::OscKind::Mpt;
    throw ConfigError("kind must be tpt or mpt, got '" + s + "'");
}

qno::ModelVariant parse_variant(const std::string& s) {
    if (s == "vibron") return qno::ModelVariant::vibron();
    if (s == "ext1") return qno::ModelVariant::extended(1);
    if (s == "ext3") return qno::ModelVariant::extended(3);
    if (s == "ext5") return qno::ModelVariant::extended(5);
    throw ConfigError("variant must be vibron|ext1|ext3|ext5, got '" + s + "'");
}

OutFormat parse_format(const std::string& s) {
    if (s == "csv") return OutFormat::Csv;
    if (s == "json") return OutFormat::Json;
    throw ConfigError("format must be csv or json, got '" + s + "'");
}

// ---------------------------------------------------------------- dataset io

struct Dataset {
    std::vector<std::string> comments; // emitted as "# key=value" lines
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_csv(std::ostream& os, const Dataset& d) {
    os << "# qno-sim v" << kVersion << "\n";
    for (const std::string& c : d.comments) os << "# " << c << "\n";
    for (std::size_t i = 0; i < d.columns.size(); ++i)
        os << d.columns[i] << (i + 1 < d.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : d.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << format_double(row[i]) << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
}

void write_json(std::ostream& os, const Dataset& d) {
    nlohmann::json j;
    j["tool"] = std::string("qno-sim v") + kVersion;
    for (const std::string& c : d.comments) {
        const auto eq = c.find('=');
        if (eq != std::string::npos) j["header"][c.substr(0, eq)] = c.substr(eq + 1);
    }
    nlohmann::json records = nlohmann::json::array();
    for (const auto& row : d.rows) {
        nlohmann::json rec;
        for (std::size_t i = 0; i < row.size(); ++i) rec[d.columns[i]] = row[i];
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    os << j.dump(2) << "\n";
}

void emit(const RunConfig& cfg, const Dataset& d) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (cfg.output != "-") {
        file.open(cfg.output, std::ios::binary);
        if (!file) throw ConfigError("cannot open output file '" + cfg.output + "'");
        os = &file;
    }
    if (cfg.format == OutFormat::Csv)
        write_csv(*os, d);
    else
        write_json(*os, d);
}

// ------------------------------------------------------------- config file

void apply_json_config(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file parse error: ") + e.what());
    }
    try {
        if (j.contains("kind")) cfg.kind = parse_kind(j["kind"].get<std::string>());
        if (j.contains("lambda_inv")) cfg.lambda_inv = j["lambda_inv"].get<double>();
        if (j.contains("omega")) cfg.omega = j["omega"].get<double>();
        if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
        if (j.contains("gbar")) cfg.gbar = j["gbar"].get<double>();
        if (j.contains("gbar_sweep"))
            cfg.gbar_sweep = parse_sweep(j["gbar_sweep"].get<std::string>(), "gbar_sweep");
        if (j.contains("omega_sweep"))
            cfg.omega_sweep = parse_sweep(j["omega_sweep"].get<std::string>(), "omega_sweep");
        if (j.contains("epsilon_sweep"))
            cfg.epsilon_sweep = parse_sweep(j["epsilon_sweep"].get<std::string>(), "epsilon_sweep");
        if (j.contains("fock_dim")) {
            if (j["fock_dim"].is_string() && j["fock_dim"].get<std::string>() == "auto")
                cfg.fock_auto = true;
            else
                cfg.fock_dim = j["fock_dim"].get<int>();
        }
        if (j.contains("variant")) cfg.variant = parse_variant(j["variant"].get<std::string>());
        if (j.contains("grid_max")) cfg.grid_max = j["grid_max"].get<double>();
        if (j.contains("grid_points")) cfg.grid_points = j["grid_points"].get<int>();
        if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
        if (j.contains("output")) cfg.output = j["output"].get<std::string>();
        if (j.contains("format")) cfg.format = parse_format(j["format"].get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file type error: ") + e.what());
    }
}

// ------------------------------------------------------------ model helpers

qno::CoupledModel make_model(const RunConfig& cfg, double omega, double epsilon, double gbar,
                             int fock_dim, const qno::ModelVariant& variant) {
    return qno::CoupledModel{qno::QubitSpec(1.0, epsilon),
                             qno::OscillatorSpec(cfg.kind, cfg.lambda_inv, omega, fock_dim), gbar,
                             variant};
}

// Truncation used for the nonlinear runs. Explicit --fock-dim wins; `auto`
// runs the convergence sweep at the most demanding point of the request;
// otherwise the per-kind default applies.
int resolve_fock_dim(const RunConfig& cfg, double omega_min, double gbar_max) {
    if (cfg.fock_dim) {
        qno::OscillatorSpec(cfg.kind, cfg.lambda_inv, cfg.omega, *cfg.fock_dim); // guard check
        return *cfg.fock_dim;
    }
    if (!cfg.fock_auto) return qno::default_fock_dim(cfg.kind, cfg.lambda_inv);

    const int cap = std::min(qno::max_guarded_fock_dim(cfg.kind, cfg.lambda_inv, 200),
                             qno::default_fock_dim(cfg.kind, cfg.lambda_inv) + 40);
    auto make = [&](int n) {
        return build_hamiltonian(make_model(cfg, omega_min, cfg.epsilon, gbar_max, n, cfg.variant));
    };
    const qno::SweepResult r = qno::convergence_sweep(make, 9, 12, 4, 1e-8, cap);
    return r.fock_dim;
}

constexpr int kLinearDim = 60;

// Linear (lambda_inv = 0) reference model at the same qubit parameters.
std::vector<double> linear_ground_state(double omega, double epsilon, double gbar) {
    const qno::CoupledModel m{qno::QubitSpec(1.0, epsilon),
                              qno::OscillatorSpec(qno::OscKind::Tpt, 0.0, omega, kLinearDim), gbar,
                              qno::ModelVariant::extended(1)};
    const qno::SpectrumResult s = eigh(build_hamiltonian(m));
    std::vector<double> g(2 * kLinearDim);
    for (int i = 0; i < 2 * kLinearDim; ++i) g[i] = s.vectors(i, 0);
    return g;
}

std::vector<double> ground_state(const qno::CoupledModel& m) {
    const qno::SpectrumResult s = eigh(build_hamiltonian(m));
    std::vector<double> g(2 * m.osc.fock_dim());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = s.vectors(i, 0);
    return g;
}

// ------------------------------------------------------------- subcommands

Dataset run_spectrum(const RunConfig& cfg) {
    if (!cfg.omega_sweep) throw ConfigError("spectrum requires --omega-sweep");
    if (cfg.gbar_sweep || cfg.epsilon_sweep) throw ConfigError("spectrum sweeps omega only");
    const SweepSpec sweep = *cfg.omega_sweep;
    if (!(sweep.start > 0.0)) throw ConfigError("omega sweep must stay positive");
    const int n_dim = resolve_fock_dim(cfg, sweep.start, cfg.gbar);

    Dataset d;
    d.comments = {"fock_dim=" + std::to_string(n_dim)};
    d.columns = {"omega_ratio", "level_index", "E_numeric", "E_vanvleck", "E_uncoupled"};
    d.rows.resize(static_cast<std::size_t>(sweep.steps) * 9);
    qno::parallel_for(sweep.steps, [&](std::size_t i) {
        const double omega = sweep.value(static_cast<int>(i));
        const qno::CoupledModel numeric =
            make_model(cfg, omega, cfg.epsilon, cfg.gbar, n_dim, cfg.variant);
        qno::CoupledModel pert = numeric;
        pert.variant = qno::ModelVariant::extended(1);
        const std::vector<double> num = eigh(build_hamiltonian(numeric)).values;
        const std::vector<double> vv = vv_levels(pert, 9);
        const std::vector<double> unc = uncoupled_levels(numeric, 9);
        for (int k = 0; k < 9; ++k)
            d.rows[i * 9 + k] = {omega, double(k), num[k], vv[k], unc[k]};
    });
    return d;
}

Dataset run_ground(const RunConfig& cfg) {
    if (cfg.gbar_sweep && cfg.epsilon_sweep)
        throw ConfigError("ground sweeps exactly one of gbar/epsilon");
    if (!cfg.gbar_sweep && !cfg.epsilon_sweep)
        throw ConfigError("ground requires --gbar-sweep or --epsilon-sweep");
    const bool over_gbar = cfg.gbar_sweep.has_value();
    const SweepSpec sweep = over_gbar ? *cfg.gbar_sweep : *cfg.epsilon_sweep;
    const int n_dim = resolve_fock_dim(cfg, cfg.omega, over_gbar ? sweep.stop : cfg.gbar);

    Dataset d;
    d.comments = {"fock_dim=" + std::to_string(n_dim)};
    d.columns = {over_gbar ? "gbar" : "epsilon", "E0_numeric", "E0_vanvleck", "E0_linear"};
    d.rows.resize(sweep.steps);
    qno::parallel_for(sweep.steps, [&](std::size_t i) {
        const double v = sweep.value(static_cast<int>(i));
        const double eps = over_gbar ? cfg.epsilon : v;
        const double gbar = over_gbar ? v : cfg.gbar;
        const qno::CoupledModel numeric = make_model(cfg, cfg.omega, eps, gbar, n_dim, cfg.variant);
        qno::CoupledModel pert = numeric;
        pert.variant = qno::ModelVariant::extended(1);
        const double e0_num = eigh(build_hamiltonian(numeric)).values[0];
        const double e0_vv = vv_ground_energy(pert);
        const qno::CoupledModel lin{
            qno::QubitSpec(1.0, eps),
            qno::OscillatorSpec(qno::OscKind::Tpt, 0.0, cfg.omega, kLinearDim), gbar,
            qno::ModelVariant::extended(1)};
        const double e0_lin = eigh(build_hamiltonian(lin)).values[0];
        d.rows[i] = {v, e0_num, e0_vv, e0_lin};
    });
    return d;
}

Dataset run_excitations(const RunConfig& cfg) {
    if (!cfg.gbar_sweep) throw ConfigError("excitations requires --gbar-sweep");
    const SweepSpec sweep = *cfg.gbar_sweep;
    const int n_dim = resolve_fock_dim(cfg, cfg.omega, sweep.stop);

    Dataset d;
    d.comments = {"fock_dim=" + std::to_string(n_dim)};
    d.columns = {"gbar", "n_numeric", "n_vanvleck", "n_linear"};
    d.rows.resize(sweep.steps);
    qno::parallel_for(sweep.steps, [&](std::size_t i) {
        const double gbar = sweep.value(static_cast<int>(i));
        const qno::CoupledModel numeric =
            make_model(cfg, cfg.omega, cfg.epsilon, gbar, n_dim, cfg.variant);
        qno::CoupledModel pert = numeric;
        pert.variant = qno::ModelVariant::extended(1);
        const double n_num = qno::mean_excitation(qno::reduce_oscillator(ground_state(numeric)));
        const double n_vv =
            qno::mean_excitation(qno::reduce_oscillator(vv_ground_state(pert, n_dim).amplitudes));
        const double n_lin =
            qno::mean_excitation(qno::reduce_oscillator(linear_ground_state(cfg.omega, cfg.epsilon, gbar)));
        d.rows[i] = {gbar, n_num, n_vv, n_lin};
    });
    return d;
}

Dataset run_pvariance(const RunConfig& cfg) {
    if (!cfg.gbar_sweep) throw ConfigError("pvariance requires --gbar-sweep");
    const SweepSpec sweep = *cfg.gbar_sweep;
    const int n_dim = resolve_fock_dim(cfg, cfg.omega, sweep.stop);

    Dataset d;
    d.comments = {"fock_dim=" + std::to_string(n_dim)};
    d.columns = {"gbar", "var_numeric", "var_linear"};
    d.rows.resize(sweep.steps);
    const qno::OperatorMatrix momentum = momentum_operator(
        qno::OscillatorSpec(cfg.kind, cfg.lambda_inv, cfg.omega, n_dim), cfg.variant);
    const qno::OperatorMatrix momentum_lin =
        momentum_operator(qno::OscillatorSpec(qno::OscKind::Tpt, 0.0, cfg.omega, kLinearDim),
                          qno::ModelVariant::vibron());
    qno::parallel_for(sweep.steps, [&](std::size_t i) {
        const double gbar = sweep.value(static_cast<int>(i));
        const qno::CoupledModel numeric =
            make_model(cfg, cfg.omega, cfg.epsilon, gbar, n_dim, cfg.variant);
        const double var_num = qno::momentum_variance(qno::reduce_oscillator(ground_state(numeric)), momentum);
        const double var_lin = qno::momentum_variance(
            qno::reduce_oscillator(linear_ground_state(cfg.omega, cfg.epsilon, gbar)), momentum_lin);
        d.rows[i] = {gbar, var_num, var_lin};
    });
    return d;
}

Dataset run_wigner(const RunConfig& cfg) {
    if (cfg.gbar_sweep || cfg.omega_sweep || cfg.epsilon_sweep)
        throw ConfigError("wigner evaluates a single parameter point (no sweeps)");
    if (!(cfg.lambda_inv > 0.0))
        throw ConfigError(
            "wigner requires lambda_inv > 0 (use a small value for the near-harmonic limit)");
    if (cfg.grid_points < 3 || cfg.grid_points % 2 == 0)
        throw ConfigError("grid_points must be an odd count >= 3 so the p = 0 slice exists");
    const int n_dim = resolve_fock_dim(cfg, cfg.omega, cfg.gbar);

    const qno::CoupledModel m = make_model(cfg, cfg.omega, cfg.epsilon, cfg.gbar, n_dim, cfg.variant);
    const qno::DensityMatrix rho = qno::reduce_oscillator(ground_state(m));
    const qno::PtBasis basis(cfg.kind, cfg.lambda_inv, cfg.omega, n_dim);
    qno::GridSpec grid;
    grid.x_min = grid.p_min = -cfg.grid_max;
    grid.x_max = grid.p_max = cfg.grid_max;
    grid.nx = grid.np = cfg.grid_points;
    const qno::WignerGrid w = wigner(rho, basis, grid);
    if (std::abs(w.norm_estimate - 1.0) > 1e-3)
        throw qno::NumericError("wigner normalization outside tolerance", w.norm_estimate);

    Dataset d;
    d.comments = {"fock_dim=" + std::to_string(n_dim),
                  "norm_estimate=" + format_double(w.norm_estimate)};
    d.columns = {"x", "p", "w"};
    d.rows.reserve(static_cast<std::size_t>(grid.nx) * grid.np);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.np; ++j)
            d.rows.push_back({w.x_axis[i], w.p_axis[j], w.values(i, j)});
    return d;
}

Dataset run_entropy(const RunConfig& cfg) {
    if (!cfg.gbar_sweep) throw ConfigError("entropy requires --gbar-sweep");
    const SweepSpec sweep = *cfg.gbar_sweep;
    const int n_dim = resolve_fock_dim(cfg, cfg.omega, sweep.stop);
    const std::vector<double> biases = {0.0, 0.1};

    Dataset d;
    d.comments = {"fock_dim=" + std::to_string(n_dim)};
    d.columns = {"gbar", "epsilon", "S_numeric", "S_linear"};
    d.rows.resize(static_cast<std::size_t>(sweep.steps) * biases.size());
    qno::parallel_for(d.rows.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / 2;
        const double eps = biases[idx % 2];
        const double gbar = sweep.value(i);
        const qno::CoupledModel numeric = make_model(cfg, cfg.omega, eps, gbar, n_dim, cfg.variant);
        const double s_num = qno::entropy(qno::reduce_qubit(ground_state(numeric)));
        const double s_lin = qno::entropy(qno::reduce_qubit(linear_ground_state(cfg.omega, eps, gbar)));
        d.rows[idx] = {gbar, eps, s_num, s_lin};
    });
    return d;
}

Dataset run_matelem(const RunConfig& cfg) {
    if (cfg.n_max < 0) throw ConfigError("n_max must be >= 0");
    const int n_alg = qno::max_guarded_fock_dim(cfg.kind, cfg.lambda_inv, cfg.n_max + 2);
    const int n_max_eff = n_alg - 2;
    if (n_max_eff < 0) throw ConfigError("truncation guard leaves no representable elements");
    if (!(cfg.lambda_inv > 0.0))
        throw ConfigError("matelem requires lambda_inv > 0 (the exact basis needs a finite lambda)");

    const qno::OscillatorSpec spec(cfg.kind, cfg.lambda_inv, cfg.omega, n_alg);
    const qno::OperatorMatrix ext = position_operator(spec, qno::ModelVariant::extended(3));
    const qno::OperatorMatrix vib = position_operator(spec, qno::ModelVariant::vibron());
    const qno::PtBasis basis(cfg.kind, cfg.lambda_inv, cfg.omega, n_max_eff + 2);

    Dataset d;
    d.comments = {"fock_dim=" + std::to_string(n_alg)};
    d.columns = {"n", "exact", "extended", "vibron", "dev_extended", "dev_vibron"};
    d.rows.resize(n_max_eff + 1);
    qno::parallel_for(d.rows.size(), [&](std::size_t idx) {
        const int n = static_cast<int>(idx);
        const double exact = basis.exact_matrix_element_x(n + 1, n);
        const double e = ext(n + 1, n);
        const double v = vib(n + 1, n);
        d.rows[idx] = {double(n), exact, e, v, std::abs(exact - e), std::abs(exact - v)};
    });
    return d;
}

// --------------------------------------------------------------- validation

int run_validate() {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "ok   " : "FAIL ") << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    using namespace qno;
    try {
        { // ladder algebra identities
            bool ok = true;
            for (auto [kind, li, dim] :
                 std::vector<std::tuple<OscKind, double, int>>{{OscKind::Tpt, 0.025, 60},
                                                               {OscKind::Mpt, 0.025, 34}}) {
                const OscillatorSpec spec(kind, li, 1.0, dim);
                const LadderPair lp = ladder_matrices(spec);
                const Matrix comm =
                    lp.lowering.data() * lp.raising.data() - lp.raising.data() * lp.lowering.data();
                for (int n = 0; n + 1 < dim; ++n)
                    ok = ok && std::abs(comm(n, n) - (1.0 + spec.sign() * n * li)) < 1e-10;
                const OperatorMatrix h = number_hamiltonian(spec);
                const Matrix shift = h.data() * lp.lowering.data() - lp.lowering.data() * h.data();
                for (int n = 1; n < dim; ++n)
                    ok = ok && std::abs(shift(n - 1, n) +
                                        level_spacing(spec, n - 1) * lp.lowering(n - 1, n)) < 1e-10;
            }
            report("deformed-algebra identities", ok);
        }
        { // weight anchor
            const double k1 = diagonal_weights(OscillatorSpec(OscKind::Tpt, 0.025, 1.0, 8)).k1[0];
            report("K1 anchor", std::abs(k1 - 0.993609) < 1e-6);
        }
        { // eigensolver sanity
            Matrix a(30, 30);
            for (int i = 0; i < 30; ++i)
                for (int j = i; j < 30; ++j) a(i, j) = a(j, i) = std::sin(3.1 * i + 1.7 * j);
            double trace = 0.0;
            for (int i = 0; i < 30; ++i) trace += a(i, i);
            const SpectrumResult s = eigh(OperatorMatrix(a, Symmetry::Symmetric));
            double sum = 0.0;
            for (double v : s.values) sum += v;
            report("eigensolver trace identity", std::abs(sum - trace) < 1e-9);
        }
        { // wavefunction orthonormality
            bool ok = true;
            for (OscKind kind : {OscKind::Tpt, OscKind::Mpt}) {
                const PtBasis basis(kind, 0.025, 1.0, 6);
                const Matrix gram = basis.orthonormality_matrix(6);
                for (int m = 0; m < 6; ++m)
                    for (int n = 0; n < 6; ++n)
                        ok = ok && std::abs(gram(m, n) - (m == n ? 1.0 : 0.0)) < 1e-7;
            }
            report("exact-wavefunction Gram", ok);
        }
        { // parity commutation (sigma~_z x (-1)^n at zero bias)
            const int n = 16;
            const CoupledModel m{QubitSpec(1.0, 0.0), OscillatorSpec(OscKind::Tpt, 0.025, 1.0, n),
                                 1.0, ModelVariant::extended(3)};
            const OperatorMatrix h = build_hamiltonian(m);
            Matrix parity(2 * n, 2 * n);
            for (int k = 0; k < n; ++k) {
                parity(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
                parity(n + k, n + k) = -parity(k, k);
            }
            report("parity commutation", max_abs(h.data() * parity - parity * h.data()) < 1e-12);
        }
        { // Van Vleck anchor
            const CoupledModel m{QubitSpec(1.0, 0.0), OscillatorSpec(OscKind::Tpt, 0.025, 1.0, 20),
                                 0.2, ModelVariant::extended(1)};
            report("VV ground-state anchor", std::abs(vv_ground_energy(m) + 0.519623) < 1e-6);
        }
        { // observables on a pipeline state
            const CoupledModel m{QubitSpec(1.0, 0.0), OscillatorSpec(OscKind::Tpt, 0.025, 1.0, 24),
                                 0.8, ModelVariant::extended(3)};
            const std::vector<double> g = ground_state(m);
            const double sq = qno::entropy(qno::reduce_qubit(g));
            const double so = entropy(reduce_oscillator(g));
            report("Araki-Lieb equality", std::abs(sq - so) < 1e-8);

            const PtBasis basis(OscKind::Tpt, 0.025, 1.0, 24);
            GridSpec grid;
            grid.nx = grid.np = 41;
            const WignerGrid w = wigner(reduce_oscillator(g), basis, grid);
            report("Wigner normalization", std::abs(w.norm_estimate - 1.0) < 1e-3,
                   "norm " + format_double(w.norm_estimate));
        }
        { // harmonic vacuum Wigner peak
            const PtBasis basis(OscKind::Tpt, 1e-4, 1.0, 2);
            Matrix rho(2, 2);
            rho(0, 0) = 1.0;
            GridSpec grid;
            grid.nx = grid.np = 31;
            const WignerGrid w = wigner(DensityMatrix(rho), basis, grid);
            report("harmonic vacuum peak", std::abs(w.values(15, 15) - 1.0 / M_PI) < 1e-3);
        }
    } catch (const std::exception& e) {
        report("validation run", false, e.what());
    }

    std::cout << (failures == 0 ? "all checks passed" : "checks failed") << "\n";
    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qubit-nonlinear-oscillator simulator"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string kind_s, variant_s, format_s, fock_s;
    std::string gbar_sweep_s, omega_sweep_s, epsilon_sweep_s;

    // resolve --config first so flags can override its values
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    try {
        if (!config_path.empty()) apply_json_config(config_path, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (flags override it)");
        cmd->add_option("--kind", kind_s, "oscillator kind: tpt|mpt");
        cmd->add_option("--lambda-inv", cfg.lambda_inv, "anharmonicity 1/lambda (>= 0)");
        cmd->add_option("--omega", cfg.omega, "oscillator frequency in units of delta0");
        cmd->add_option("--epsilon", cfg.epsilon, "qubit bias in units of delta0");
        cmd->add_option("--gbar", cfg.gbar, "coupling in units of delta0");
        cmd->add_option("--gbar-sweep", gbar_sweep_s, "coupling sweep start:stop:steps");
        cmd->add_option("--omega-sweep", omega_sweep_s, "frequency sweep start:stop:steps");
        cmd->add_option("--epsilon-sweep", epsilon_sweep_s, "bias sweep start:stop:steps");
        cmd->add_option("--fock-dim", fock_s, "oscillator truncation (integer or 'auto')");
        cmd->add_option("--variant", variant_s, "operator expansion: vibron|ext1|ext3|ext5");
        cmd->add_option("--output", cfg.output, "output path ('-' = stdout)");
        cmd->add_option("--format", format_s, "output format: csv|json");
        return cmd;
    };

    CLI::App* c_spectrum = add_common(app.add_subcommand(
        "spectrum", "lowest levels vs oscillator frequency (numeric, Van Vleck, uncoupled)"));
    CLI::App* c_ground =
        add_common(app.add_subcommand("ground", "ground-state energy vs coupling or bias"));
    CLI::App* c_excitations = add_common(app.add_subcommand(
        "excitations", "mean anharmonic excitation number of the ground state vs coupling"));
    CLI::App* c_pvariance =
        add_common(app.add_subcommand("pvariance", "ground-state momentum variance vs coupling"));
    CLI::App* c_wigner = add_common(app.add_subcommand(
        "wigner", "Wigner function of the oscillator ground state on a phase-space grid"));
    c_wigner->add_option("--grid-max", cfg.grid_max, "half-width of the square grid");
    c_wigner->add_option("--grid-points", cfg.grid_points, "points per axis (odd)");
    CLI::App* c_entropy = add_common(
        app.add_subcommand("entropy", "qubit entropy vs coupling, for biases 0 and 0.1"));
    CLI::App* c_matelem = add_common(app.add_subcommand(
        "matelem", "exact vs approximate position matrix elements <n+1|x|n>"));
    c_matelem->add_option("--n-max", cfg.n_max, "largest quantum number (clipped by the MPT guard)");
    CLI::App* c_validate = app.add_subcommand("validate", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!kind_s.empty()) cfg.kind = parse_kind(kind_s);
        if (!variant_s.empty()) cfg.variant = parse_variant(variant_s);
        if (!format_s.empty()) cfg.format = parse_format(format_s);
        if (!fock_s.empty()) {
            if (fock_s == "auto") {
                cfg.fock_auto = true;
                cfg.fock_dim.reset();
            } else {
                try {
                    cfg.fock_dim = std::stoi(fock_s);
                } catch (const std::exception&) {
                    throw ConfigError("--fock-dim expects an integer or 'auto'");
                }
                cfg.fock_auto = false;
            }
        }
        if (!gbar_sweep_s.empty()) cfg.gbar_sweep = parse_sweep(gbar_sweep_s, "--gbar-sweep");
        if (!omega_sweep_s.empty()) cfg.omega_sweep = parse_sweep(omega_sweep_s, "--omega-sweep");
        if (!epsilon_sweep_s.empty())
            cfg.epsilon_sweep = parse_sweep(epsilon_sweep_s, "--epsilon-sweep");
        if (cfg.lambda_inv < 0.0) throw ConfigError("lambda_inv must be >= 0");
        if (!(cfg.omega > 0.0)) throw ConfigError("omega must be > 0");

        if (c_validate->parsed()) return run_validate();
        if (c_spectrum->parsed())
            emit(cfg, run_spectrum(cfg));
        else if (c_ground->parsed())
            emit(cfg, run_ground(cfg));
        else if (c_excitations->parsed())
            emit(cfg, run_excitations(cfg));
        else if (c_pvariance->parsed())
            emit(cfg, run_pvariance(cfg));
        else if (c_wigner->parsed())
            emit(cfg, run_wigner(cfg));
        else if (c_entropy->parsed())
            emit(cfg, run_entropy(cfg));
        else if (c_matelem->parsed())
            emit(cfg, run_matelem(cfg));
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qno::GuardError& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 4;
    } catch (const qno::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const qno::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
