// hillbands command-line driver. Every JSON result carries the full run
// description under "run", so `hillbands replay out.json` repeats it.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hillbands/acceptance.hpp"

using namespace hillbands;

namespace {

struct Run {
    std::string command, sub;
    json potential, coeffs;
    std::string problem = "dirichlet";
    double k = 0;
    double lo = 0, hi = 100, im = 0;
    int points = 201;
    std::string mode = "auto";
    IntegratorConfig tol;
    int threads = 1;
    std::string format = "json";
    // certify
    std::string cert = "interval";
    double a = 0, b = std::numeric_limits<double>::infinity(), r = 1, phi = 2 - std::sqrt(3.0);
    std::optional<double> nu0;
    // resolvent-check / reduce
    double re = 10, imag = 0.5;
    std::string kernel = "quasi";
    int n_max = 0;
    double zeta = 1000;

    json to_json() const {
        json j{{"command", command}, {"tolerances", hillbands::to_json(tol)}, {"threads", threads}, {"format", format}};
        if (!sub.empty()) j["sub"] = sub;
        if (!potential.is_null()) j["potential"] = potential;
        if (!coeffs.is_null()) j["coeffs"] = coeffs;
        if (command == "eigs" || command == "bands") {
            j["problem"] = problem;
            j["k"] = k;
            j["region"] = {{"lo", lo}, {"hi", hi}, {"im", im}};
            j["mode"] = mode;
            j["points"] = points;
        } else if (command == "discriminant") {
            j["region"] = {{"lo", lo}, {"hi", hi}, {"im", im}};
            j["points"] = points;
        } else if (command == "certify") {
            j["certificate"] = cert;
            j["a"] = number(a);
            j["b"] = number(b);
            j["r"] = r;
            j["phi"] = phi;
            if (nu0) j["nu0"] = *nu0;
        } else if (command == "resolvent-check") {
            j["lambda"] = {{"re", re}, {"im", imag}};
            j["k"] = k;
            j["kernel"] = kernel;
        } else if (command == "boussinesq") {
            j["region"] = {{"lo", lo}, {"hi", hi}};
            j["n_max"] = n_max;
            j["zeta"] = zeta;
        }
        return j;
    }

    static double num(const json& v) {
        if (v.is_string()) {
            auto s = v.get<std::string>();
            if (s == "inf") return std::numeric_limits<double>::infinity();
            if (s == "-inf") return -std::numeric_limits<double>::infinity();
            throw ParseError("run: bad number '" + s + "'");
        }
        return v.get<double>();
    }

    static Run from_json(const json& j) {
        Run r;
        try {
            r.command = j.at("command").get<std::string>();
            r.sub = j.value("sub", "");
            r.potential = j.value("potential", json());
            r.coeffs = j.value("coeffs", json());
            if (j.contains("tolerances")) r.tol = integrator_from_json(j.at("tolerances"));
            r.threads = j.value("threads", 1);
            r.format = j.value("format", "json");
            r.problem = j.value("problem", r.problem);
            r.k = j.value("k", 0.0);
            if (j.contains("region")) {
                const auto& g = j.at("region");
                r.lo = g.value("lo", r.lo);
                r.hi = g.value("hi", r.hi);
                r.im = g.value("im", 0.0);
            }
            r.mode = j.value("mode", r.mode);
            r.points = j.value("points", r.points);
            r.cert = j.value("certificate", r.cert);
            if (j.contains("a")) r.a = num(j.at("a"));
            if (j.contains("b")) r.b = num(j.at("b"));
            r.r = j.value("r", r.r);
            r.phi = j.value("phi", r.phi);
            if (j.contains("nu0")) r.nu0 = j.at("nu0").get<double>();
            if (j.contains("lambda")) {
                r.re = j.at("lambda").value("re", r.re);
                r.imag = j.at("lambda").value("im", 0.0);
            }
            r.kernel = j.value("kernel", r.kernel);
            r.n_max = j.value("n_max", 0);
            r.zeta = j.value("zeta", r.zeta);
        } catch (const json::exception& e) {
            throw ParseError(std::string("run: ") + e.what());
        }
        return r;
    }
};

struct Output {
    json result;
    std::string csv;  // used when format == csv
    int status = 0;
};

SpectrumOptions spectrum_options(const Run& r) {
    SpectrumOptions o;
    if (r.mode == "auto") o.mode = SpectrumOptions::Mode::Auto;
    else if (r.mode == "real") o.mode = SpectrumOptions::Mode::RealOnly;
    else if (r.mode == "complex") o.mode = SpectrumOptions::Mode::Complex;
    else throw ConfigError("mode must be auto, real or complex");
    o.threads = r.threads;
    return o;
}

PotentialSpec potential(const Run& r) {
    if (r.potential.is_null()) throw ConfigError("--potential is required");
    return potential_from_json(r.potential);
}

std::string csv_eigs(const std::vector<Eigenvalue>& ev) {
    std::ostringstream s;
    s.precision(17);
    s << "problem,k,re,im,multiplicity,index,residual\n";
    for (auto& e : ev)
        s << problem_name(e.problem) << ',' << e.k << ',' << e.lambda.real() << ',' << e.lambda.imag() << ','
          << e.multiplicity << ',' << e.index << ',' << e.residual << '\n';
    return s.str();
}

Output cmd_eigs(const Run& r) {
    auto m = make_model(potential(r), r.tol);
    auto o = spectrum_options(r);
    SpectralRegion reg{r.lo, r.hi, r.im};
    std::vector<Eigenvalue> ev;
    const std::string& p = r.problem;
    if (p == "dirichlet") ev = dirichlet_spectrum(m, reg, o);
    else if (p == "neumann") ev = neumann_spectrum(m, reg, o);
    else if (p == "mixed-dn") ev = boundary_spectrum(m, Problem::MixedDN, reg, o);
    else if (p == "mixed-nd") ev = boundary_spectrum(m, Problem::MixedND, reg, o);
    else if (p == "two-periodic") ev = two_periodic_spectrum(m, reg, o);
    else if (p == "periodic") ev = quasi_spectrum(m, 0.0, reg, o);
    else if (p == "antiperiodic") ev = quasi_spectrum(m, pi, reg, o);
    else if (p == "quasi") ev = quasi_spectrum(m, r.k, reg, o);
    else throw ConfigError("unknown problem '" + p + "'");
    std::stable_sort(ev.begin(), ev.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    Output out;
    json arr = json::array();
    for (auto& e : ev) arr.push_back(to_json(e));
    out.result = {{"eigenvalues", arr}};
    out.csv = csv_eigs(ev);
    return out;
}

Output cmd_bands(const Run& r) {
    auto m = make_model(potential(r), r.tol);
    auto o = spectrum_options(r);
    SpectralRegion reg{r.lo, r.hi, r.im};
    Output out;
    auto bs = assemble_bands(m, reg, o);
    out.result = {{"structure", to_json(bs)}};
    std::ostringstream s;
    s.precision(17);
    s << "k,band_index,lambda\n";
    if (bs.refused) {
        std::cerr << "warning: bands refused (" << bs.reason << "); raw zeros emitted\n";
        s.str("");
        s << csv_eigs(bs.raw);
    } else {
        std::vector<double> ks;
        for (int i = 0; i < r.points; ++i) ks.push_back(pi * i / std::max(1, r.points - 1));
        auto tab = band_functions(m, ks, reg, o);
        json rows = json::array();
        for (std::size_t j = 0; j < tab.ks.size(); ++j)
            for (std::size_t n = 0; n < tab.values[j].size(); ++n) {
                s << tab.ks[j] << ',' << n << ',' << tab.values[j][n] << '\n';
                rows.push_back({tab.ks[j], n, tab.values[j][n]});
            }
        out.result["band_functions"] = rows;
        out.result["monotone"] = tab.monotone;
        out.result["crossings"] = tab.crossings;
    }
    out.csv = s.str();
    return out;
}

Output cmd_discriminant(const Run& r) {
    auto spec = potential(r);
    if (r.points < 2) throw ConfigError("points must be at least 2");
    Output out;
    std::ostringstream s;
    s.precision(17);
    s << "lambda_re,lambda_im,delta_re,delta_im,ddelta_re,ddelta_im\n";
    json rows = json::array();
    std::vector<DiscriminantSample> smp(r.points);
    parallel_for(
        r.points,
        [&](std::size_t i) {
            cplx l(r.lo + (r.hi - r.lo) * i / (r.points - 1), r.im);
            smp[i] = discriminant(spec, l, r.tol);
        },
        r.threads);
    for (auto& d : smp) {
        s << d.lambda.real() << ',' << d.lambda.imag() << ',' << d.delta.real() << ',' << d.delta.imag() << ','
          << d.ddelta.real() << ',' << d.ddelta.imag() << '\n';
        rows.push_back({d.lambda.real(), d.lambda.imag(), d.delta.real(), d.delta.imag()});
    }
    out.result = {{"columns", {"lambda_re", "lambda_im", "delta_re", "delta_im"}}, {"rows", rows}};
    out.csv = s.str();
    return out;
}

Output cmd_certify(const Run& r) {
    auto spec = potential(r);
    RealityCertificate c;
    if (r.cert == "halfplane") c = certify_halfplane(spec, r.a, r.nu0);
    else if (r.cert == "strip") c = certify_strip(spec, r.a, r.b, r.r, r.phi);
    else if (r.cert == "derivative") c = certify_derivative_strip(spec, r.a, r.b);
    else if (r.cert == "interval") c = certify_interval(spec, r.a);
    else throw ConfigError("unknown certificate '" + r.cert + "'");
    Output out;
    out.result = {{"certificate", to_json(c)}};
    std::ostringstream s;
    s.precision(17);
    s << "kind,certified,threshold,xi,margin\n"
      << kind_name(c.kind) << ',' << c.certified << ',' << c.threshold << ',' << c.xi_value << ',' << c.margin << '\n';
    out.csv = s.str();
    return out;
}

Output cmd_resolvent(const Run& r) {
    auto spec = potential(r);
    cplx l(r.re, r.imag);
    std::unique_ptr<GreenKernel> K;
    if (r.kernel == "quasi") K = green_quasi(spec, r.k, l, 2000, r.tol);
    else if (r.kernel == "dirichlet") K = green_dirichlet(spec, l, 2000, r.tol);
    else throw ConfigError("kernel must be quasi or dirichlet");
    auto f = [](double x) { return cplx(1 + x * x, 0) + std::cos(2 * pi * x); };
    double res = resolvent_residual(*K, f);
    Output out;
    out.result = {{"residual", res}, {"kernel_sup", kernel_sup(*K)}, {"forcing", "1 + x^2 + cos(2 pi x)"}};
    std::ostringstream s;
    s.precision(17);
    s << "kernel,lambda_re,lambda_im,residual\n" << r.kernel << ',' << r.re << ',' << r.imag << ',' << res << '\n';
    out.csv = s.str();
    return out;
}

Output cmd_boussinesq(const Run& r) {
    if (r.coeffs.is_null()) throw ConfigError("--coeffs is required");
    auto co = coeffs_from_json(r.coeffs);
    BoussinesqConfig b;
    b.ode.max_steps = r.tol.max_steps;
    Output out;
    std::ostringstream s;
    s.precision(17);
    if (r.sub == "ramifications" || r.sub == "threepoint") {
        double lo = r.lo, hi = r.hi;
        if (r.n_max > 0) {
            lo = alpha_minus(1);
            hi = alpha_plus(r.n_max);
        }
        auto zs = r.sub == "ramifications" ? ramifications(co, lo, hi, b, r.threads)
                                           : three_point_eigenvalues(co, lo, hi, b, r.threads);
        json arr = json::array();
        s << "n,branch,re,im,multiplicity,asymptotic\n";
        for (auto& z : zs) {
            auto j = to_json(z);
            double asym = z.n > 0 ? (r.sub == "ramifications" ? ram_asymptotic(co, z.n) : zeta_asymptotic(co, z.n)) : 0.0;
            j["asymptotic"] = asym;
            arr.push_back(j);
            s << z.n << ',' << z.branch << ',' << z.zeta.real() << ',' << z.zeta.imag() << ',' << z.multiplicity << ','
              << asym << '\n';
        }
        out.result = {{r.sub == "ramifications" ? "ramifications" : "three_point", arr}};
    } else if (r.sub == "reduce") {
        auto red = reduce_to_hill(co, r.zeta, b);
        out.result = {{"lambda", {{"re", red.lambda.real()}, {"im", red.lambda.imag()}}},
                      {"potential", to_json(red.spec)},
                      {"min_abs_psi", red.min_abs_psi}};
        s << "x,v_re,v_im,dv_re,dv_im\n";
        for (std::size_t i = 0; i < red.spec.tab->x.size(); ++i)
            s << red.spec.tab->x[i] << ',' << red.spec.tab->v[i].real() << ',' << red.spec.tab->v[i].imag() << ','
              << red.spec.tab->dv[i].real() << ',' << red.spec.tab->dv[i].imag() << '\n';
    } else {
        throw ConfigError("boussinesq needs ramifications, threepoint or reduce");
    }
    out.csv = s.str();
    return out;
}

Output execute(const Run& r) {
    r.tol.validate();
    if (r.threads < 1) throw ConfigError("threads must be positive");
    if (r.command == "eigs") return cmd_eigs(r);
    if (r.command == "bands") return cmd_bands(r);
    if (r.command == "discriminant") return cmd_discriminant(r);
    if (r.command == "certify") return cmd_certify(r);
    if (r.command == "resolvent-check") return cmd_resolvent(r);
    if (r.command == "boussinesq") return cmd_boussinesq(r);
    throw ConfigError("unknown command '" + r.command + "'");
}

int emit(const Run& r, const Output& out, const std::string& path) {
    std::string text;
    if (r.format == "csv") {
        text = out.csv;
    } else if (r.format == "json") {
        json doc{{"schema_version", schema_version}, {"run", r.to_json()}, {"result", out.result}};
        text = doc.dump(2) + "\n";
    } else {
        throw ConfigError("format must be json or csv");
    }
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream f(path);
        if (!f) throw ConfigError("cannot write " + path);
        f << text;
    }
    return out.status;
}

void parse_range(const std::string& s, double& lo, double& hi) {
    auto c = s.find(':');
    if (c == std::string::npos) throw ConfigError("range must look like lo:hi");
    try {
        lo = std::stod(s.substr(0, c));
        hi = std::stod(s.substr(c + 1));
    } catch (const std::exception&) {
        throw ConfigError("bad range '" + s + "'");
    }
}

int threads_from_env() {
    if (const char* e = std::getenv("HILLBANDS_THREADS")) {
        int n = std::atoi(e);
        if (n > 0) return n;
    }
    return default_threads();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of Hill operators with energy-dependent potentials"};
    app.require_subcommand(1);

    Run run;
    run.threads = threads_from_env();
    std::string pot_path, coeff_path, region, output, replay_path, fixtures = HILLBANDS_FIXTURES;
    bool quick = false;
    auto common = [&](CLI::App* c) {
        c->add_option("--region", region, "spectral interval lo:hi");
        c->add_option("--im", run.im, "half-height of the complex search box (0: automatic)");
        c->add_option("--rel-tol", run.tol.rel_tol, "integrator relative tolerance");
        c->add_option("--abs-tol", run.tol.abs_tol, "integrator absolute tolerance");
        c->add_option("--threads", run.threads, "worker threads (default: HILLBANDS_THREADS or all cores)");
        c->add_option("--format", run.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("-o,--output", output, "output file (default stdout)");
    };

    auto* eigs = app.add_subcommand("eigs", "eigenvalues of one spectral problem");
    eigs->add_option("--potential", pot_path, "potential JSON")->required();
    eigs->add_option("--problem", run.problem,
                     "dirichlet|neumann|mixed-dn|mixed-nd|periodic|antiperiodic|two-periodic|quasi");
    eigs->add_option("--k", run.k, "quasi-momentum for --problem quasi");
    eigs->add_option("--mode", run.mode, "auto|real|complex");
    common(eigs);

    auto* bands = app.add_subcommand("bands", "band edges, gaps and band functions");
    bands->add_option("--potential", pot_path, "potential JSON")->required();
    bands->add_option("--k-points", run.points, "band-function samples in [0, pi]");
    bands->add_option("--mode", run.mode, "auto|real|complex");
    common(bands);

    auto* disc = app.add_subcommand("discriminant", "Delta along a lambda grid");
    disc->add_option("--potential", pot_path, "potential JSON")->required();
    disc->add_option("--points", run.points, "grid points");
    common(disc);

    auto* cert = app.add_subcommand("certify", "reality certificates");
    cert->add_option("--potential", pot_path, "potential JSON")->required();
    std::optional<double> halfplane, interval;
    std::string strip, deriv;
    cert->add_option("--halfplane", halfplane, "half-plane Re lambda > a");
    cert->add_option("--nu0", run.nu0, "half-strip height for the cos family");
    cert->add_option("--strip", strip, "a:b strip certificate (with --radius, --phi)");
    cert->add_option("--radius", run.r, "strip radius r");
    cert->add_option("--phi", run.phi, "Poisson constant");
    cert->add_option("--derivative", deriv, "lo:hi derivative-strip certificate");
    cert->add_option("--interval", interval, "smallest certified threshold at or above lo");
    common(cert);

    auto* res = app.add_subcommand("resolvent-check", "Green kernel residual");
    res->add_option("--potential", pot_path, "potential JSON")->required();
    res->add_option("--lambda-re", run.re, "Re lambda");
    res->add_option("--lambda-im", run.imag, "Im lambda");
    res->add_option("--k", run.k, "quasi-momentum");
    res->add_option("--kernel", run.kernel, "quasi|dirichlet");
    common(res);

    auto* bq = app.add_subcommand("boussinesq", "third-order Lax operator");
    bq->add_option("action", run.sub, "ramifications|threepoint|reduce")
        ->required()
        ->check(CLI::IsMember({"ramifications", "threepoint", "reduce"}));
    bq->add_option("--coeffs", coeff_path, "coefficients JSON {p, q}")->required();
    bq->add_option("--n-max", run.n_max, "windows 1..n");
    bq->add_option("--zeta", run.zeta, "spectral parameter for reduce");
    common(bq);

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_flag("--quick", quick, "reduced ranges and draw counts");
    verify->add_option("--fixtures", fixtures, "fixture directory");
    verify->add_option("--threads", run.threads, "worker threads");

    auto* rep = app.add_subcommand("replay", "repeat the run recorded in a JSON result");
    rep->add_option("file", replay_path, "JSON result")->required();
    rep->add_option("-o,--output", output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (verify->parsed()) {
            acceptance::Options o;
            o.fixtures = fixtures;
            o.quick = quick;
            o.threads = run.threads;
            auto results = acceptance::run_all(o, [](const acceptance::Result& r) {
                std::printf("%s\n", acceptance::format(r).c_str());
                std::fflush(stdout);
            });
            int failed = 0;
            for (auto& r : results) failed += !r.pass;
            std::printf("%d/%zu criteria passed%s\n", int(results.size()) - failed, results.size(),
                        quick ? " (quick)" : "");
            return failed ? 1 : 0;
        }
        if (rep->parsed()) {
            auto doc = load_json_file(replay_path);
            if (!doc.contains("run")) throw ParseError(replay_path + ": no 'run' record");
            Run r = Run::from_json(doc.at("run"));
            return emit(r, execute(r), output);
        }
        for (auto* c : {eigs, bands, disc, cert, res, bq})
            if (c->parsed()) run.command = c->get_name();
        if (!pot_path.empty()) {
            run.potential = load_json_file(pot_path);
            potential_from_json(run.potential, pot_path);  // validate early for a clear diagnostic
        }
        if (!coeff_path.empty()) {
            run.coeffs = load_json_file(coeff_path);
            coeffs_from_json(run.coeffs, coeff_path);
        }
        if (!region.empty()) parse_range(region, run.lo, run.hi);
        if (cert->parsed()) {
            int given = !!halfplane + !strip.empty() + !deriv.empty() + !!interval;
            if (given > 1) throw ConfigError("choose one of --halfplane, --strip, --derivative, --interval");
            if (halfplane) {
                run.cert = "halfplane";
                run.a = *halfplane;
            } else if (!strip.empty()) {
                run.cert = "strip";
                parse_range(strip, run.a, run.b);
            } else if (!deriv.empty()) {
                run.cert = "derivative";
                parse_range(deriv, run.a, run.b);
            } else {
                run.cert = "interval";
                run.a = interval.value_or(0.0);
            }
        }
        return emit(run, execute(run), output);
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
