// Command-line driver: entanglement maps, detector-ring reports, pair-state
// dumps, collection-efficiency comparisons and Monte Carlo campaigns, all as
// versioned CSV with '#' metadata headers.
//
// Exit codes: 0 success, 2 config error, 3 numerical-contract violation,
// 4 I/O error.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpair/measures.hpp"
#include "qpair/montecarlo.hpp"
#include "qpair/postselect.hpp"

using namespace qpair;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct RunConfig {
    SourcePairConfig phys;
    double theta_b = 0.0;
    double phi_b = 0.0;
    double domega_a = 0.01;
    double domega_b = 0.01;
    double t1 = 0.0;
    double t2 = 0.0;
    std::uint64_t seed = 1;
    long n_cycles = 10000;
    int grid = 50;
    int n_threads = 4;
    std::string out;  // empty = stdout
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string canonical_config(const RunConfig& rc) {
    std::ostringstream os;
    os << fmt(rc.phys.gamma0) << ',' << fmt(rc.phys.gamma1) << ','
       << fmt(rc.phys.k0d) << ',' << fmt(rc.theta_b) << ',' << fmt(rc.phi_b)
       << ',' << fmt(rc.domega_a) << ',' << fmt(rc.domega_b) << ','
       << fmt(rc.t1) << ',' << fmt(rc.t2) << ',' << rc.seed << ','
       << rc.n_cycles << ',' << rc.grid;
    return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_header(std::ostream& os, const std::string& schema,
                  const RunConfig& rc) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_config(rc))));
    os << "# schema " << schema << " v1\n";
    os << "# config_hash " << hash << "\n";
    os << "# seed " << rc.seed << "\n";
}

void load_json_config(const std::string& path, RunConfig& rc) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open config file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    try {
        rc.phys.gamma0 = j.value("gamma0", rc.phys.gamma0);
        rc.phys.gamma1 = j.value("gamma1", rc.phys.gamma1);
        rc.phys.k0d = j.value("k0d", rc.phys.k0d);
        rc.theta_b = j.value("theta_b", rc.theta_b);
        rc.phi_b = j.value("phi_b", rc.phi_b);
        rc.domega_a = j.value("domega_a", rc.domega_a);
        rc.domega_b = j.value("domega_b", rc.domega_b);
        rc.t1 = j.value("t1", rc.t1);
        rc.t2 = j.value("t2", rc.t2);
        rc.seed = j.value("seed", rc.seed);
        rc.n_cycles = j.value("n_cycles", rc.n_cycles);
        rc.grid = j.value("grid", rc.grid);
        rc.n_threads = j.value("n_threads", rc.n_threads);
        rc.out = j.value("out", rc.out);
    } catch (const json::exception& e) {
        throw ConfigError("bad config value in " + path + ": " + e.what());
    }
}

/// Runs body with the chosen output stream, flushing and checking state.
template <typename Body>
void with_output(const RunConfig& rc, Body&& body) {
    if (rc.out.empty()) {
        body(std::cout);
        std::cout.flush();
        if (!std::cout) {
            throw std::ios_base::failure("write to stdout failed");
        }
        return;
    }
    std::ofstream os(rc.out);
    if (!os) {
        throw std::ios_base::failure("cannot open output file: " + rc.out);
    }
    body(os);
    os.flush();
    if (!os) {
        throw std::ios_base::failure("write failed: " + rc.out);
    }
}

void cmd_ef_map(const RunConfig& rc) {
    if (rc.grid < 2) throw ConfigError("grid resolution must be >= 2");
    with_output(rc, [&](std::ostream& os) {
        write_header(os, "qpair-ef-map", rc);
        os << "theta,phi,ef,concurrence,p\n";
        for (int i = 0; i < rc.grid; ++i) {
            const double theta = i * M_PI / (rc.grid - 1);
            for (int j = 0; j < rc.grid; ++j) {
                const double phi = j * 2.0 * M_PI / (rc.grid - 1);
                const EntanglementReport rep =
                    entanglement_of_formation(analytic_pair_state(theta, phi));
                os << fmt(theta) << ',' << fmt(phi) << ',' << fmt(rep.ef)
                   << ',' << fmt(rep.concurrence) << ',' << fmt(rep.p_mix)
                   << '\n';
            }
        }
    });
}

void cmd_rings(const RunConfig& rc) {
    rc.phys.validate();
    with_output(rc, [&](std::ostream& os) {
        write_header(os, "qpair-rings", rc);
        os << "parity,cos_alpha,residual\n";
        for (Parity parity : {Parity::Plus, Parity::Minus}) {
            for (const DetectorRing& ring :
                 find_detector_rings(rc.phys, parity, 1e-9)) {
                os << (parity == Parity::Plus ? "plus" : "minus") << ','
                   << fmt(ring.cos_alpha) << ',' << fmt(ring.residual) << '\n';
            }
        }
    });
}

void cmd_pair_state(const RunConfig& rc) {
    rc.phys.validate();
    const PairOutcome out = conditional_pair_state(
        geometry_from_spherical(0.0, 0.0),
        geometry_from_spherical(rc.theta_b, rc.phi_b), rc.t1, rc.t2, rc.phys);
    const EntanglementReport rep = entanglement_of_formation(out.pair);
    with_output(rc, [&](std::ostream& os) {
        write_header(os, "qpair-pair-state", rc);
        os << "# concurrence " << fmt(rep.concurrence) << "\n";
        os << "# ef " << fmt(rep.ef) << "\n";
        os << "# prob_density " << fmt(out.prob_density) << "\n";
        os << "# schmidt_residual " << fmt(out.schmidt_residual) << "\n";
        os << "part,label,re,im\n";
        const char* pair_labels[4] = {"B+A+", "B+A-", "B-A+", "B-A-"};
        for (int i = 0; i < 4; ++i) {
            os << "pair," << pair_labels[i] << ',' << fmt(out.pair(i).real())
               << ',' << fmt(out.pair(i).imag()) << '\n';
        }
        for (int i1 = 0; i1 < kLevels; ++i1) {
            for (int i2 = 0; i2 < kLevels; ++i2) {
                const Complex c = out.source(basis_index(i1, i2));
                os << "source," << i1 << i2 << ',' << fmt(c.real()) << ','
                   << fmt(c.imag()) << '\n';
            }
        }
    });
}

void cmd_efficiency(const RunConfig& rc) {
    rc.phys.validate();
    CollectionWindow win;
    win.domega_a = rc.domega_a;
    win.domega_b = rc.domega_b;
    win.theta_b = rc.theta_b;
    win.phi_b = rc.phi_b;
    const double analytic = pair_probability_analytic(rc.phys, win);
    const double numeric = pair_probability_numeric(rc.phys, win);
    const double rel =
        analytic != 0.0 ? std::abs(numeric - analytic) / analytic : 0.0;
    CoincidenceStats stats;
    if (rc.n_cycles > 0) {
        stats = estimate_pair_statistics(rc.phys, win, rc.n_cycles, rc.seed,
                                         rc.n_threads);
    }
    with_output(rc, [&](std::ostream& os) {
        write_header(os, "qpair-efficiency", rc);
        os << "analytic,numeric,rel_error,mc_estimate,mc_std_error,"
              "n_pairs,n_cycles\n";
        os << fmt(analytic) << ',' << fmt(numeric) << ',' << fmt(rel) << ','
           << fmt(stats.estimated_p) << ',' << fmt(stats.std_error) << ','
           << stats.n_pairs_in_cones << ',' << stats.n_cycles << '\n';
    });
}

void cmd_simulate(const RunConfig& rc) {
    rc.phys.validate();
    if (rc.n_cycles <= 0) throw ConfigError("n_cycles must be > 0");
    CollectionWindow win;
    win.domega_a = rc.domega_a;
    win.domega_b = rc.domega_b;
    win.theta_b = rc.theta_b;
    win.phi_b = rc.phi_b;
    const CampaignResult res = run_campaign(rc.phys, win, rc.n_cycles, rc.seed,
                                            rc.n_threads, true);
    with_output(rc, [&](std::ostream& os) {
        write_header(os, "qpair-simulate", rc);
        os << "# n_cycles " << res.stats.n_cycles << "\n";
        os << "# n_pairs_in_cones " << res.stats.n_pairs_in_cones << "\n";
        os << "# pol_counts " << res.stats.pol_counts[0] << ' '
           << res.stats.pol_counts[1] << ' ' << res.stats.pol_counts[2] << ' '
           << res.stats.pol_counts[3] << "\n";
        os << "# estimated_p " << fmt(res.stats.estimated_p) << "\n";
        os << "# std_error " << fmt(res.stats.std_error) << "\n";
        write_event_csv(os, res.records);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two distant dipole sources: entangled photon-pair toolkit"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string config_path;
    // Parsed flag values are staged separately so file values only apply
    // where no flag was given (flags win over the config file).
    RunConfig flags = rc;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", flags.out, "output path (default stdout)");
    app.add_option("--seed", flags.seed, "RNG seed");
    app.add_option("--gamma0", flags.phys.gamma0, "decay rate of 2-0");
    app.add_option("--gamma1", flags.phys.gamma1, "decay rate of 2-1");
    app.add_option("--k0d", flags.phys.k0d, "wavenumber times separation");
    app.add_option("--theta-b", flags.theta_b, "Bob's polar angle");
    app.add_option("--phi-b", flags.phi_b, "Bob's azimuth");
    app.add_option("--n-cycles", flags.n_cycles, "Monte Carlo cycles");
    app.add_option("--grid", flags.grid, "grid resolution per axis");
    app.add_option("--domega-a", flags.domega_a, "Alice solid angle (sr)");
    app.add_option("--domega-b", flags.domega_b, "Bob solid angle (sr)");
    app.add_option("--t1", flags.t1, "first detection time");
    app.add_option("--t2", flags.t2, "second detection time");
    app.add_option("--threads", flags.n_threads, "worker threads");

    auto* sub_ef = app.add_subcommand("ef-map", "entanglement over angles");
    auto* sub_rings = app.add_subcommand("rings", "detector placement rings");
    auto* sub_pair = app.add_subcommand("pair-state", "postselected state");
    auto* sub_eff = app.add_subcommand("efficiency", "pair probability table");
    auto* sub_sim = app.add_subcommand("simulate", "Monte Carlo campaign");
    for (CLI::App* sub : {sub_ef, sub_rings, sub_pair, sub_eff, sub_sim}) {
        sub->fallthrough();  // global flags may follow the subcommand
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (!config_path.empty()) load_json_config(config_path, rc);
        if (app.count("--out")) rc.out = flags.out;
        if (app.count("--seed")) rc.seed = flags.seed;
        if (app.count("--gamma0")) rc.phys.gamma0 = flags.phys.gamma0;
        if (app.count("--gamma1")) rc.phys.gamma1 = flags.phys.gamma1;
        if (app.count("--k0d")) rc.phys.k0d = flags.phys.k0d;
        if (app.count("--theta-b")) rc.theta_b = flags.theta_b;
        if (app.count("--phi-b")) rc.phi_b = flags.phi_b;
        if (app.count("--n-cycles")) rc.n_cycles = flags.n_cycles;
        if (app.count("--grid")) rc.grid = flags.grid;
        if (app.count("--domega-a")) rc.domega_a = flags.domega_a;
        if (app.count("--domega-b")) rc.domega_b = flags.domega_b;
        if (app.count("--t1")) rc.t1 = flags.t1;
        if (app.count("--t2")) rc.t2 = flags.t2;
        if (app.count("--threads")) rc.n_threads = flags.n_threads;

        if (sub_ef->parsed()) cmd_ef_map(rc);
        if (sub_rings->parsed()) cmd_rings(rc);
        if (sub_pair->parsed()) cmd_pair_state(rc);
        if (sub_eff->parsed()) cmd_efficiency(rc);
        if (sub_sim->parsed()) cmd_simulate(rc);
    } catch (const ConfigError& e) {
        std::cerr << "error,config," << e.what() << "\n";
        return kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error,io," << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error,numerical," << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error,internal," << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
