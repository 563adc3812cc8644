#include "qpair/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "qpair/postselect.hpp"

namespace qpair {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t cycle_seed(std::uint64_t master, std::uint64_t cycle) {
    return splitmix64(master ^ splitmix64(cycle + 1));
}

/// Uniform double in [0, 1), platform-stable given the engine stream.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& rng, double rate) {
    return -std::log1p(-uniform01(rng)) / rate;
}

/// Squared-amplitude weights of the n_exc = 0, 1, 2 sectors.
std::array<double, 3> sector_weights(const SourceState& state) {
    std::array<double, 3> w{0.0, 0.0, 0.0};
    for (int i1 = 0; i1 < kLevels; ++i1) {
        for (int i2 = 0; i2 < kLevels; ++i2) {
            const int n = (i1 == 2 ? 1 : 0) + (i2 == 2 ? 1 : 0);
            w[n] += std::norm(state(basis_index(i1, i2)));
        }
    }
    return w;
}

/// Solves S(tau) = u for the survival function of a unit-normalized state,
/// S(tau) = w0 + w1 e^{-g tau} + w2 e^{-2 g tau}, by bracketed bisection.
/// Returns infinity when u <= w0 (the no-further-jump branch).
double invert_survival(const std::array<double, 3>& w, double g, double u) {
    if (u <= w[0] + 1e-15) return std::numeric_limits<double>::infinity();
    const auto survival = [&](double tau) {
        return w[0] + w[1] * std::exp(-g * tau) + w[2] * std::exp(-2.0 * g * tau);
    };
    double lo = 0.0, hi = 1.0 / g;
    for (int i = 0; i < 200 && survival(hi) > u; ++i) hi *= 2.0;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (survival(mid) > u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct ConeGeometry {
    Eigen::Vector3d axis;
    double cos_half_angle;

    bool contains(const Eigen::Vector3d& dir) const {
        return axis.dot(dir) >= cos_half_angle;
    }
};

double half_angle_from_solid_angle(double domega) {
    return std::acos(1.0 - domega / kTwoPi);
}

/// Uniform direction within the cone, returned as spherical coordinates.
std::pair<double, double> sample_in_cone(std::mt19937_64& rng,
                                         const ConeGeometry& cone) {
    const double c = cone.cos_half_angle +
                     uniform01(rng) * (1.0 - cone.cos_half_angle);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double beta = kTwoPi * uniform01(rng);
    const Eigen::Vector3d local(s * std::cos(beta), s * std::sin(beta), c);
    // rotate local z onto the cone axis
    Eigen::Vector3d dir;
    const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
    if (cone.axis.dot(z) > 1.0 - 1e-14) {
        dir = local;
    } else if (cone.axis.dot(z) < -1.0 + 1e-14) {
        dir = Eigen::Vector3d(local.x(), -local.y(), -local.z());
    } else {
        dir = Eigen::Quaterniond::FromTwoVectors(z, cone.axis) * local;
    }
    const double theta = std::acos(std::clamp(dir.z(), -1.0, 1.0));
    const double phi = std::atan2(dir.y(), dir.x());
    return {theta, phi};
}

}  // namespace

TrajectoryResult sample_trajectory(const SourcePairConfig& cfg,
                                   std::uint64_t seed, double t_max) {
    if (!(t_max > 0.0)) throw ConfigError("sample_trajectory: t_max must be > 0");
    cfg.validate();
    std::mt19937_64 rng(splitmix64(seed));
    const double g = cfg.gamma_total();
    const double envelope = 6.0 * std::max(cfg.gamma0, cfg.gamma1) / kPi;

    TrajectoryResult result;
    result.rng_seed = seed;
    SourceState state = cfg.initial_state;
    double t = 0.0;
    while (true) {
        const auto w = sector_weights(state);
        if (w[1] + w[2] < 1e-15) break;  // nothing left to emit
        const double tau = invert_survival(w, g, uniform01(rng));
        if (t + tau >= t_max) {
            state = apply_ucond(t_max - t, cfg, state).normalized();
            break;
        }
        t += tau;
        state = apply_ucond(tau, cfg, state).normalized();
        // jump channel by rejection against the constant envelope
        EmissionGeometry geom;
        Polarization pol = Polarization::Plus;
        while (true) {
            const double ct = 2.0 * uniform01(rng) - 1.0;
            const double phi = kTwoPi * uniform01(rng);
            geom = geometry_from_spherical(std::acos(ct), phi);
            pol = uniform01(rng) < 0.5 ? Polarization::Plus : Polarization::Minus;
            const double density =
                (reset_operator({geom, pol}, cfg) * state).squaredNorm();
            if (density > envelope) {
                throw EnvelopeViolation(
                    "sample_trajectory: proposal density " +
                    std::to_string(density) + " exceeds envelope " +
                    std::to_string(envelope));
            }
            if (uniform01(rng) * envelope < density) break;
        }
        state = (reset_operator({geom, pol}, cfg) * state).normalized();
        result.events.push_back({t, geom, pol, state});
    }
    result.final_state = state;
    return result;
}

namespace {

struct Cones {
    ConeGeometry alice;
    ConeGeometry bob;
};

Cones make_cones(const SourcePairConfig& cfg, const CollectionWindow& win) {
    win.validate();
    Cones cones;
    cones.alice = {Eigen::Vector3d::UnitZ(),
                   std::cos(half_angle_from_solid_angle(win.domega_a))};
    const EmissionGeometry bob_center =
        geometry_from_spherical(win.theta_b, win.phi_b);
    cones.bob = {bob_center.direction,
                 std::cos(half_angle_from_solid_angle(win.domega_b))};
    const double res_a = condition_residual(cfg.k0d, 0.0, Parity::Plus);
    const double res_b =
        condition_residual(cfg.k0d, bob_center.cos_alpha(), Parity::Minus);
    if (res_a > 1e-9 || res_b > 1e-9) {
        throw ConfigError(
            "cone centers must satisfy the placement conditions "
            "(residuals " +
            std::to_string(res_a) + ", " + std::to_string(res_b) + ")");
    }
    return cones;
}

CycleRecord classify_cycle(long cycle, const TrajectoryResult& traj,
                           const Cones& cones) {
    CycleRecord rec;
    rec.cycle = cycle;
    rec.final_state = traj.final_state;
    for (const EmissionEvent& ev : traj.events) {
        char det = 'n';
        if (cones.alice.contains(ev.geometry.direction)) {
            det = 'A';
        } else if (cones.bob.contains(ev.geometry.direction)) {
            det = 'B';
        }
        rec.events.push_back({ev.time, ev.geometry.theta, ev.geometry.phi,
                              ev.polarization, det});
    }
    return rec;
}

}  // namespace

CampaignResult run_campaign(const SourcePairConfig& cfg,
                            const CollectionWindow& win, long n_cycles,
                            std::uint64_t seed, int n_threads,
                            bool keep_records) {
    if (n_cycles <= 0) throw ConfigError("run_campaign: n_cycles must be > 0");
    const Cones cones = make_cones(cfg, win);
    const double t_max = 50.0 / cfg.gamma_total();

    std::vector<CycleRecord> records(static_cast<std::size_t>(n_cycles));
    const int workers = std::max(1, n_threads);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&](long begin, long end) {
        try {
            for (long c = begin; c < end; ++c) {
                const TrajectoryResult traj =
                    sample_trajectory(cfg, cycle_seed(seed, c), t_max);
                records[static_cast<std::size_t>(c)] =
                    classify_cycle(c, traj, cones);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0, n_cycles);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (n_cycles + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long begin = w * chunk;
            const long end = std::min(n_cycles, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    CampaignResult result;
    result.stats.n_cycles = n_cycles;
    for (const CycleRecord& rec : records) {
        int n_a = 0, n_b = 0;
        const CycleEvent* click_a = nullptr;
        const CycleEvent* click_b = nullptr;
        for (const CycleEvent& ev : rec.events) {
            if (ev.detector == 'A') { ++n_a; click_a = &ev; }
            if (ev.detector == 'B') { ++n_b; click_b = &ev; }
        }
        if (n_a == 1 && n_b == 1) {
            ++result.stats.n_pairs_in_cones;
            const int idx =
                (click_b->polarization == Polarization::Plus ? 0 : 2) +
                (click_a->polarization == Polarization::Plus ? 0 : 1);
            ++result.stats.pol_counts[static_cast<std::size_t>(idx)];
        }
    }
    const double p = static_cast<double>(result.stats.n_pairs_in_cones) /
                     static_cast<double>(n_cycles);
    result.stats.estimated_p = p;
    result.stats.std_error =
        std::sqrt(p * (1.0 - p) / static_cast<double>(n_cycles));
    if (keep_records) result.records = std::move(records);
    return result;
}

CoincidenceStats estimate_pair_statistics(const SourcePairConfig& cfg,
                                          const CollectionWindow& win,
                                          long n_cycles, std::uint64_t seed,
                                          int n_threads) {
    return run_campaign(cfg, win, n_cycles, seed, n_threads, false).stats;
}

std::vector<ConditionedSample> sample_cone_coincidences(
    const SourcePairConfig& cfg, const CollectionWindow& win, long n_samples,
    std::uint64_t seed) {
    if (n_samples <= 0) {
        throw ConfigError("sample_cone_coincidences: n_samples must be > 0");
    }
    cfg.validate();
    if (std::abs(cfg.initial_state(basis_index(2, 2))) < 1e-14) {
        throw ZeroAmplitudeError(
            "sample_cone_coincidences: initial state has no |22> component");
    }
    const Cones cones = make_cones(cfg, win);
    const double g = cfg.gamma_total();
    const double gmax = std::max(cfg.gamma0, cfg.gamma1);
    const double per_amp = 6.0 * gmax / kPi;  // ||R|| bound, squared
    const double envelope = 8.0 * per_amp * per_amp;  // 2 orders x 4 channels

    std::mt19937_64 rng(splitmix64(seed ^ 0x5151c0e5ULL));
    std::vector<ConditionedSample> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    while (static_cast<long>(samples.size()) < n_samples) {
        const auto [theta_a, phi_a] = sample_in_cone(rng, cones.alice);
        const auto [theta_b, phi_b] = sample_in_cone(rng, cones.bob);
        const EmissionGeometry ga = geometry_from_spherical(theta_a, phi_a);
        const EmissionGeometry gb = geometry_from_spherical(theta_b, phi_b);
        // spatial weight at t1 = t2 = 0; the time law factorizes
        const TwoPhotonRecord ab = two_photon_amplitudes(ga, gb, 0.0, 0.0, cfg);
        const TwoPhotonRecord ba = two_photon_amplitudes(gb, ga, 0.0, 0.0, cfg);
        const double w_ab = ab.total_density();
        const double w_ba = ba.total_density();
        if (w_ab + w_ba > envelope) {
            throw EnvelopeViolation(
                "sample_cone_coincidences: density exceeds envelope");
        }
        if (uniform01(rng) * envelope >= w_ab + w_ba) continue;

        const bool alice_first = uniform01(rng) * (w_ab + w_ba) < w_ab;
        const TwoPhotonRecord& rec = alice_first ? ab : ba;
        // polarization channel within the chosen ordering
        const double total = rec.total_density();
        double pick = uniform01(rng) * total;
        int a = 0, b = 0;
        for (int i = 0; i < 2 && pick >= 0.0; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double d = rec.amplitudes[i][j].squaredNorm();
                if (pick < d) { a = i; b = j; pick = -1.0; break; }
                pick -= d;
            }
        }
        ConditionedSample s;
        const Polarization first = a == 0 ? Polarization::Plus : Polarization::Minus;
        const Polarization second = b == 0 ? Polarization::Plus : Polarization::Minus;
        s.pol_a = alice_first ? first : second;
        s.pol_b = alice_first ? second : first;
        s.t1 = exponential(rng, 2.0 * g);
        s.t2 = s.t1 + exponential(rng, g);
        s.theta_a = theta_a;
        s.phi_a = phi_a;
        s.theta_b = theta_b;
        s.phi_b = phi_b;
        s.post_state = rec.amplitudes[a][b].normalized();
        samples.push_back(std::move(s));
    }
    return samples;
}

std::vector<DetectorClick> clicks_from_records(
    const std::vector<CycleRecord>& records, double t_rep) {
    std::vector<DetectorClick> clicks;
    for (const CycleRecord& rec : records) {
        for (const CycleEvent& ev : rec.events) {
            if (ev.detector == 'A' || ev.detector == 'B') {
                clicks.push_back({rec.cycle, ev.detector,
                                  static_cast<double>(rec.cycle) * t_rep + ev.time});
            }
        }
    }
    return clicks;
}

WindowReport coincidence_window_analysis(const std::vector<DetectorClick>& clicks,
                                         double delta_t, double t_rep,
                                         const SourcePairConfig& cfg) {
    WindowReport report;
    const double lifetime = 1.0 / cfg.gamma_total();
    if (delta_t < 10.0 * lifetime) {
        report.warnings.push_back(
            "delta_t is not large compared to 1/(gamma0+gamma1); "
            "coincidence efficiency will suffer");
    }
    if (delta_t > 0.1 * t_rep) {
        report.warnings.push_back(
            "delta_t is not small compared to the cycle period; windows "
            "may bridge cycles");
    }
    for (const DetectorClick& a : clicks) {
        if (a.detector != 'A') continue;
        for (const DetectorClick& b : clicks) {
            if (b.detector != 'B') continue;
            if (std::abs(a.abs_time - b.abs_time) <= delta_t) {
                (a.cycle == b.cycle ? report.paired : report.accidental) += 1;
            }
        }
    }
    return report;
}

void write_event_csv(std::ostream& os, const std::vector<CycleRecord>& records) {
    os << "cycle_index,time,theta,phi,polarization,detector\n";
    char buf[256];
    for (const CycleRecord& rec : records) {
        for (const CycleEvent& ev : rec.events) {
            std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%c,%c\n",
                          rec.cycle, ev.time, ev.theta, ev.phi,
                          ev.polarization == Polarization::Plus ? '+' : '-',
                          ev.detector);
            os << buf;
        }
    }
}

std::vector<CycleRecord> read_event_csv(std::istream& is) {
    std::vector<CycleRecord> records;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("cycle_index", 0) == 0) {
            continue;
        }
        std::stringstream row(line);
        std::string field;
        CycleEvent ev;
        long cycle = 0;
        std::getline(row, field, ','); cycle = std::stol(field);
        std::getline(row, field, ','); ev.time = std::stod(field);
        std::getline(row, field, ','); ev.theta = std::stod(field);
        std::getline(row, field, ','); ev.phi = std::stod(field);
        std::getline(row, field, ',');
        ev.polarization = field == "+" ? Polarization::Plus : Polarization::Minus;
        std::getline(row, field, ',');
        ev.detector = field.empty() ? 'n' : field[0];
        if (records.empty() || records.back().cycle != cycle) {
            CycleRecord rec;
            rec.cycle = cycle;
            rec.final_state = SourceState::Zero();
            records.push_back(rec);
        }
        records.back().events.push_back(ev);
    }
    return records;
}

}  // namespace qpair
