#include "mcrx/simulator.hpp"

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace mcrx {

namespace {

using Normal = boost::random::normal_distribution<double>;

constexpr double kCiZ = 1.959963984540054;

double rx_centre(const SystemConfig& s) { return s.distance; }

// Signed clearance to the receiver surface (<= 0 means inside).
double clearance(const double* p, int dims, const SystemConfig& s)
{
    if (dims == 1) {
        const double x = p[0];
        return std::max(s.distance - s.rx_radius - x, x - (s.distance + s.rx_radius));
    }
    const double dx = p[0] - rx_centre(s);
    return std::sqrt(dx * dx + p[1] * p[1] + p[2] * p[2]) - s.rx_radius;
}

bool inside(const double* p, int dims, const SystemConfig& s)
{
    if (dims == 1) return std::abs(p[0] - rx_centre(s)) <= s.rx_radius;
    const double dx = p[0] - rx_centre(s);
    return dx * dx + p[1] * p[1] + p[2] * p[2] <= s.rx_radius * s.rx_radius;
}

bool segment_hits(const double* p0, const double* p1, int dims, const SystemConfig& s)
{
    const double r = s.rx_radius;
    if (dims == 1) {
        const double lo = std::min(p0[0], p1[0]);
        const double hi = std::max(p0[0], p1[0]);
        return hi >= s.distance - r && lo <= s.distance + r;
    }
    // |p0 + u (p1 - p0) - c|^2 = r^2 for u in [0, 1].
    const std::array<double, 3> w{p0[0] - rx_centre(s), p0[1], p0[2]};
    const std::array<double, 3> v{p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]};
    const double c = w[0] * w[0] + w[1] * w[1] + w[2] * w[2] - r * r;
    if (c <= 0.0) return true;
    const double a = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    if (a == 0.0) return false;
    const double b = 2.0 * (w[0] * v[0] + w[1] * v[1] + w[2] * v[2]);
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return false;
    // Start is outside (c > 0), so both roots share a sign; the nearer one
    // is the entry point.
    const double u = (-b - std::sqrt(disc)) / (2.0 * a);
    return u >= 0.0 && u <= 1.0;
}

double step_sigma(const SimConfig& cfg)
{
    return std::sqrt(2.0 * cfg.system.diff_coef * cfg.sim_time_step);
}

// How many steps of per-axis spread `sigma` can be merged from `gap` clearance.
// By Levy's maximal inequality the walk leaves the ball of radius `gap` within
// k steps with probability at most 2 P(|X_k| >= gap), i.e. 2 P(chi_dims >= z).
std::uint64_t mergeable_steps(double gap, int dims, double sigma)
{
    if (gap <= 0.0) return 0;
    const double reach = gap / (far_field_sigmas(dims) * sigma);
    const double steps = reach * reach;
    if (steps >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())) return std::numeric_limits<std::uint32_t>::max();
    return static_cast<std::uint64_t>(steps);
}

void walk_absorbing(const SimConfig& cfg, Rng& rng, std::vector<std::uint32_t>& arrivals)
{
    const SystemConfig& s = cfg.system;
    const int dims = s.dims();
    const double sigma = step_sigma(cfg);
    const std::uint64_t per_sample = cfg.steps_per_sample();
    const std::uint64_t total = per_sample * s.sample_count;
    Normal normal(0.0, 1.0);

    std::array<double, 3> pos{0.0, 0.0, 0.0};
    std::array<double, 3> next{0.0, 0.0, 0.0};
    std::uint64_t done = 0;
    while (done < total) {
        const std::uint64_t merge = std::min(mergeable_steps(clearance(pos.data(), dims, s), dims, sigma), total - done);
        if (merge >= 2) {
            const double spread = sigma * std::sqrt(static_cast<double>(merge));
            for (int k = 0; k < dims; ++k) pos[k] += spread * normal(rng);
            done += merge;
            continue;
        }
        for (int k = 0; k < dims; ++k) next[k] = pos[k] + sigma * normal(rng);
        ++done;
        if (segment_hits(pos.data(), next.data(), dims, s)) {
            // Absorbed during step `done`; first counted at the sample closing that step.
            arrivals[(done - 1) / per_sample] += 1;
            return;
        }
        pos = next;
    }
}

void walk_passive(const SimConfig& cfg, Rng& rng, std::vector<std::uint32_t>& counts)
{
    const SystemConfig& s = cfg.system;
    const int dims = s.dims();
    const double sigma = std::sqrt(2.0 * s.diff_coef * s.sampling_period);
    const std::uint64_t total = s.sample_count;
    Normal normal(0.0, 1.0);

    std::array<double, 3> pos{0.0, 0.0, 0.0};
    std::uint64_t done = 0;
    while (done < total) {
        const std::uint64_t merge = std::min(mergeable_steps(clearance(pos.data(), dims, s), dims, sigma), total - done);
        const std::uint64_t jump = merge >= 2 ? merge : 1;
        const double spread = sigma * std::sqrt(static_cast<double>(jump));
        for (int k = 0; k < dims; ++k) pos[k] += spread * normal(rng);
        done += jump;
        if (inside(pos.data(), dims, s)) counts[done - 1] += 1;
    }
}

std::vector<std::uint32_t> run_fine(const SimConfig& cfg, Rng& rng)
{
    const SystemConfig& s = cfg.system;
    ParticleState state(s.dimension, s.n_released);
    std::vector<std::uint32_t> counts(s.sample_count, 0);
    std::vector<double> prev;
    const std::size_t per_sample = cfg.steps_per_sample();
    for (std::size_t m = 0; m < s.sample_count; ++m) {
        for (std::size_t k = 0; k < per_sample; ++k) {
            if (cfg.rx_model == RxModel::Absorbing) {
                prev = state.coords;
                diffuse_step(state, cfg, rng);
                absorb_crossing(prev, state, cfg);
            } else {
                diffuse_step(state, cfg, rng);
            }
        }
        counts[m] = static_cast<std::uint32_t>(cfg.rx_model == RxModel::Absorbing ? state.absorbed
                                                                                   : count_passive(state, cfg));
    }
    return counts;
}

std::vector<std::uint32_t> run_adaptive(const SimConfig& cfg, Rng& rng)
{
    const SystemConfig& s = cfg.system;
    std::vector<std::uint32_t> counts(s.sample_count, 0);
    if (cfg.rx_model == RxModel::Passive) {
        for (std::uint64_t i = 0; i < s.n_released; ++i) walk_passive(cfg, rng, counts);
        return counts;
    }
    for (std::uint64_t i = 0; i < s.n_released; ++i) walk_absorbing(cfg, rng, counts);
    std::uint32_t running = 0;
    for (auto& c : counts) {
        running += c;
        c = running;
    }
    return counts;
}

} // namespace

void SimConfig::validate() const
{
    system.validate();
    if (system.n_released > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("n_released exceeds the 32-bit count range");
    if (!(sim_time_step > 0.0) || !std::isfinite(sim_time_step))
        throw std::invalid_argument("sim_time_step must be > 0");
    const double ratio = system.sampling_period / sim_time_step;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
        throw std::invalid_argument("sampling_period must be an integer multiple of sim_time_step");
}

std::size_t SimConfig::steps_per_sample() const
{
    return static_cast<std::size_t>(std::round(system.sampling_period / sim_time_step));
}

ParticleState::ParticleState(Dimension dimension, std::size_t count)
    : dims(static_cast<int>(dimension)), coords(count * static_cast<std::size_t>(dims), 0.0), alive(count, 1)
{
}

std::span<const double> ParticleState::position(std::size_t i) const
{
    return std::span<const double>(coords).subspan(i * static_cast<std::size_t>(dims), static_cast<std::size_t>(dims));
}

void diffuse_step(ParticleState& state, const SimConfig& cfg, Rng& rng)
{
    const double sigma = step_sigma(cfg);
    Normal normal(0.0, 1.0);
    const auto dims = static_cast<std::size_t>(state.dims);
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (!state.alive[i]) continue;
        for (std::size_t k = 0; k < dims; ++k) state.coords[i * dims + k] += sigma * normal(rng);
    }
}

std::uint64_t count_passive(const ParticleState& state, const SimConfig& cfg)
{
    std::uint64_t n = 0;
    const auto dims = static_cast<std::size_t>(state.dims);
    for (std::size_t i = 0; i < state.size(); ++i)
        n += inside(&state.coords[i * dims], state.dims, cfg.system) ? 1 : 0;
    return n;
}

bool segment_hits_receiver(std::span<const double> p0, std::span<const double> p1, const SystemConfig& system)
{
    const auto dims = static_cast<std::size_t>(system.dims());
    if (p0.size() != dims || p1.size() != dims)
        throw std::invalid_argument("segment_hits_receiver: coordinate count differs from dimension");
    return segment_hits(p0.data(), p1.data(), system.dims(), system);
}

std::uint64_t absorb_crossing(std::span<const double> prev_coords, ParticleState& state, const SimConfig& cfg)
{
    if (prev_coords.size() != state.coords.size())
        throw std::invalid_argument("absorb_crossing: previous positions do not match state");
    const auto dims = static_cast<std::size_t>(state.dims);
    std::uint64_t newly = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (!state.alive[i]) continue;
        if (segment_hits(&prev_coords[i * dims], &state.coords[i * dims], state.dims, cfg.system)) {
            state.alive[i] = 0;
            ++newly;
        }
    }
    state.absorbed += newly;
    return newly;
}

std::vector<std::uint32_t> run_realization(const SimConfig& cfg, std::uint64_t realization_seed)
{
    cfg.validate();
    Rng rng(realization_seed);
    return cfg.stepping == StepMode::Fine ? run_fine(cfg, rng) : run_adaptive(cfg, rng);
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

EnsembleResult run_ensemble(const SimConfig& cfg, unsigned threads)
{
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const SystemConfig& s = cfg.system;
    const std::size_t samples = s.sample_count;
    const std::size_t reps = s.realizations;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

    // Integer sums are exact, so the reduction is independent of scheduling.
    struct Accumulator {
        std::vector<std::uint64_t> sum, sum_sq;
    };
    std::vector<Accumulator> acc(threads, Accumulator{std::vector<std::uint64_t>(samples, 0),
                                                      std::vector<std::uint64_t>(samples, 0)});
    std::atomic<std::size_t> next{0};
    auto worker = [&](Accumulator& a) {
        for (std::size_t r = next++; r < reps; r = next++) {
            const auto counts = run_realization(cfg, realization_seed(cfg.seed, r));
            for (std::size_t m = 0; m < samples; ++m) {
                a.sum[m] += counts[m];
                a.sum_sq[m] += static_cast<std::uint64_t>(counts[m]) * counts[m];
            }
        }
    };
    if (threads == 1) {
        worker(acc[0]);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, std::ref(acc[i]));
    }

    EnsembleResult out;
    out.sample_times = s.sample_times();
    out.mean_counts.resize(samples);
    out.variance.resize(samples);
    out.ci_halfwidth.resize(samples);
    out.realization_count = reps;
    out.seed = cfg.seed;
    out.rx_model = cfg.rx_model;
    out.dimension = s.dimension;
    out.sampling_period = s.sampling_period;

    const auto n = static_cast<long double>(reps);
    for (std::size_t m = 0; m < samples; ++m) {
        std::uint64_t sum = 0, sum_sq = 0;
        for (const auto& a : acc) {
            sum += a.sum[m];
            sum_sq += a.sum_sq[m];
        }
        const auto total = static_cast<long double>(sum);
        out.mean_counts[m] = static_cast<double>(total / n);
        if (reps > 1) {
            const long double spread = static_cast<long double>(sum_sq) - total * total / n;
            out.variance[m] = static_cast<double>(std::max(spread, 0.0L) / (n - 1.0L));
        }
        out.ci_halfwidth[m] = kCiZ * std::sqrt(out.variance[m] / static_cast<double>(reps));
    }
    out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

SampledObservation to_observation(const EnsembleResult& result)
{
    return SampledObservation{result.sampling_period, result.mean_counts, result.dimension, Provenance::Simulated};
}

TimeSeries to_series(const EnsembleResult& result)
{
    const SignalFamily family = result.rx_model == RxModel::Passive ? SignalFamily::PassiveCir
                                                                    : SignalFamily::AbsorbingCir;
    return TimeSeries(result.sample_times, result.mean_counts, {family, result.dimension, Provenance::Simulated});
}

} // namespace mcrx
