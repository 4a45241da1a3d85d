// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "core/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "core/error.hpp"
#include "core/mathutil.hpp"

namespace mtcap {

std::string to_string(InterferenceMode mode) {
    return mode == InterferenceMode::iid ? "iid" : "fixed";
}

InterferenceMode interference_mode_from_string(const std::string& name) {
    if (name == "iid") return InterferenceMode::iid;
    if (name == "fixed") return InterferenceMode::fixed_positions;
    throw_config("interference mode must be \"iid\" or \"fixed\", got \"" + name + "\"");
}

double resolve_window(const NetworkConfig& config, const McOptions& opts) {
    if (opts.r_sim > 0.0) return std::max(1.0, opts.r_sim);
    return truncation_radius(config.lambda_t, config.alpha, config.d, opts.bias_tol);
}

namespace {

constexpr std::uint64_t kChunk = 1024;

// Deterministic chunked map-reduce: the trial space is split into fixed-size
// chunks, worker threads claim chunk indices atomically, and per-chunk
// accumulators are merged in chunk order afterwards.  Results are therefore
// bitwise independent of the thread count and of scheduling.
template <typename Accum, typename TrialFn>
std::vector<Accum> run_trials_chunked(std::uint64_t trials, int threads, TrialFn&& fn) {
    const std::uint64_t n_chunks = trials == 0 ? 0 : (trials - 1) / kChunk + 1;
    std::vector<Accum> accs(n_chunks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const std::uint64_t t0 = c * kChunk;
            const std::uint64_t t1 = std::min(trials, t0 + kChunk);
            for (std::uint64_t t = t0; t < t1; ++t) fn(t, accs[c]);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return accs;
}

std::vector<Position> sample_receivers(const NetworkConfig& config, const McOptions& opts,
                                       std::uint64_t trial) {
    RandomStream rng(opts.seed, StreamPurpose::receiver_field, 0, trial);
    const Region cluster = Region::ball(config.d, config.s);
    if (opts.fixed_receiver_count >= 0) {
        std::vector<Position> points;
        points.reserve(opts.fixed_receiver_count);
        for (std::int64_t i = 0; i < opts.fixed_receiver_count; ++i)
            points.push_back(sample_point(cluster, rng));
        return points;
    }
    return sample_ppp(config.lambda_r, cluster, rng).points;
}

double interference_at(const Position& where, const PointPattern& field,
                       const NetworkConfig& config, double gain_mean, RandomStream& marks) {
    double acc = 0.0;
    for (const Position& x : field.points) {
        const double h = nakagami_power_gain(config.m, gain_mean, marks);
        acc += h * path_loss(distance(x, where, config.d), config.alpha);
    }
    return acc;
}

} // namespace

TrialOutcome run_trial(const NetworkConfig& config, double r_sim, const McOptions& opts,
                       std::uint64_t trial) {
    const double gain_mean = config.gain_mean();
    const Position origin{0.0, 0.0, 0.0};

    TrialOutcome outcome;
    const std::vector<Position> receivers = sample_receivers(config, opts, trial);
    outcome.receivers.reserve(receivers.size());
    for (const Position& y : receivers)
        outcome.receivers.push_back({norm(y, config.d), 0});
    outcome.interference.reserve(config.tau);

    PointPattern fixed_field;
    if (opts.mode == InterferenceMode::fixed_positions) {
        RandomStream field_rng(opts.seed, StreamPurpose::interferer_field, 0, trial);
        fixed_field = sample_ppp(config.lambda_t, Region::ball(config.d, r_sim), field_rng);
    }

    for (int attempt = 1; attempt <= config.tau; ++attempt) {
        PointPattern iid_field;
        const PointPattern* field = &fixed_field;
        if (opts.mode == InterferenceMode::iid) {
            RandomStream field_rng(opts.seed, StreamPurpose::interferer_field, attempt, trial);
            iid_field = sample_ppp(config.lambda_t, Region::ball(config.d, r_sim), field_rng);
            field = &iid_field;
        }

        RandomStream marks_rng(opts.seed, StreamPurpose::interferer_marks, attempt, trial);
        const double i_origin =
            interference_at(origin, *field, config, gain_mean, marks_rng);
        outcome.interference.push_back(i_origin);

        RandomStream desired_rng(opts.seed, StreamPurpose::desired_marks, attempt, trial);
        for (std::size_t l = 0; l < receivers.size(); ++l) {
            const double h = nakagami_power_gain(config.m, gain_mean, desired_rng);
            double i_seen = i_origin;
            if (opts.per_receiver_interference)
                i_seen = interference_at(receivers[l], *field, config, gain_mean, marks_rng);
            ReceiverRecord& record = outcome.receivers[l];
            if (record.first_success_attempt != 0) continue;
            const double r_eff = opts.clip == ClipPolicy::capped
                                     ? std::max(record.distance, 1.0)
                                     : record.distance;
            const double signal = h * path_loss(r_eff, config.alpha);
            if (signal > 0.0 && signal >= config.beta * i_seen)
                record.first_success_attempt = attempt;
        }
    }

    for (const ReceiverRecord& record : outcome.receivers)
        if (record.first_success_attempt == 0) outcome.outage = true;
    return outcome;
}

std::string trial_summary_csv(const NetworkConfig& config, const McOptions& opts) {
    config.validate();
    const double r_sim = resolve_window(config, opts);
    std::string csv = "trial,outage,receivers,min_attempt,max_attempt";
    for (int attempt = 1; attempt <= config.tau; ++attempt)
        csv += ",interference_" + std::to_string(attempt);
    csv += "\n";
    char buf[64];
    for (std::uint64_t trial = 0; trial < opts.trials; ++trial) {
        const TrialOutcome outcome = run_trial(config, r_sim, opts, trial);
        int min_attempt = 0, max_attempt = 0;
        for (const ReceiverRecord& record : outcome.receivers) {
            if (record.first_success_attempt == 0) continue;
            if (min_attempt == 0 || record.first_success_attempt < min_attempt)
                min_attempt = record.first_success_attempt;
            if (record.first_success_attempt > max_attempt)
                max_attempt = record.first_success_attempt;
        }
        csv += std::to_string(trial) + "," + (outcome.outage ? "1" : "0") + "," +
               std::to_string(outcome.receivers.size()) + "," + std::to_string(min_attempt) +
               "," + std::to_string(max_attempt);
        for (double value : outcome.interference) {
            std::snprintf(buf, sizeof(buf), ",%.17g", value);
            csv += buf;
        }
        csv += "\n";
    }
    return csv;
}

OutageEstimate estimate_outage(const NetworkConfig& config, const McOptions& opts) {
    config.validate();
    if (opts.trials < 1) throw_argument("estimate_outage requires at least one trial");
    const double r_sim = resolve_window(config, opts);

    struct Accum {
        std::uint64_t outages = 0;
    };
    auto accs = run_trials_chunked<Accum>(opts.trials, opts.threads,
                                          [&](std::uint64_t trial, Accum& acc) {
                                              if (run_trial(config, r_sim, opts, trial).outage)
                                                  ++acc.outages;
                                          });
    std::uint64_t outages = 0;
    for (const Accum& a : accs) outages += a.outages;

    OutageEstimate est;
    est.trials = opts.trials;
    est.mode = opts.mode;
    est.clip = opts.clip;
    est.probability = double(outages) / double(opts.trials);
    est.ci_half = 1.96 * std::sqrt(est.probability * (1.0 - est.probability) / double(opts.trials));
    return est;
}

std::vector<RadialBinEstimate> estimate_connected_intensity(const NetworkConfig& config,
                                                            int bins, const McOptions& opts) {
    config.validate();
    if (bins < 1) throw_argument("estimate_connected_intensity requires bins >= 1");
    if (!(config.s > 1.0))
        throw_argument("estimate_connected_intensity requires s > 1");
    const double r_sim = resolve_window(config, opts);
    const double width = (config.s - 1.0) / bins;
    const int total_bins = bins + 1; // bin 0 covers [0, 1)

    struct Accum {
        std::vector<std::uint64_t> connected;
    };
    auto accs = run_trials_chunked<Accum>(
        opts.trials, opts.threads, [&](std::uint64_t trial, Accum& acc) {
            if (acc.connected.empty()) acc.connected.assign(total_bins, 0);
            const TrialOutcome outcome = run_trial(config, r_sim, opts, trial);
            for (const ReceiverRecord& record : outcome.receivers) {
                if (record.first_success_attempt == 0) continue;
                int bin = record.distance < 1.0
                              ? 0
                              : 1 + std::min(bins - 1, int((record.distance - 1.0) / width));
                ++acc.connected[bin];
            }
        });

    std::vector<std::uint64_t> connected(total_bins, 0);
    for (const auto& a : accs)
        for (int b = 0; b < int(a.connected.size()); ++b) connected[b] += a.connected[b];

    const double mu_u = unit_ball_volume(config.d);
    std::vector<RadialBinEstimate> out(total_bins);
    for (int b = 0; b < total_bins; ++b) {
        RadialBinEstimate& bin = out[b];
        bin.r_lo = b == 0 ? 0.0 : 1.0 + (b - 1) * width;
        bin.r_hi = b == 0 ? 1.0 : (b == bins ? config.s : 1.0 + b * width);
        bin.volume = mu_u * (std::pow(bin.r_hi, config.d) - std::pow(bin.r_lo, config.d));
        bin.connected = connected[b];
        const double denom = double(opts.trials) * bin.volume;
        bin.lambda_hat = double(bin.connected) / denom;
        bin.ci_half = 1.96 * std::sqrt(std::max<double>(double(bin.connected), 1.0)) / denom;
    }
    return out;
}

InterferenceStats estimate_interference(const NetworkConfig& config,
                                        const std::vector<double>& phi_grid,
                                        const McOptions& opts) {
    config.validate();
    const double r_sim = resolve_window(config, opts);
    const double gain_mean = config.gain_mean();
    const Position origin{0.0, 0.0, 0.0};
    const std::size_t n_phi = phi_grid.size();

    struct Accum {
        double sum = 0.0;
        double sum_sq = 0.0;
        std::vector<double> exp_sum, exp_sum_sq;
    };
    auto accs = run_trials_chunked<Accum>(
        opts.trials, opts.threads, [&](std::uint64_t trial, Accum& acc) {
            if (acc.exp_sum.empty()) {
                acc.exp_sum.assign(n_phi, 0.0);
                acc.exp_sum_sq.assign(n_phi, 0.0);
            }
            RandomStream field_rng(opts.seed, StreamPurpose::interferer_field, 0, trial);
            const PointPattern field =
                sample_ppp(config.lambda_t, Region::ball(config.d, r_sim), field_rng);
            RandomStream marks_rng(opts.seed, StreamPurpose::interferer_marks, 0, trial);
            const double value = interference_at(origin, field, config, gain_mean, marks_rng);
            acc.sum += value;
            acc.sum_sq += value * value;
            for (std::size_t i = 0; i < n_phi; ++i) {
                const double e = std::exp(-phi_grid[i] * value);
                acc.exp_sum[i] += e;
                acc.exp_sum_sq[i] += e * e;
            }
        });

    double sum = 0.0, sum_sq = 0.0;
    std::vector<double> exp_sum(n_phi, 0.0), exp_sum_sq(n_phi, 0.0);
    for (const Accum& a : accs) {
        sum += a.sum;
        sum_sq += a.sum_sq;
        for (std::size_t i = 0; i < a.exp_sum.size(); ++i) {
            exp_sum[i] += a.exp_sum[i];
            exp_sum_sq[i] += a.exp_sum_sq[i];
        }
    }

    const double n = double(opts.trials);
    InterferenceStats stats;
    stats.trials = opts.trials;
    stats.mean = sum / n;
    stats.variance = opts.trials > 1 ? (sum_sq - sum * sum / n) / (n - 1.0) : 0.0;
    stats.laplace.resize(n_phi);
    for (std::size_t i = 0; i < n_phi; ++i) {
        auto& row = stats.laplace[i];
        row.phi = phi_grid[i];
        row.value = exp_sum[i] / n;
        const double var =
            opts.trials > 1 ? (exp_sum_sq[i] - exp_sum[i] * exp_sum[i] / n) / (n - 1.0) : 0.0;
        row.se = std::sqrt(std::max(var, 0.0) / n);
    }
    return stats;
}

RateEstimate estimate_rate(const NetworkConfig& config, const McOptions& opts) {
    config.validate();
    if (!(config.lambda_t > 0.0))
        throw_argument("estimate_rate requires lambda_t > 0 (interference-limited model)");
    const double r_sim = resolve_window(config, opts);
    const double gain_mean = config.gain_mean();
    const double boundary_gain = path_loss(config.s, config.alpha);
    const Position origin{0.0, 0.0, 0.0};

    struct Accum {
        double sum = 0.0;
        double sum_sq = 0.0;
        std::uint64_t used = 0;
        std::uint64_t discarded = 0;
    };
    auto accs = run_trials_chunked<Accum>(
        opts.trials, opts.threads, [&](std::uint64_t trial, Accum& acc) {
            RandomStream field_rng(opts.seed, StreamPurpose::interferer_field, 0, trial);
            const PointPattern field =
                sample_ppp(config.lambda_t, Region::ball(config.d, r_sim), field_rng);
            RandomStream marks_rng(opts.seed, StreamPurpose::interferer_marks, 0, trial);
            const double interference =
                interference_at(origin, field, config, gain_mean, marks_rng);
            RandomStream gain_rng(opts.seed, StreamPurpose::rate_gains, 0, trial);
            double h_max = 0.0;
            for (int i = 0; i < config.tau; ++i)
                h_max = std::max(h_max, nakagami_power_gain(config.m, gain_mean, gain_rng));
            if (interference <= 0.0) {
                ++acc.discarded;
                return;
            }
            const double value = std::log1p(h_max * boundary_gain / interference);
            acc.sum += value;
            acc.sum_sq += value * value;
            ++acc.used;
        });

    RateEstimate est;
    double sum = 0.0, sum_sq = 0.0;
    for (const Accum& a : accs) {
        sum += a.sum;
        sum_sq += a.sum_sq;
        est.trials_used += a.used;
        est.discarded_zero_interference += a.discarded;
    }
    if (est.trials_used == 0) throw_numeric("estimate_rate: all trials had zero interference");
    const double n = double(est.trials_used);
    est.b = sum / n;
    const double var = est.trials_used > 1 ? (sum_sq - sum * sum / n) / (n - 1.0) : 0.0;
    est.ci_half = 1.96 * std::sqrt(std::max(var, 0.0) / n);
    est.discard_fraction_flagged =
        double(est.discarded_zero_interference) > 0.01 * double(opts.trials);
    return est;
}

RateBoundReport check_rate_bounds(const RateEstimate& rate, const NetworkConfig& config) {
    const DerivedParams derived = derive_params(config);
    RateBoundReport report;
    report.lower_reference = std::log1p(1.0 / (derived.mu_r * config.lambda_t));
    report.ratio = rate.b / report.lower_reference;
    report.in_band = report.ratio >= 0.2 && report.ratio <= 3.0;
    return report;
}

SuccessFrequency mc_success_probability(const NetworkConfig& config, double r,
                                        const McOptions& opts) {
    config.validate();
    if (!(r >= 0.0 && r <= config.s)) throw_argument("probe distance must lie in [0, s]");
    const double r_sim = resolve_window(config, opts);
    const double r_eff = opts.clip == ClipPolicy::capped ? std::max(r, 1.0) : r;
    const double desired_gain = path_loss(r_eff, config.alpha);
    const double gain_mean = config.gain_mean();
    const Position origin{0.0, 0.0, 0.0};

    struct Accum {
        std::uint64_t successes = 0;
    };
    auto accs = run_trials_chunked<Accum>(
        opts.trials, opts.threads, [&](std::uint64_t trial, Accum& acc) {
            RandomStream field_rng(opts.seed, StreamPurpose::interferer_field, 1, trial);
            const PointPattern field =
                sample_ppp(config.lambda_t, Region::ball(config.d, r_sim), field_rng);
            RandomStream marks_rng(opts.seed, StreamPurpose::interferer_marks, 1, trial);
            const double interference =
                interference_at(origin, field, config, gain_mean, marks_rng);
            RandomStream gain_rng(opts.seed, StreamPurpose::desired_marks, 1, trial);
            const double h = nakagami_power_gain(config.m, gain_mean, gain_rng);
            const double signal = h * desired_gain;
            if (signal > 0.0 && signal >= config.beta * interference) ++acc.successes;
        });

    std::uint64_t successes = 0;
    for (const Accum& a : accs) successes += a.successes;
    SuccessFrequency freq;
    freq.trials = opts.trials;
    freq.p_hat = double(successes) / double(opts.trials);
    freq.ci_half = 1.96 * std::sqrt(freq.p_hat * (1.0 - freq.p_hat) / double(opts.trials));
    return freq;
}

DispersionReport connected_count_dispersion(const NetworkConfig& config,
                                            const std::vector<double>& edges,
                                            const McOptions& opts) {
    config.validate();
    if (edges.size() < 2) throw_argument("dispersion check needs at least one annulus");
    const double r_sim = resolve_window(config, opts);
    const std::size_t n_annuli = edges.size() - 1;

    struct Accum {
        std::vector<std::uint64_t> sum, sum_sq;
    };
    auto accs = run_trials_chunked<Accum>(
        opts.trials, opts.threads, [&](std::uint64_t trial, Accum& acc) {
            if (acc.sum.empty()) {
                acc.sum.assign(n_annuli, 0);
                acc.sum_sq.assign(n_annuli, 0);
            }
            const TrialOutcome outcome = run_trial(config, r_sim, opts, trial);
            std::vector<std::uint64_t> counts(n_annuli, 0);
            for (const ReceiverRecord& record : outcome.receivers) {
                if (record.first_success_attempt == 0) continue;
                for (std::size_t a = 0; a < n_annuli; ++a) {
                    if (record.distance >= edges[a] && record.distance < edges[a + 1]) {
                        ++counts[a];
                        break;
                    }
                }
            }
            for (std::size_t a = 0; a < n_annuli; ++a) {
                acc.sum[a] += counts[a];
                acc.sum_sq[a] += counts[a] * counts[a];
            }
        });

    DispersionReport report;
    report.annuli.resize(n_annuli);
    const double n = double(opts.trials);
    for (std::size_t a = 0; a < n_annuli; ++a) {
        std::uint64_t sum = 0, sum_sq = 0;
        for (const Accum& acc : accs) {
            if (acc.sum.empty()) continue;
            sum += acc.sum[a];
            sum_sq += acc.sum_sq[a];
        }
        auto& row = report.annuli[a];
        row.r_lo = edges[a];
        row.r_hi = edges[a + 1];
        row.mean = double(sum) / n;
        row.variance = (double(sum_sq) - double(sum) * double(sum) / n) / (n - 1.0);
        row.dispersion = row.mean > 0.0 ? row.variance / row.mean : 0.0;
    }
    return report;
}

} // namespace mtcap
