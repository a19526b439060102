// Release gate: every numbered criterion runs at its pinned tolerance and
// prints exactly one PASS/FAIL line. Exit code is the number of failures.

#include <aoi/moments.hpp>
#include <aoi/optimize.hpp>
#include <aoi/policy.hpp>
#include <aoi/rng.hpp>
#include <aoi/second_order.hpp>
#include <aoi/sim.hpp>

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace aoi;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

constexpr std::uint64_t kSeed = 20240611;
constexpr int kN = 7;
constexpr int kC = 2;

const SimParams kSimParams{100000, 10, kSeed, 1000, 1000};

struct WPoint {
    double w;
    double lambda_star;
    double theoretical;
    double empirical_ours;
    double empirical_slotted;
    double empirical_ata;
    double empirical_optimal_aloha;
};

double reweight(const SimOutcome& outcome, double w) {
    return w * outcome.empirical_active_moment + (1.0 - w) * outcome.empirical_passive_moment;
}

// Shared data for criteria 1-3: everything at N=7, C=2, same seeds for
// every policy.
std::vector<WPoint> run_w_sweep(int z) {
    std::vector<WPoint> points;
    NetworkConfig config{kN, kC, z, 0.5};

    const SimOutcome slotted =
        simulate(config, make_policy(PolicyKind::slotted_aloha, config), kSimParams);
    const SimOutcome ata =
        simulate(config, make_policy(PolicyKind::age_threshold_aloha, config), kSimParams);
    const std::vector<AlohaSweepPoint> sweep = aloha_sweep(config, kSimParams, 0.01);

    std::map<double, SimOutcome> ours_cache;
    for (int wi = 0; wi <= 10; ++wi) {
        const double w = wi / 10.0;
        config.active_weight = w;
        const OptimizationResult opt = optimize_structural(config, 0.01);
        if (ours_cache.find(opt.lambda_star) == ours_cache.end()) {
            const PolicySpec policy{PolicyKind::second_order_optimal,
                                    one_shot_chain(opt.lambda_star)};
            ours_cache.emplace(opt.lambda_star, simulate(config, policy, kSimParams));
        }
        const SimOutcome& ours = ours_cache.at(opt.lambda_star);

        double best_aloha = std::numeric_limits<double>::infinity();
        for (const AlohaSweepPoint& point : sweep) {
            best_aloha = std::min(best_aloha, reweight(point.outcome, w));
        }
        points.push_back(WPoint{w, opt.lambda_star, opt.objective_value, reweight(ours, w),
                                reweight(slotted, w), reweight(ata, w), best_aloha});
    }
    return points;
}

void criteria_1_to_3() {
    const std::vector<WPoint> sweep_z1 = run_w_sweep(1);
    const std::vector<WPoint> sweep_z2 = run_w_sweep(2);

    // 1. theory-vs-simulation mismatch, averaged over w
    {
        const auto mismatch = [](const std::vector<WPoint>& points) {
            double total = 0.0;
            for (const WPoint& p : points) {
                total += std::abs(p.empirical_ours - p.theoretical) / p.theoretical;
            }
            return total / static_cast<double>(points.size());
        };
        const double mm1 = mismatch(sweep_z1);
        const double mm2 = mismatch(sweep_z2);
        report(1, mm1 <= 0.03 && mm2 <= 0.20,
               "avg |emp-theory|/theory = " + fmt(mm1 * 100) + "% (z=1, limit 3%), " +
                   fmt(mm2 * 100) + "% (z=2, limit 20%)");
    }

    // 2. direction of mismatch for z=1: empirical never above theory + 2%
    {
        bool pass = true;
        double worst = 0.0;
        for (const WPoint& p : sweep_z1) {
            const double excess = p.empirical_ours / p.theoretical;
            worst = std::max(worst, excess);
            if (!(p.empirical_ours <= p.theoretical * 1.02)) pass = false;
        }
        report(2, pass,
               "per-w empirical_F <= 1.02 x theoretical_F (z=1); worst ratio " + fmt(worst));
    }

    // 3. policy ranking with shared seeds
    {
        bool ranking = true;
        std::string breach;
        int z = 0;
        for (const std::vector<WPoint>* sweep : {&sweep_z1, &sweep_z2}) {
            ++z;
            for (const WPoint& p : *sweep) {
                if (!(p.empirical_ours <= p.empirical_slotted)) {
                    ranking = false;
                    breach += "; slotted beats ours at z=" + std::to_string(z) +
                              " w=" + fmt(p.w) + " by " +
                              fmt((p.empirical_ours / p.empirical_slotted - 1.0) * 100) + "%";
                }
                if (!(p.empirical_ours <= p.empirical_ata)) {
                    ranking = false;
                    breach += "; ATA beats ours at z=" + std::to_string(z) + " w=" + fmt(p.w) +
                              " by " + fmt((p.empirical_ours / p.empirical_ata - 1.0) * 100) +
                              "%";
                }
            }
        }
        const auto reduction = [](const std::vector<WPoint>& points) {
            double ours = 0.0;
            double aloha = 0.0;
            for (const WPoint& p : points) {
                ours += p.empirical_ours;
                aloha += p.empirical_optimal_aloha;
            }
            return (aloha - ours) / aloha;
        };
        const double red1 = reduction(sweep_z1);
        const double red2 = reduction(sweep_z2);
        const bool pass = ranking && red1 >= 0.01 && red2 >= 0.03;
        report(3, pass,
               (ranking ? std::string("ours <= slotted, <= ATA at every w")
                        : "per-w ranking breached" + breach) +
                   "; vs optimal ALOHA w-avg reduction " + fmt(red1 * 100) + "% (z=1, need >=1%), " +
                   fmt(red2 * 100) + "% (z=2, need >=3%)");
    }
}

void criterion_4() {
    bool pass = true;
    std::string breach;
    int configs = 0;
    for (int n = 6; n <= 12 && pass; ++n) {
        for (int c = 1; n > c + 4 && c * n <= 40 && pass; ++c) {
            for (const int z : {1, 2}) {
                for (const double w : {0.0, 0.5, 1.0}) {
                    const NetworkConfig config{n, c, z, w};
                    const auto [grid_params, grid_value] = grid_search_oracle(config, 0.02);
                    const OptimizationResult line = optimize_structural(config, 0.01);
                    ++configs;

                    if (grid_params.s != 1.0) {
                        pass = false;
                        breach = "grid argmin s=" + fmt(grid_params.s) + " at N=" +
                                 std::to_string(n) + " C=" + std::to_string(c) +
                                 " z=" + std::to_string(z) + " w=" + fmt(w);
                        break;
                    }

                    // tolerance: how much F moves across one grid cell near
                    // either argmin, measured on the s=1 curve
                    const auto f_at = [&](double lambda) {
                        return objective(config, one_shot_chain(lambda)).objective;
                    };
                    const double lg = grid_params.lambda;
                    const double f_lg = f_at(lg);
                    double variation = 0.0;
                    const double r_g = grid_params.r;
                    for (const double r_next : {r_g + 0.02, r_g - 0.02}) {
                        if (r_next > 0.0 && r_next <= 1.0) {
                            const double l_next = r_next / (1.0 + r_next);
                            variation = std::max(variation, std::abs(f_at(l_next) - f_lg));
                        }
                    }
                    for (const double l_next : {line.lambda_star + 0.01, line.lambda_star - 0.01}) {
                        if (l_next > 0.0 && l_next < 0.5) {
                            variation = std::max(
                                variation, std::abs(f_at(l_next) - line.objective_value));
                        }
                    }
                    if (!(std::abs(grid_value - line.objective_value) <= variation + 1e-9)) {
                        pass = false;
                        breach = "grid F " + fmt(grid_value) + " vs line F " +
                                 fmt(line.objective_value) + " exceeds cell variation " +
                                 fmt(variation) + " at N=" + std::to_string(n) +
                                 " C=" + std::to_string(c) + " z=" + std::to_string(z) +
                                 " w=" + fmt(w);
                        break;
                    }
                }
                if (!pass) break;
            }
        }
    }
    report(4, pass,
           pass ? "grid oracle argmin has s=1 and F within one-cell variation across " +
                      std::to_string(configs) + " configs"
                : breach);
}

void criterion_5() {
    bool pass = true;
    std::string breach;

    // (a) general moment assembly vs explicit closed forms, 50-point grid
    int grid_points = 0;
    for (double m = 0.02; m <= 1.0 && pass; m += 0.14) {
        for (double v2 = 0.0; v2 <= 0.31 && pass; v2 += 0.05) {
            ++grid_points;
            for (const int z : {1, 2}) {
                const double general = aoi_moment({m, v2}, z);
                const double closed = aoi_moment_closed({m, v2}, z);
                if (std::abs(general - closed) > 1e-12 * std::abs(closed)) {
                    pass = false;
                    breach = "aoi_moment mismatch at m=" + fmt(m) + " v2=" + fmt(v2);
                }
            }
        }
    }

    // (b) power sums vs direct loops, exact
    for (int z = 1; z <= 8 && pass; ++z) {
        for (long long l = 1; l <= 200; ++l) {
            BigInt direct = 0;
            for (long long k = 1; k <= l; ++k) {
                BigInt term = 1;
                for (int e = 0; e < z; ++e) term *= k;
                direct += term;
            }
            if (faulhaber_sum(l, z) != direct) {
                pass = false;
                breach = "faulhaber mismatch at l=" + std::to_string(l) +
                         " z=" + std::to_string(z);
                break;
            }
        }
    }

    // (c) series vs binomial-geometric closed form on a 20x20 feasible grid
    // capped at |theta| <= 0.95 (the series needs |theta| < 1 to converge);
    // the variance call itself enforces agreement within 1e-11 and throws
    // on violation, which this sweep would surface.
    if (pass) {
        try {
            for (int i = 1; i <= 20; ++i) {
                const double lambda = 0.5 * i / 20.0;
                for (int j = 1; j <= 20; ++j) {
                    const double lo = std::max(-lambda / (1.0 - lambda) + 1e-9, -0.95);
                    const double theta = lo + (0.95 - lo) * (j - 1) / 19.0;
                    const ChainParams params = params_from_lambda_theta(lambda, theta);
                    active_temporal_variance(params, kN);
                    passive_temporal_variance(params, kC, kN);
                }
            }
        } catch (const std::exception& e) {
            pass = false;
            breach = std::string("series/closed-form disagreement: ") + e.what();
        }
    }

    // (d) conditional-probability recursion vs stationary kernels, k <= 50
    if (pass) {
        const ChainParams params = params_from_lambda_theta(1.0 / 7.0, -1.0 / 6.0);
        for (int k = 1; k <= 50; ++k) {
            const double tk = std::pow(params.theta, k);
            const double active_kernel = (params.lambda + (1.0 - params.lambda) * tk) *
                                         std::pow(1.0 - params.lambda + params.lambda * tk, kN - 1);
            const double passive_kernel =
                std::pow(1.0 - params.lambda + params.lambda * tk, kC * kN);
            const double rec_a =
                conditional_success_probability(params, kN, k, ProcessKind::active);
            const double rec_p =
                conditional_success_probability(params, kN, k, ProcessKind::passive, kC);
            if (std::abs(rec_a - active_kernel) > 1e-12 ||
                std::abs(rec_p - passive_kernel) > 1e-12) {
                pass = false;
                breach = "recursion kernel mismatch at k=" + std::to_string(k);
                break;
            }
        }
    }

    report(5, pass,
           pass ? "closed-form equivalences hold (moment grid of " +
                      std::to_string(grid_points) +
                      " points, power sums to l=200 z=8, 20x20 variance grid, recursion to k=50)"
                : breach);
}

void criterion_6() {
    bool pass = true;
    std::string breach;
    for (int n = 5; n <= 50; ++n) {
        if (!(cubic_alpha(n) > 1.0 / n)) {
            pass = false;
            breach = "alpha(N) <= 1/N at N=" + std::to_string(n);
            break;
        }
    }
    if (pass) {
        for (int n = 6; n <= 50 && pass; ++n) {
            for (int c = 1; n > c + 4 && c * n <= 100; ++c) {
                if (!(cubic_beta(c, n) > 1.0 / n)) {
                    pass = false;
                    breach = "beta(C,N) <= 1/N at N=" + std::to_string(n) +
                             " C=" + std::to_string(c);
                    break;
                }
            }
        }
    }
    const double beta_quadratic = cubic_beta(1, 10);
    const double expected = (3.0 - std::sqrt(6.0)) / 3.0;
    if (pass && std::abs(beta_quadratic - expected) > 1e-9) {
        pass = false;
        breach = "beta(1,10) = " + fmt(beta_quadratic) + " vs (3-sqrt6)/3";
    }
    report(6, pass,
           pass ? "alpha > 1/N for N in 5..50, beta > 1/N for N > C+4 with CN <= 100, "
                  "beta(1,10) = (3-sqrt6)/3 within 1e-9"
                : breach);
}

void criterion_7() {
    // (a) i.i.d. Bernoulli(0.25), 10^6 samples
    constexpr int kLength = 1000000;
    std::vector<std::uint8_t> bits(kLength);
    const SlotStream stream(kSeed, 0, 0);
    for (int i = 0; i < kLength; ++i) {
        bits[static_cast<size_t>(i)] = stream.uniform_at(static_cast<std::uint64_t>(i)) < 0.25;
    }
    const SecondOrderStats iid = estimate_second_order(bits, 1000);
    const double v2_true = 0.1875;
    const double se_iid = v2_true * std::sqrt(2.0 / 999.0);
    const bool pass_iid = std::abs(iid.temporal_variance - v2_true) <= 3.0 * se_iid;

    // (b) delivery process of the (lambda = 1/7, theta = -1/6, N = 7) chain
    const ChainParams chain = one_shot_chain(1.0 / 7.0);
    const double v2_theory = active_temporal_variance(chain, kN);
    const NetworkConfig config{kN, kC, 1, 0.5};
    const PolicySpec policy{PolicyKind::second_order_optimal, chain};
    const SimOutcome outcome = simulate(config, policy, kSimParams);
    const double batches =
        static_cast<double>((kSimParams.slots - kSimParams.warmup_slots) /
                            kSimParams.batch_length);
    const double se_sim =
        v2_theory * std::sqrt(2.0 / (batches - 1.0) / kSimParams.runs);
    const bool pass_sim = std::abs(outcome.empirical_v2_a - v2_theory) <= 3.0 * se_sim;

    report(7, pass_iid && pass_sim,
           "estimator calibration: iid vhat2 = " + fmt(iid.temporal_variance) + " vs 0.1875 (" +
               fmt(std::abs(iid.temporal_variance - v2_true) / se_iid) +
               " SE), delivery vhat2 = " + fmt(outcome.empirical_v2_a) + " vs " +
               fmt(v2_theory) + " (" +
               fmt(std::abs(outcome.empirical_v2_a - v2_theory) / se_sim) + " SE)");
}

std::vector<std::string> csv_data_rows(const std::string& command) {
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    std::vector<std::string> rows;
    if (pipe == nullptr) return rows;
    char buffer[8192];
    std::string output;
    size_t got = 0;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, got);
    pclose(pipe);
    std::stringstream stream(output);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.front() != '#' && line.find(',') != std::string::npos) {
            rows.push_back(line);
        }
    }
    return rows;
}

void criterion_8() {
#ifdef AOI_CLI_PATH
    const std::string base = std::string(AOI_CLI_PATH);
    const std::string simulate_cmd =
        base + " simulate --N 7 --C 2 --z 1 --w 0.5 --policy second_order_optimal"
               " --runs 3 --slots 20000 --warmup 1000 --base_seed 4242";
    const auto sim_first = csv_data_rows(simulate_cmd);
    const auto sim_second = csv_data_rows(simulate_cmd);
    const std::string experiment_cmd =
        base + " experiment --N 7 --C 2 --z 1 --policies second_order_optimal,slotted_aloha"
               " --w_grid 0,0.5,1 --runs 2 --slots 10000 --warmup 500 --base_seed 99";
    const auto exp_first = csv_data_rows(experiment_cmd);
    const auto exp_second = csv_data_rows(experiment_cmd);
    const bool pass = !sim_first.empty() && sim_first == sim_second && !exp_first.empty() &&
                      exp_first == exp_second;
    report(8, pass,
           "repeated executions produce byte-identical CSV data rows (" +
               std::to_string(sim_first.size()) + " simulate rows, " +
               std::to_string(exp_first.size()) + " experiment rows)");
#else
    report(8, false, "AOI_CLI_PATH not configured");
#endif
}

} // namespace

int main() {
    std::printf("acceptance gate: N=%d, C=%d, %lld slots x %d runs, seed %llu\n", kN, kC,
                static_cast<long long>(kSimParams.slots), kSimParams.runs,
                static_cast<unsigned long long>(kSeed));
    criteria_1_to_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    }
    return g_failures;
}
