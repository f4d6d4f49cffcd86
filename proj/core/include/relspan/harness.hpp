#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relspan/attacks.hpp"
#include "relspan/loss.hpp"
#include "relspan/spanner1d.hpp"
#include "relspan/spannerhd.hpp"

namespace relspan {

// Monte Carlo experiment description. The attack is drawn once and held
// fixed; randomness ranges over construction seeds, which is the reading of
// reliability the estimates target.
struct ExperimentSpec {
    std::string variant = "1d";  // "1d" or "hd"
    // labels the parameter regime in reports ("theoretical" constants give
    // the proven bounds, "empirical" explores small c_const)
    std::string regime = "theoretical";
    Vertex n = 0;
    std::vector<Point> points;  // hd only; its size overrides n
    double rho = 0;
    std::optional<double> delta;
    double c_const = 1;
    double eps = 0;  // hd only
    AttackKind attack_kind = AttackKind::uniform;
    std::uint64_t attack_size = 0;
    std::uint64_t attack_seed = 0;
    std::uint32_t attack_blocks = 4;
    std::uint64_t base_seed = 0;
    std::uint64_t trials = 1;
};

struct TrialRow {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::uint64_t edges = 0;
    LossReport report;
    std::uint64_t defects = 0;
};

struct Summary {
    std::string variant;
    std::string regime;
    std::uint64_t trials = 0;
    bool loss_defined = true;  // false when the attack is empty
    double mean_loss = 0;      // per-trial upper bounds averaged
    double mean_loss_ci95 = 0; // one-sided upper confidence limit
    double tail_freq = 0;      // fraction of trials with loss above rho
    double tail_ci95 = 0;
    std::uint64_t defect_count = 0;
    std::vector<TrialRow> rows;
};

Summary run_trials(const ExperimentSpec& spec);

// Damage assessment against the (1+eps)-path guarantee; defect_count, when
// given, receives the number of pair-consistency violations.
LossReport assess_loss_hd(const SpannerHD& s, const Attack& attack,
                          std::uint64_t* defect_count = nullptr);

// Per-trial CSV with the columns consumed by the report tooling.
std::string summary_csv(const ExperimentSpec& spec, const Summary& summary);

struct EdgeScalingRow {
    Vertex n = 0;
    double eps_step = 0;
    std::uint64_t edges = 0;
    double bound = 0;     // 7 n / eps_step
    double per_unit = 0;  // edges divided by n / eps_step
    double growth = 0;    // edges relative to the previous row, 0 on the first
};

std::vector<EdgeScalingRow> edge_scaling(const std::vector<Vertex>& n_list, double rho,
                                         std::optional<double> delta, double c_const,
                                         std::uint64_t seed);
std::string edge_scaling_csv(const std::vector<EdgeScalingRow>& rows);

// One-sided 95% upper limit for a binomial proportion: normal approximation
// from 100 trials up, exact tail inversion below that.
double binomial_upper95(std::uint64_t successes, std::uint64_t trials);

}  // namespace relspan
