#include "relspan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace relspan {
namespace {

constexpr double kZ95 = 1.6448536269514722;

std::string fmt_double(double x) {
    if (std::isnan(x)) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double binom_cdf(std::uint64_t trials, std::uint64_t successes, double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return successes >= trials ? 1.0 : 0.0;
    double sum = 0;
    for (std::uint64_t k = 0; k <= successes; ++k) {
        const double logc = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(trials - k + 1.0);
        sum += std::exp(logc + k * std::log(p) + (trials - k) * std::log1p(-p));
    }
    return std::min(sum, 1.0);
}

Attack fixed_attack(const ExperimentSpec& spec, const Spanner1D* first_build) {
    if (spec.attack_kind == AttackKind::remark_middle) {
        require(first_build != nullptr, "remark attack needs a 1-D build");
        return remark_middle_attack(*first_build);
    }
    return generate_attack(spec.attack_kind, spec.n, spec.attack_size, spec.attack_seed,
                           spec.attack_blocks);
}

}  // namespace

LossReport assess_loss_hd(const SpannerHD& s, const Attack& attack,
                          std::uint64_t* defect_count) {
    LossReport r;
    r.attack_size = attack.vertices.size();
    std::vector<std::string> defects;
    const auto pairs = damaged_pairs_hd(s, attack.vertices, &defects);
    if (defect_count) *defect_count = defects.size();
    r.bad_pairs = pairs.size();
    ExtensionResult ext = min_extension(pairs);
    r.extension_lower = ext.lower;
    r.extension_upper = ext.upper;
    r.exact = ext.exact;
    const auto [lo, hi] = loss_rate(r.attack_size, ext);
    r.loss_lower = lo;
    r.loss_upper = hi;
    r.variant = s.params.delta.has_value() ? "probabilistic" : "expectation";
    r.stairway_bad = bad_sequence(s, attack.vertices).back().size() - r.attack_size;
    r.witness = std::move(ext.witness);
    return r;
}

double binomial_upper95(std::uint64_t successes, std::uint64_t trials) {
    require(trials >= 1 && successes <= trials, "bad binomial inputs");
    const double phat = static_cast<double>(successes) / trials;
    if (trials >= 100)
        return std::min(1.0, phat + kZ95 * std::sqrt(phat * (1.0 - phat) / trials));
    if (successes == trials) return 1.0;
    double lo = phat, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2;
        if (binom_cdf(trials, successes, mid) > 0.05)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

Summary run_trials(const ExperimentSpec& spec) {
    require(spec.trials >= 1, "need at least one trial");
    require(spec.variant == "1d" || spec.variant == "hd", "unknown experiment variant");
    const bool hd = spec.variant == "hd";
    const Vertex n = hd ? static_cast<Vertex>(spec.points.size()) : spec.n;
    require(n >= 2, "experiment needs at least two vertices");

    Summary out;
    out.variant = spec.variant;
    out.regime = spec.regime;
    out.trials = spec.trials;

    std::optional<Attack> attack;
    std::vector<double> losses;
    losses.reserve(spec.trials);

    for (std::uint64_t t = 1; t <= spec.trials; ++t) {
        const std::uint64_t seed_t = mix64(spec.base_seed, t);
        TrialRow row;
        row.trial = t;
        row.seed = seed_t;
        if (hd) {
            const SpannerHD s =
                build_hd(spec.points, spec.eps, spec.rho, spec.delta, spec.c_const, seed_t);
            if (!attack) {
                require(spec.attack_kind != AttackKind::remark_middle,
                        "remark attack applies to the 1-D construction");
                attack = generate_attack(spec.attack_kind, n, spec.attack_size,
                                         spec.attack_seed, spec.attack_blocks);
            }
            row.edges = s.union_edge_count();
            if (attack->vertices.empty()) {
                row.report.attack_size = 0;
                row.report.loss_lower = row.report.loss_upper =
                    std::numeric_limits<double>::quiet_NaN();
                out.loss_defined = false;
            } else {
                row.report = assess_loss_hd(s, *attack, &row.defects);
            }
        } else {
            const Spanner1D s = build_1d(n, spec.rho, spec.delta, spec.c_const, seed_t);
            if (!attack) attack = fixed_attack(spec, &s);
            row.edges = s.edge_count();
            if (attack->vertices.empty()) {
                row.report.attack_size = 0;
                row.report.loss_lower = row.report.loss_upper =
                    std::numeric_limits<double>::quiet_NaN();
                out.loss_defined = false;
            } else {
                row.report = assess_loss_1d(s, *attack);
            }
        }
        out.defect_count += row.defects;
        if (out.loss_defined) losses.push_back(row.report.loss_upper);
        out.rows.push_back(std::move(row));
    }

    if (!out.loss_defined || losses.empty()) {
        out.loss_defined = false;
        out.mean_loss = out.mean_loss_ci95 = std::numeric_limits<double>::quiet_NaN();
        out.tail_freq = out.tail_ci95 = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    double mean = 0;
    for (double x : losses) mean += x;
    mean /= static_cast<double>(losses.size());
    double var = 0;
    for (double x : losses) var += (x - mean) * (x - mean);
    var = losses.size() > 1 ? var / static_cast<double>(losses.size() - 1) : 0.0;
    out.mean_loss = mean;
    out.mean_loss_ci95 =
        mean + kZ95 * std::sqrt(var / static_cast<double>(losses.size()));

    std::uint64_t exceed = 0;
    for (double x : losses)
        if (x > spec.rho) ++exceed;
    out.tail_freq = static_cast<double>(exceed) / static_cast<double>(losses.size());
    out.tail_ci95 = binomial_upper95(exceed, losses.size());
    return out;
}

std::string summary_csv(const ExperimentSpec& spec, const Summary& summary) {
    std::ostringstream out;
    out << "trial,seed,n,variant,rho,delta,c_const,edges,attack_size,bad_pairs,"
           "ext_lower,ext_upper,loss_lower,loss_upper,defects\n";
    const Vertex n = spec.variant == "hd" ? static_cast<Vertex>(spec.points.size()) : spec.n;
    for (const TrialRow& row : summary.rows) {
        out << row.trial << ',' << row.seed << ',' << n << ',' << spec.variant << ','
            << fmt_double(spec.rho) << ','
            << (spec.delta ? fmt_double(*spec.delta) : std::string()) << ','
            << fmt_double(spec.c_const) << ',' << row.edges << ','
            << row.report.attack_size << ',' << row.report.bad_pairs << ','
            << row.report.extension_lower << ',' << row.report.extension_upper << ','
            << fmt_double(row.report.loss_lower) << ','
            << fmt_double(row.report.loss_upper) << ',' << row.defects << '\n';
    }
    return out.str();
}

std::vector<EdgeScalingRow> edge_scaling(const std::vector<Vertex>& n_list, double rho,
                                         std::optional<double> delta, double c_const,
                                         std::uint64_t seed) {
    require(std::is_sorted(n_list.begin(), n_list.end()), "n_list must ascend");
    std::vector<EdgeScalingRow> rows;
    for (Vertex n : n_list) {
        const Spanner1D s = build_1d(n, rho, delta, c_const, mix64(seed, n));
        EdgeScalingRow row;
        row.n = n;
        row.eps_step = s.params.eps_step;
        row.edges = s.edge_count();
        row.bound = 7.0 * static_cast<double>(n) / s.params.eps_step;
        row.per_unit = static_cast<double>(row.edges) * s.params.eps_step / n;
        row.growth = rows.empty() ? 0.0
                                  : static_cast<double>(row.edges) /
                                        static_cast<double>(rows.back().edges);
        rows.push_back(row);
    }
    return rows;
}

std::string edge_scaling_csv(const std::vector<EdgeScalingRow>& rows) {
    std::ostringstream out;
    out << "n,eps_step,edges,bound,edges_per_unit,growth\n";
    for (const EdgeScalingRow& r : rows) {
        out << r.n << ',' << fmt_double(r.eps_step) << ',' << r.edges << ','
            << fmt_double(r.bound) << ',' << fmt_double(r.per_unit) << ','
            << fmt_double(r.growth) << '\n';
    }
    return out.str();
}

}  // namespace relspan
