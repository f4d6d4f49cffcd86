// Command-line front end: construction, attacks, damage reports, path
// queries, ordering checks and Monte Carlo experiments.
//
// Exit codes: 0 success, 2 invalid input (including flag errors), 3 when a
// verifier finds a defect in a guarantee that should have held.

#include <cinttypes>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relspan/harness.hpp"
#include "relspan/json_io.hpp"
#include "relspan/resilience1d.hpp"

namespace {

using namespace relspan;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
    if (given) return *given;
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::printf("seed: %" PRIu64 "\n", s);
    return s;
}

void emit_json(const std::optional<std::string>& out, const Json& j) {
    if (out)
        save_json_file(*out, j);
    else
        std::fputs((j.dump(2) + "\n").c_str(), stdout);
}

void emit_text(const std::optional<std::string>& out, const std::string& text) {
    if (out)
        write_text_file(*out, text);
    else
        std::fputs(text.c_str(), stdout);
}

std::vector<Point> random_points(Vertex n, int dim, std::uint64_t seed) {
    std::vector<Point> pts(n, Point(dim));
    for (Vertex i = 0; i < n; ++i)
        for (int a = 0; a < dim; ++a)
            pts[i][a] = static_cast<double>(mix64(seed, i + 1, a + 1) >> 11) * 0x1.0p-53;
    return pts;
}

std::string json_type(const Json& j) {
    return j.contains("type") && j["type"].is_string() ? j["type"].get<std::string>()
                                                       : std::string();
}

void print_path(const VertexList& path) {
    std::fputs("path:", stdout);
    for (Vertex v : path) std::printf(" %u", v);
    std::fputs("\n", stdout);
}

// ---- build ----

struct BuildOpts {
    std::optional<Vertex> n;
    std::string points_file;
    double rho = 0;
    std::optional<double> delta;
    std::optional<double> eps;
    int dim = 1;
    double c_const = 1.0;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::string edges = "auto";
};

int run_build(const BuildOpts& o) {
    const std::uint64_t seed = resolve_seed(o.seed);
    if (o.eps) {
        std::vector<Point> pts;
        if (!o.points_file.empty()) {
            pts = read_points_file(o.points_file);
        } else {
            require(o.n.has_value(), "build needs --points-file or --n with --dim");
            require(o.dim >= 1, "--dim must be at least 1");
            pts = random_points(*o.n, o.dim, seed);
        }
        const SpannerHD s = build_hd(pts, *o.eps, o.rho, o.delta, o.c_const, seed);
        emit_json(o.out, spannerhd_to_json(s));
        if (o.out)
            std::printf("built hd spanner: n=%u dim=%d rounds=%d orderings=%" PRIu64 "%s\n",
                        s.n, s.family.dim, s.params.rounds, s.family.count(),
                        s.copies_degenerate ? " (degenerate copies)" : "");
        return 0;
    }
    require(o.n.has_value(), "build needs --n for the one-dimensional spanner");
    const Spanner1D s = build_1d(*o.n, o.rho, o.delta, o.c_const, seed);
    const bool implicit =
        o.edges == "implicit" || (o.edges == "auto" && s.edge_count() > 100000);
    emit_json(o.out, spanner1d_to_json(s, implicit));
    if (o.out)
        std::printf("built 1d spanner: n=%u M=%d edges=%" PRIu64 "%s\n", s.n, s.params.M,
                    s.edge_count(), s.params.degenerate ? " (degenerate)" : "");
    return 0;
}

// ---- attack ----

struct AttackOpts {
    std::string kind = "uniform";
    std::optional<Vertex> n;
    Vertex size = 0;
    std::optional<std::uint64_t> seed;
    unsigned blocks = 4;
    std::vector<Vertex> vertices;
    std::string spanner_file;
    std::optional<std::string> out;
};

int run_attack(const AttackOpts& o) {
    const AttackKind kind = attack_kind_from_string(o.kind);
    Attack a;
    if (kind == AttackKind::custom) {
        require(o.n.has_value(), "custom attack needs --n");
        a = custom_attack(*o.n, o.vertices);
    } else if (kind == AttackKind::remark_middle) {
        require(!o.spanner_file.empty(), "remark-middle attack needs --spanner");
        const Json j = load_json_file(o.spanner_file);
        require(json_type(j) == "spanner1d", "remark-middle attack needs a 1-d spanner file");
        a = remark_middle_attack(spanner1d_from_json(j));
    } else {
        require(o.n.has_value(), "attack needs --n");
        const std::uint64_t seed =
            kind == AttackKind::periodic ? o.seed.value_or(0) : resolve_seed(o.seed);
        a = generate_attack(kind, *o.n, o.size, seed, o.blocks);
    }
    emit_json(o.out, attack_to_json(a));
    if (o.out)
        std::printf("attack: kind=%s n=%u size=%zu%s\n", to_string(a.kind), a.n,
                    a.vertices.size(), a.oblivious ? "" : " (non-oblivious)");
    return 0;
}

// ---- loss ----

struct LossOpts {
    std::string spanner_file;
    std::string attack_file;
    std::optional<std::string> out;
};

int run_loss(const LossOpts& o) {
    const Attack attack = attack_from_json(load_json_file(o.attack_file));
    if (!attack.oblivious) std::fprintf(stderr, "warning: non-oblivious attack\n");
    const Json sj = load_json_file(o.spanner_file);
    LossReport r;
    std::uint64_t defects = 0;
    if (json_type(sj) == "spannerhd") {
        const SpannerHD s = spannerhd_from_json(sj);
        require(attack.n == s.n, "attack and spanner disagree on n");
        r = assess_loss_hd(s, attack, &defects);
    } else {
        const Spanner1D s = spanner1d_from_json(sj);
        require(attack.n == s.n, "attack and spanner disagree on n");
        r = assess_loss_1d(s, attack);
    }
    emit_json(o.out, loss_report_to_json(r));
    if (o.out)
        std::printf("loss: bad_pairs=%" PRIu64 " extension=[%" PRIu64 ",%" PRIu64
                    "] loss=[%.6g,%.6g]%s\n",
                    r.bad_pairs, r.extension_lower, r.extension_upper, r.loss_lower,
                    r.loss_upper, r.exact ? "" : " (bounds only)");
    if (defects > 0) {
        std::fprintf(stderr, "defects: %" PRIu64 " pair(s) damaged outside the computed bad sets\n",
                     defects);
        return 3;
    }
    return 0;
}

// ---- path ----

struct PathOpts {
    std::string spanner_file;
    std::string attack_file;
    Vertex u = 0;
    Vertex v = 0;
};

int run_path(const PathOpts& o) {
    const Json sj = load_json_file(o.spanner_file);
    Attack attack;
    const bool have_attack = !o.attack_file.empty();
    if (have_attack) attack = attack_from_json(load_json_file(o.attack_file));

    if (json_type(sj) == "spannerhd") {
        const SpannerHD s = spannerhd_from_json(sj);
        if (have_attack) require(attack.n == s.n, "attack and spanner disagree on n");
        const PathOutcome out = path_hd(s, attack.vertices, o.u, o.v);
        for (const std::string& d : out.defects)
            std::fprintf(stderr, "defect: %s\n", d.c_str());
        if (out.path) {
            print_path(*out.path);
            std::printf("length: %.12g\n", out.length);
            std::printf("stretch: %.12g\n", out.length / s.distance(o.u, o.v));
        } else {
            std::puts("no path: an endpoint lies in the computed bad sets");
        }
        return out.defects.empty() ? 0 : 3;
    }

    const Spanner1D s = spanner1d_from_json(sj);
    if (have_attack) require(attack.n == s.n, "attack and spanner disagree on n");
    require(o.u != o.v, "path needs two distinct vertices");
    const Vertex u = std::min(o.u, o.v), v = std::max(o.u, o.v);
    const auto path = monotone_path(s, attack.vertices, u, v);
    if (!path) {
        std::puts("no path: the pair is damaged");
        return 0;
    }
    print_path(*path);
    std::printf("length: %u\n", v - u);
    std::puts("stretch: 1");
    return 0;
}

// ---- lso-check ----

struct LsoOpts {
    double varsigma = 0;
    int dim = 0;
    std::uint64_t pairs = 0;
    std::optional<std::uint64_t> seed;
};

int run_lso_check(const LsoOpts& o) {
    const OrderingFamily fam = build_orderings(o.varsigma, o.dim);
    const std::uint64_t seed = resolve_seed(o.seed);
    std::uint64_t checked = 0;
    for (std::uint64_t t = 0; t < o.pairs; ++t) {
        Point p(o.dim), q(o.dim);
        for (int a = 0; a < o.dim; ++a) {
            p[a] = static_cast<double>(mix64(seed, 2 * t, a + 1) >> 11) * 0x1.0p-53;
            q[a] = static_cast<double>(mix64(seed, 2 * t + 1, a + 1) >> 11) * 0x1.0p-53;
        }
        if (p == q) continue;
        if (!verify_lso_property(fam, p, q)) {
            std::fprintf(stderr, "defect: no ordering witnesses pair %" PRIu64 "\n", t);
            return 3;
        }
        ++checked;
    }
    std::printf("lso-check: %" PRIu64 " pairs witnessed, family=%" PRIu64
                " orderings, measured c=%.6g\n",
                checked, fam.count(), fam.measured_c_lso());
    return 0;
}

// ---- experiment ----

struct ExperimentOpts {
    std::string spec_file;
    std::optional<std::string> out;
};

double dbl_at(const Json& j, const char* key) {
    require(j.contains(key) && j[key].is_number(), "experiment spec misses a numeric field");
    return j[key].get<double>();
}

ExperimentSpec parse_experiment(const Json& j, std::optional<std::string>* out_csv) {
    ExperimentSpec s;
    s.variant = j.value("variant", std::string("1d"));
    require(s.variant == "1d" || s.variant == "hd", "variant must be \"1d\" or \"hd\"");
    s.regime = j.value("regime", std::string("theoretical"));
    s.rho = dbl_at(j, "rho");
    if (j.contains("delta") && !j["delta"].is_null()) s.delta = j["delta"].get<double>();
    if (j.contains("c_const")) s.c_const = dbl_at(j, "c_const");
    s.trials = j.value("trials", std::uint64_t{1});
    require(j.contains("base_seed"), "experiment spec needs base_seed");
    s.base_seed = j["base_seed"].get<std::uint64_t>();
    if (j.contains("attack")) {
        const Json& a = j["attack"];
        s.attack_kind = attack_kind_from_string(a.value("kind", std::string("uniform")));
        s.attack_size = a.value("size", std::uint64_t{0});
        s.attack_seed = a.value("seed", std::uint64_t{0});
        s.attack_blocks = a.value("blocks", 4u);
    }
    if (s.variant == "hd") {
        s.eps = dbl_at(j, "eps");
        if (j.contains("points_file")) {
            s.points = read_points_file(j["points_file"].get<std::string>());
        } else {
            const Vertex n = j.value("n", Vertex{0});
            const int dim = j.value("dim", 0);
            require(n >= 2 && dim >= 1, "hd experiment needs points_file or n with dim");
            s.points = random_points(n, dim, j.value("points_seed", s.base_seed));
        }
        s.n = static_cast<Vertex>(s.points.size());
    } else {
        s.n = j.value("n", Vertex{0});
    }
    if (j.contains("out_csv") && !j["out_csv"].is_null())
        *out_csv = j["out_csv"].get<std::string>();
    return s;
}

int run_experiment(const ExperimentOpts& o) {
    const Json j = load_json_file(o.spec_file);
    require(j.value("format", 0) == kFormatVersion, "experiment spec needs \"format\": 1");

    std::optional<std::string> out_csv = o.out;

    if (j.contains("n_list")) {
        const auto n_list = j["n_list"].get<std::vector<Vertex>>();
        std::optional<double> delta;
        if (j.contains("delta") && !j["delta"].is_null()) delta = j["delta"].get<double>();
        const auto rows = edge_scaling(n_list, dbl_at(j, "rho"), delta,
                                       j.value("c_const", 1.0), j.value("seed", std::uint64_t{0}));
        if (!out_csv && j.contains("out_csv") && !j["out_csv"].is_null())
            out_csv = j["out_csv"].get<std::string>();
        emit_text(out_csv, edge_scaling_csv(rows));
        if (out_csv) std::printf("edge scaling: %zu sizes -> %s\n", rows.size(), out_csv->c_str());
        return 0;
    }

    std::optional<std::string> spec_out;
    const ExperimentSpec spec = parse_experiment(j, &spec_out);
    if (!out_csv) out_csv = spec_out;
    const Summary sum = run_trials(spec);
    emit_text(out_csv, summary_csv(spec, sum));

    std::FILE* f = out_csv ? stdout : stderr;
    if (!sum.loss_defined) {
        std::fprintf(f, "trials=%" PRIu64 " loss undefined (empty attack)\n", sum.trials);
    } else {
        std::fprintf(f,
                     "trials=%" PRIu64 " mean_loss=%.6g ci95_upper=%.6g tail_freq=%.6g"
                     " tail_ci95=%.6g defects=%" PRIu64 "\n",
                     sum.trials, sum.mean_loss, sum.mean_loss_ci95, sum.tail_freq,
                     sum.tail_ci95, sum.defect_count);
    }
    return sum.defect_count == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reliable geometric spanners: build, attack, verify"};
    app.require_subcommand(1);

    BuildOpts bo;
    auto* build = app.add_subcommand("build", "construct a spanner and write it as JSON");
    build->add_option("--n", bo.n, "number of vertices (1-d) or generated points (hd)");
    build->add_option("--points-file", bo.points_file, "points, one per line");
    build->add_option("--rho", bo.rho, "attack fraction the spanner must withstand")
        ->required();
    build->add_option("--delta", bo.delta, "failure budget for the probabilistic variant");
    build->add_option("--eps", bo.eps, "stretch slack; selects the d-dimensional build");
    build->add_option("--dim", bo.dim, "dimension for generated points (default 1)");
    build->add_option("--c-const", bo.c_const, "constant scale in eps_step (default 1)");
    build->add_option("--seed", bo.seed, "construction seed (random if absent)");
    build->add_option("--out", bo.out, "output file (stdout if absent)");
    build->add_option("--edges", bo.edges, "edge storage: auto|implicit|explicit")
        ->check(CLI::IsMember({"auto", "implicit", "explicit"}));

    AttackOpts ao;
    auto* attack = app.add_subcommand("attack", "generate an attack and write it as JSON");
    attack->add_option("--kind", ao.kind,
                       "uniform|block|multiblock|periodic|custom|remark-middle")
        ->required();
    attack->add_option("--n", ao.n, "universe size");
    attack->add_option("--size", ao.size, "number of removed vertices");
    attack->add_option("--seed", ao.seed, "attack seed (random if absent)");
    attack->add_option("--blocks", ao.blocks, "runs for multiblock (default 4)");
    attack->add_option("--vertices", ao.vertices, "explicit list for --kind custom")
        ->delimiter(',');
    attack->add_option("--spanner", ao.spanner_file, "spanner file for --kind remark-middle");
    attack->add_option("--out", ao.out, "output file (stdout if absent)");

    LossOpts lo;
    auto* loss = app.add_subcommand("loss", "damage report for a spanner under an attack");
    loss->add_option("--spanner", lo.spanner_file, "spanner JSON")->required();
    loss->add_option("--attack", lo.attack_file, "attack JSON")->required();
    loss->add_option("--out", lo.out, "output file (stdout if absent)");

    PathOpts po;
    auto* path = app.add_subcommand("path", "residual path between two survivors");
    path->add_option("--spanner", po.spanner_file, "spanner JSON")->required();
    path->add_option("--attack", po.attack_file, "attack JSON (empty attack if absent)");
    path->add_option("--u", po.u, "first endpoint")->required();
    path->add_option("--v", po.v, "second endpoint")->required();

    LsoOpts so;
    auto* lso = app.add_subcommand("lso-check", "verify the ordering locality property");
    lso->add_option("--varsigma", so.varsigma, "locality parameter in (0,1)")->required();
    lso->add_option("--dim", so.dim, "dimension")->required();
    lso->add_option("--pairs", so.pairs, "random pairs to check")->required();
    lso->add_option("--seed", so.seed, "pair seed (random if absent)");

    ExperimentOpts eo;
    auto* exp = app.add_subcommand("experiment", "run a Monte Carlo experiment file");
    exp->add_option("--spec", eo.spec_file, "experiment description JSON")->required();
    exp->add_option("--out", eo.out, "override the file's out_csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*build) return run_build(bo);
        if (*attack) return run_attack(ao);
        if (*loss) return run_loss(lo);
        if (*path) return run_path(po);
        if (*lso) return run_lso_check(so);
        if (*exp) return run_experiment(eo);
    } catch (const relspan::invalid_input& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
