#include "relspan/json_io.hpp"

#include <fstream>
#include <sstream>

namespace relspan {
namespace {

void check_format(const Json& j, const char* type) {
    if (!j.is_object() || !j.contains("format") || j["format"] != kFormatVersion)
        throw invalid_input("unsupported file format");
    if (!j.contains("type") || j["type"] != type)
        throw invalid_input(std::string("expected a ") + type + " file");
}

std::optional<double> optional_number(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

Json spanner1d_to_json(const Spanner1D& s, bool implicit_edges) {
    Json j;
    j["format"] = kFormatVersion;
    j["type"] = "spanner1d";
    j["seed"] = s.seed;
    Json params;
    params["rho"] = s.params.rho;
    params["delta"] = s.params.delta ? Json(*s.params.delta) : Json(nullptr);
    params["c_const"] = s.params.c_const;
    params["sp"] = s.params.sp;
    params["eps_step"] = s.params.eps_step;
    params["M"] = s.params.M;
    params["degenerate"] = s.params.degenerate;
    j["params"] = std::move(params);
    Json grad;
    grad["n"] = s.gradation.n;
    grad["seed"] = s.gradation.seed;
    grad["level_of"] = s.gradation.level_of;
    j["gradation"] = std::move(grad);
    j["implicit"] = implicit_edges;
    Json levels = Json::array();
    for (const auto& lv : s.levels) {
        Json entry;
        entry["i"] = lv.i;
        entry["conn"] = lv.conn;
        entry["size"] = lv.members.size();
        if (!implicit_edges) {
            Json edges = Json::array();
            const std::uint64_t m = lv.members.size();
            for (std::uint64_t r = 0; r < m; ++r) {
                const std::uint64_t hi = std::min(m - 1, r + lv.conn);
                for (std::uint64_t k = r + 1; k <= hi; ++k)
                    edges.push_back({lv.members[r], lv.members[k]});
            }
            entry["edges"] = std::move(edges);
        }
        levels.push_back(std::move(entry));
    }
    j["levels"] = std::move(levels);
    return j;
}

Spanner1D spanner1d_from_json(const Json& j) {
    check_format(j, "spanner1d");
    try {
        const Vertex n = j.at("gradation").at("n").get<Vertex>();
        const std::uint64_t seed = j.at("seed").get<std::uint64_t>();
        const Json& params = j.at("params");
        Spanner1D s = build_1d(n, params.at("rho").get<double>(),
                               optional_number(params, "delta"),
                               params.at("c_const").get<double>(), seed);
        const auto level_of = j.at("gradation").at("level_of").get<std::vector<std::uint8_t>>();
        if (level_of != s.gradation.level_of || s.params.M != params.at("M").get<int>())
            throw invalid_input("spanner file inconsistent with its seed");
        return s;
    } catch (const Json::exception& e) {
        throw invalid_input(std::string("malformed spanner file: ") + e.what());
    }
}

Json attack_to_json(const Attack& a) {
    Json j;
    j["format"] = kFormatVersion;
    j["type"] = "attack";
    j["kind"] = to_string(a.kind);
    j["n"] = a.n;
    j["seed"] = a.seed;
    j["oblivious"] = a.oblivious;
    j["vertices"] = a.vertices;
    return j;
}

Attack attack_from_json(const Json& j) {
    check_format(j, "attack");
    try {
        Attack a;
        a.kind = attack_kind_from_string(j.at("kind").get<std::string>());
        a.n = j.at("n").get<Vertex>();
        a.seed = j.at("seed").get<std::uint64_t>();
        a.oblivious = j.at("oblivious").get<bool>();
        a.vertices = j.at("vertices").get<VertexList>();
        for (std::size_t k = 0; k < a.vertices.size(); ++k) {
            require(a.vertices[k] >= 1 && a.vertices[k] <= a.n,
                    "attack vertex out of range");
            require(k == 0 || a.vertices[k - 1] < a.vertices[k],
                    "attack vertices must be strictly increasing");
        }
        return a;
    } catch (const Json::exception& e) {
        throw invalid_input(std::string("malformed attack file: ") + e.what());
    }
}

Json loss_report_to_json(const LossReport& r) {
    Json j;
    j["format"] = kFormatVersion;
    j["type"] = "loss_report";
    j["variant"] = r.variant;
    j["attack_size"] = r.attack_size;
    j["bad_pairs"] = r.bad_pairs;
    j["extension_lower"] = r.extension_lower;
    j["extension_upper"] = r.extension_upper;
    j["exact"] = r.exact;
    j["loss_lower"] = r.loss_lower;
    j["loss_upper"] = r.loss_upper;
    j["stairway_bad"] = r.stairway_bad;
    j["witness"] = r.witness;
    return j;
}

Json spannerhd_to_json(const SpannerHD& s) {
    Json j;
    j["format"] = kFormatVersion;
    j["type"] = "spannerhd";
    j["seed"] = s.seed;
    Json params;
    params["eps"] = s.params.eps;
    params["rho"] = s.params.rho;
    params["delta"] = s.params.delta ? Json(*s.params.delta) : Json(nullptr);
    params["c_const"] = s.params.c_const;
    params["varsigma"] = s.params.varsigma;
    params["rounds"] = s.params.rounds;
    params["family_count"] = s.params.family_count;
    params["rho_prime"] = s.params.rho_prime;
    params["delta_prime"] =
        s.params.delta_prime ? Json(*s.params.delta_prime) : Json(nullptr);
    j["params"] = std::move(params);
    Json fam;
    fam["varsigma"] = s.family.varsigma;
    fam["dim"] = s.family.dim;
    fam["shifts"] = s.family.shifts;
    fam["block_bits"] = s.family.block_bits;
    fam["frac_bits"] = s.family.frac_bits;
    fam["count"] = s.family.count();
    j["family"] = std::move(fam);
    Json norm;
    norm["scale"] = s.norm_scale;
    norm["offset"] = s.norm_offset;
    j["normalization"] = std::move(norm);
    Json copy;
    copy["eps_step"] = s.copy_template.eps_step;
    copy["sp"] = s.copy_template.sp;
    copy["M"] = s.copy_template.M;
    copy["degenerate"] = s.copy_template.degenerate;
    j["copy_params"] = std::move(copy);
    j["copies_implicit"] = true;
    j["points"] = s.points;
    return j;
}

SpannerHD spannerhd_from_json(const Json& j) {
    check_format(j, "spannerhd");
    try {
        const auto points = j.at("points").get<std::vector<Point>>();
        const Json& params = j.at("params");
        SpannerHD s = build_hd(points, params.at("eps").get<double>(),
                               params.at("rho").get<double>(),
                               optional_number(params, "delta"),
                               params.at("c_const").get<double>(),
                               j.at("seed").get<std::uint64_t>());
        if (s.params.rounds != params.at("rounds").get<int>() ||
            s.params.family_count != params.at("family_count").get<std::uint64_t>() ||
            s.family.block_bits != j.at("family").at("block_bits").get<int>())
            throw invalid_input("spanner file inconsistent with its seed");
        return s;
    } catch (const Json::exception& e) {
        throw invalid_input(std::string("malformed spanner file: ") + e.what());
    }
}

std::string shadow_csv(const ShadowProfile& profile, const RoundClassification& rounds) {
    require(profile.n == rounds.n, "shadow and round profiles disagree on n");
    std::ostringstream out;
    out << "vertex,in_left,in_right,depth\n";
    for (Vertex v = 1; v <= profile.n; ++v) {
        const int depth = rounds.depth_of(v);
        out << v << ',' << (profile.in_left(v) ? 1 : 0) << ','
            << (profile.in_right(v) ? 1 : 0) << ','
            << (depth == kNoDepth ? -1 : depth) << '\n';
    }
    return out.str();
}

std::vector<Point> read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open points file: " + path);
    std::vector<Point> points;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        Point p;
        double x;
        while (row >> x) p.push_back(x);
        if (!row.eof())
            throw invalid_input("bad coordinate in " + path + " line " +
                                std::to_string(lineno));
        if (!points.empty() && p.size() != points.front().size())
            throw invalid_input("inconsistent dimension in " + path + " line " +
                                std::to_string(lineno));
        points.push_back(std::move(p));
    }
    return points;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw invalid_input("invalid JSON in " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write file: " + path);
    out << content;
    if (!out) throw invalid_input("write failed: " + path);
}

}  // namespace relspan
