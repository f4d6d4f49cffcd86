#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "relspan/attacks.hpp"
#include "relspan/loss.hpp"
#include "relspan/shadow.hpp"
#include "relspan/spanner1d.hpp"
#include "relspan/spannerhd.hpp"

namespace relspan {

// insertion-ordered documents so identical inputs serialize byte-identically
using Json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

// Spanner files always carry the construction inputs; edge lists are
// optional ("implicit": true) because the seed reproduces them exactly.
Json spanner1d_to_json(const Spanner1D& s, bool implicit_edges);
Spanner1D spanner1d_from_json(const Json& j);

Json attack_to_json(const Attack& a);
Attack attack_from_json(const Json& j);

Json loss_report_to_json(const LossReport& r);

// Copies of a d-dimensional spanner are always implicit.
Json spannerhd_to_json(const SpannerHD& s);
SpannerHD spannerhd_from_json(const Json& j);

std::string shadow_csv(const ShadowProfile& profile, const RoundClassification& rounds);

// One point per line, whitespace-separated coordinates, '#' comments.
std::vector<Point> read_points_file(const std::string& path);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace relspan
