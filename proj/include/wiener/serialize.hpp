#pragma once

#include "wiener/bernstein.hpp"
#include "wiener/criteria.hpp"
#include "wiener/fourier.hpp"
#include "wiener/hardy.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>

namespace wiener {

using Json = nlohmann::json;

inline std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline Json to_json(const CriterionVerdict& v) {
    Json j;
    j["rule"] = v.rule_id;
    j["status"] = to_string(v.status);
    if (v.margin)
        j["margin"] = format_rational(*v.margin);
    else
        j["margin"] = nullptr;
    Json w = Json::object();
    for (const auto& [key, val] : v.witness) w[key] = val;
    j["witness"] = w;
    j["notes"] = v.notes;
    if (const RuleInfo* info = find_rule(v.rule_id)) {
        j["sharpness"] = info->sharpness == Sharpness::sharp ? "sharp" : "unknown";
    }
    return j;
}

inline std::string scale_key(const std::array<int, 3>& s, int d) {
    std::string key;
    for (int j = 0; j < d; ++j) {
        if (j) key += ",";
        key += std::to_string(s[static_cast<std::size_t>(j)]);
    }
    return key;
}

inline Json to_json(const TailFit& f) {
    Json j;
    j["verdict"] = to_string(f.verdict);
    if (f.ratio_valid)
        j["ratio"] = f.ratio;
    else
        j["ratio"] = nullptr;
    return j;
}

inline Json to_json(const DyadicReport& rep) {
    Json j;
    j["d"] = rep.d;
    j["verdict"] = to_string(rep.verdict);
    j["partial_sum"] = rep.partial_sum;
    j["tail_ratio"] = rep.tail_ratio;
    Json ranges = Json::array();
    for (const ScaleRange& r : rep.ranges) ranges.push_back(Json{{"lo", r.lo}, {"hi", r.hi}});
    j["ranges"] = ranges;
    Json tails = Json::array();
    for (const AxisTailDiagnostics& t : rep.axis_tails)
        tails.push_back(Json{{"coarse_end", to_json(t.low)}, {"fine_end", to_json(t.high)}});
    j["axis_tails"] = tails;
    Json terms = Json::object();
    for (const auto& [s, v] : rep.terms) terms[scale_key(s, rep.d)] = v;
    j["terms"] = terms;
    return j;
}

inline void write_terms_csv(const DyadicReport& rep, std::ostream& os) {
    for (int j = 0; j < rep.d; ++j) os << "s" << (j + 1) << ",";
    os << "term\n";
    for (const auto& [s, v] : rep.terms) {
        for (int j = 0; j < rep.d; ++j) os << s[static_cast<std::size_t>(j)] << ",";
        os << csv_double(v) << "\n";
    }
}

inline Json to_json(const HardyReport& rep, int d) {
    Json j;
    j["q"] = rep.q.str();
    j["Q"] = rep.Q.str();
    Json h = Json::array();
    for (int i = 0; i < d; ++i) h.push_back(rep.h[static_cast<std::size_t>(i)]);
    j["h"] = h;
    j["averaged_axes"] = rep.k;
    j["lhs"] = rep.lhs;
    j["rhs_core"] = rep.rhs_core;
    j["ratio"] = rep.ratio;
    return j;
}

inline Json to_json(const MixedDifferenceBoundReport& rep) {
    return Json{{"lhs_sup", rep.lhs_sup}, {"bound", rep.bound}, {"ratio", rep.ratio}};
}

inline Json to_json(const ATrend& trend) {
    Json j;
    Json entries = Json::array();
    for (const ATrendEntry& e : trend.entries)
        entries.push_back(Json{{"R", e.R}, {"N", e.N}, {"l1", e.l1},
                               {"parseval_residual", e.parseval_residual}});
    j["entries"] = entries;
    j["slope"] = trend.slope;
    j["classification"] = trend.classification;
    return j;
}

inline void write_trend_csv(const ATrend& trend, std::ostream& os) {
    os << "R,N,l1,parseval_residual\n";
    for (const ATrendEntry& e : trend.entries)
        os << csv_double(e.R) << "," << e.N << "," << csv_double(e.l1) << ","
           << csv_double(e.parseval_residual) << "\n";
}

}  // namespace wiener
