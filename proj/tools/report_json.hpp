#pragma once

#include <json.hpp>

#include "mpv/cval.hpp"
#include "mpv/shiftval.hpp"

// JSON mapping for the report types printed by the command-line tool.
// Rationals are written as strings ("9/2"), big integers likewise.

namespace mpv {

inline void to_json(nlohmann::json& j, const SlackEntry& e) {
    j = {{"i", e.i}, {"j", e.j}, {"valuation", e.valuation}, {"bound", e.bound.get_str()}, {"slack", e.slack.get_str()}};
}

inline void from_json(const nlohmann::json& j, SlackEntry& e) {
    e.i = j.at("i").get<unsigned>();
    e.j = j.at("j").get<unsigned>();
    e.valuation = j.at("valuation").get<std::int64_t>();
    e.bound = Rat(j.at("bound").get<std::string>());
    e.bound.canonicalize();
    e.slack = Rat(j.at("slack").get<std::string>());
    e.slack.canonicalize();
}

inline void to_json(nlohmann::json& j, const ValuationReport& r) {
    j = {{"kind", "valuation_report"},
         {"level", r.level},
         {"p", r.p},
         {"n", r.n.get_str()},
         {"C", r.C},
         {"rule", r.rule},
         {"entries", r.entries},
         {"min_slack", r.min_slack ? nlohmann::json(r.min_slack->get_str()) : nlohmann::json(nullptr)},
         {"violations", r.violations},
         {"skipped", r.skipped},
         {"note", r.note}};
}

inline void from_json(const nlohmann::json& j, ValuationReport& r) {
    r.level = j.at("level").get<std::uint64_t>();
    r.p = j.at("p").get<std::uint64_t>();
    r.n = Rat(j.at("n").get<std::string>());
    r.n.canonicalize();
    r.C = j.at("C").get<unsigned>();
    r.rule = j.at("rule").get<std::string>();
    r.entries = j.at("entries").get<std::vector<SlackEntry>>();
    r.min_slack.reset();
    if (!j.at("min_slack").is_null()) {
        Rat m(j.at("min_slack").get<std::string>());
        m.canonicalize();
        r.min_slack = m;
    }
    r.violations = j.at("violations").get<std::vector<SlackEntry>>();
    r.skipped = j.at("skipped").get<bool>();
    r.note = j.at("note").get<std::string>();
}

inline void to_json(nlohmann::json& j, const CValResult& r) {
    j = {{"kind", "cval"}, {"level", r.level}, {"p", r.p}, {"J", r.J.get_str()}, {"value", r.value}, {"warning", r.warning}};
}

inline void from_json(const nlohmann::json& j, CValResult& r) {
    r.level = j.at("level").get<std::uint64_t>();
    r.p = j.at("p").get<std::uint64_t>();
    r.J = Int(j.at("J").get<std::string>());
    r.value = j.at("value").get<unsigned>();
    r.warning = j.at("warning").get<std::string>();
}

inline void to_json(nlohmann::json& j, const ScanResult& s) {
    nlohmann::json entries = nlohmann::json::array();
    for (auto [p, c] : s.entries) entries.push_back({{"p", p}, {"C", c}});
    j = {{"kind", "cval_scan"}, {"level", s.level},       {"J", s.J.get_str()},   {"D", s.D},
         {"pmax", s.pmax},      {"char0", s.char0},       {"prime_bound", s.prime_bound},
         {"entries", entries},  {"violations", s.violations}};
}

inline void from_json(const nlohmann::json& j, ScanResult& s) {
    s.level = j.at("level").get<std::uint64_t>();
    s.J = Int(j.at("J").get<std::string>());
    s.D = j.at("D").get<std::int64_t>();
    s.pmax = j.at("pmax").get<std::uint64_t>();
    s.char0 = j.at("char0").get<unsigned>();
    s.prime_bound = j.at("prime_bound").get<std::uint64_t>();
    s.entries.clear();
    for (const auto& e : j.at("entries")) s.entries.emplace_back(e.at("p").get<std::uint64_t>(), e.at("C").get<unsigned>());
    s.violations = j.at("violations").get<std::vector<std::uint64_t>>();
}

inline bool operator==(const SlackEntry& a, const SlackEntry& b) {
    return a.i == b.i && a.j == b.j && a.valuation == b.valuation && a.bound == b.bound && a.slack == b.slack;
}

inline bool operator==(const ValuationReport& a, const ValuationReport& b) {
    return a.level == b.level && a.p == b.p && a.n == b.n && a.C == b.C && a.rule == b.rule && a.entries == b.entries &&
           a.min_slack == b.min_slack && a.violations == b.violations && a.skipped == b.skipped && a.note == b.note;
}

}  // namespace mpv
