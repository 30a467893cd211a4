#include "vmp/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vmp/errors.hpp"

namespace vmp {

void Report::merge(const Report& other) {
    points.insert(points.end(), other.points.begin(), other.points.end());
    values.insert(values.end(), other.values.begin(), other.values.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool Report::ok() const { return violations() == 0; }

std::size_t Report::violations() const {
    return std::count_if(points.begin(), points.end(), [](const CheckPoint& c) { return !c.ok && !c.informational; });
}

std::size_t Report::count(const std::string& label) const {
    return std::count_if(points.begin(), points.end(), [&](const CheckPoint& c) { return c.label == label; });
}

double Report::worst_margin(const std::string& label) const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& c : points)
        if (label.empty() || c.label == label) w = std::min(w, c.margin);
    return w;
}

double Report::worst_relative_margin(const std::string& label) const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& c : points)
        if ((label.empty() || c.label == label) && c.lhs != 0) w = std::min(w, c.margin / std::fabs(c.lhs));
    return w;
}

const CheckPoint* Report::first_violation() const {
    for (const auto& c : points)
        if (!c.ok && !c.informational) return &c;
    return nullptr;
}

double Report::value(const std::string& name) const {
    for (const auto& [k, v] : values)
        if (k == name) return v;
    throw std::out_of_range("report has no value named " + name);
}

nlohmann::ordered_json Report::to_json(bool include_points) const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["ok"] = ok();
    j["checks"] = points.size();
    j["violations"] = violations();
    const double w = worst_margin();
    j["worst_margin"] = std::isfinite(w) ? nlohmann::ordered_json(w) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json vals = nlohmann::ordered_json::object();
    for (const auto& [k, v] : values) vals[k] = v;
    j["values"] = vals;
    j["notes"] = notes;
    if (include_points) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : points) {
            nlohmann::ordered_json p;
            p["label"] = c.label;
            p["x"] = c.x;
            p["m"] = c.m;
            p["lhs"] = c.lhs;
            p["rhs"] = c.rhs;
            p["margin"] = c.margin;
            p["err"] = c.err;
            p["ok"] = c.ok;
            if (c.informational) p["informational"] = true;
            arr.push_back(std::move(p));
        }
        j["points"] = std::move(arr);
    }
    return j;
}

std::vector<double> geometric_grid(double lo, double hi, int n, bool with_zero) {
    if (!(lo > 0) || !(hi > lo) || n < 2) throw DomainError("geometric_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g;
    if (with_zero) g.push_back(0);
    const double r = std::log(hi / lo);
    for (int i = 0; i < n; ++i) g.push_back(i == n - 1 ? hi : lo * std::exp(r * i / (n - 1)));
    return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (!(hi > lo) || n < 2) throw DomainError("linear_grid: need lo < hi and n >= 2");
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
    return g;
}

std::vector<double> standard_grid(bool with_zero) { return geometric_grid(1e-2, 1e2, 200, with_zero); }

}  // namespace vmp
