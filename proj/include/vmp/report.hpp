#pragma once

// Pass/fail records for grid verification suites.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace vmp {

struct CheckPoint {
    std::string label;
    double x = 0;
    double m = 0;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;  // positive when the inequality holds
    double err = 0;     // error estimate the margin is judged against
    bool ok = true;
    bool informational = false;  // recorded but never a violation
};

struct Report {
    std::string suite;
    std::vector<CheckPoint> points;
    std::vector<std::pair<std::string, double>> values;  // derived scalars, e.g. crossover points
    std::vector<std::string> notes;

    void add(CheckPoint c) { points.push_back(std::move(c)); }
    void merge(const Report& other);

    bool ok() const;
    std::size_t violations() const;
    std::size_t count(const std::string& label) const;
    // Smallest margin among points with this label (all points if empty).
    double worst_margin(const std::string& label = {}) const;
    // Smallest margin / |lhs|.
    double worst_relative_margin(const std::string& label = {}) const;
    const CheckPoint* first_violation() const;
    double value(const std::string& name) const;

    nlohmann::ordered_json to_json(bool include_points = true) const;
};

// Geometric grid of n points on [lo, hi]; optionally prefixed by 0.
std::vector<double> geometric_grid(double lo, double hi, int n, bool with_zero = false);
std::vector<double> linear_grid(double lo, double hi, int n);
// 200 geometric points on [1e-2, 1e2], plus 0 when requested.
std::vector<double> standard_grid(bool with_zero = false);

}  // namespace vmp
