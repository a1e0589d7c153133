#include "rfmr/rates.hpp"

#include <algorithm>
#include <cmath>

namespace rfmr {

namespace {

double component_min(const RateComponent& c) {
    if (const auto* v = std::get_if<double>(&c)) return *v;
    if (const auto* s = std::get_if<SinusoidRate>(&c)) return s->offset - std::abs(s->amplitude);
    const auto& t = std::get<TableRate>(c);
    return *std::min_element(t.values.begin(), t.values.end());
}

double component_max(const RateComponent& c) {
    if (const auto* v = std::get_if<double>(&c)) return *v;
    if (const auto* s = std::get_if<SinusoidRate>(&c)) return s->offset + std::abs(s->amplitude);
    const auto& t = std::get<TableRate>(c);
    return *std::max_element(t.values.begin(), t.values.end());
}

void validate_component(const RateComponent& c, double period) {
    if (const auto* t = std::get_if<TableRate>(&c)) {
        if (t->values.empty() || t->knots.size() != t->values.size())
            throw ConfigError("table rate needs matching, nonempty knots/values");
        if (t->knots.front() != 0.0 || !std::is_sorted(t->knots.begin(), t->knots.end()))
            throw ConfigError("table rate knots must start at 0 and be sorted");
        if (t->knots.back() >= period && period > 0.0)
            throw ConfigError("table rate knots must lie inside the period");
    }
    if (component_min(c) <= 0.0) throw ConfigError("transition rates must be strictly positive");
}

}  // namespace

RateSchedule::RateSchedule(std::vector<RateComponent> c, double period)
    : components_(std::move(c)), period_(period) {
    if (components_.size() < 2) throw ConfigError("need at least 2 sites");
    delta1_ = component_min(components_[0]);
    delta2_ = component_max(components_[0]);
    for (const auto& comp : components_) {
        validate_component(comp, period_);
        delta1_ = std::min(delta1_, component_min(comp));
        delta2_ = std::max(delta2_, component_max(comp));
    }
}

RateSchedule RateSchedule::constant(std::vector<double> rates) {
    std::vector<RateComponent> c(rates.begin(), rates.end());
    return RateSchedule(std::move(c), 0.0);
}

RateSchedule RateSchedule::periodic(std::vector<RateComponent> components, double period) {
    if (period <= 0.0) throw ConfigError("period must be positive");
    return RateSchedule(std::move(components), period);
}

double RateSchedule::rate(int site, double t) const {
    const RateComponent& c = components_.at(static_cast<size_t>(site));
    if (const auto* v = std::get_if<double>(&c)) return *v;
    if (const auto* s = std::get_if<SinusoidRate>(&c))
        return s->offset + s->amplitude * std::sin(s->omega * t + s->phase);
    const auto& tab = std::get<TableRate>(c);
    double phase = std::fmod(t, period_);
    if (phase < 0.0) phase += period_;
    auto it = std::upper_bound(tab.knots.begin(), tab.knots.end(), phase);
    return tab.values[static_cast<size_t>(it - tab.knots.begin()) - 1];
}

Vector RateSchedule::rates_at(double t) const {
    Vector out(size());
    for (int i = 0; i < size(); ++i) out[i] = rate(i, t);
    return out;
}

Vector clamp_to_cube(const Vector& x, double eps) {
    Vector out = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] < -eps || x[i] > 1.0 + eps)
            throw ConfigError("state entry outside the unit cube beyond round-off");
        out[i] = std::clamp(x[i], 0.0, 1.0);
    }
    return out;
}

bool in_cube(const Vector& x, double slack) {
    return (x.array() >= -slack).all() && (x.array() <= 1.0 + slack).all();
}

}  // namespace rfmr
