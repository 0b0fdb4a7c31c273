#include "shoptrack/model.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "shoptrack/format.hpp"

namespace shoptrack {

double squared_distance(const Point2D& a, const Point2D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double distance(const Point2D& a, const Point2D& b) {
    return std::sqrt(squared_distance(a, b));
}

bool bbox_valid(const BBox& b) {
    return std::isfinite(b.x_min) && std::isfinite(b.y_min) && std::isfinite(b.x_max) &&
           std::isfinite(b.y_max) && b.x_min <= b.x_max && b.y_min <= b.y_max;
}

Point2D bbox_center(const BBox& b) {
    return {(b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0};
}

AgeGroup age_group(int age_years) {
    if (age_years < 0 || age_years > 120) {
        throw ValidationError("age " + std::to_string(age_years) + " out of range [0, 120]");
    }
    if (age_years <= 17) return AgeGroup::child;       // 0 clamps down
    if (age_years <= 29) return AgeGroup::youth;
    if (age_years <= 49) return AgeGroup::middle_aged;
    return AgeGroup::elderly;                          // 91-120 clamps up
}

std::string_view to_string(AgeGroup g) {
    switch (g) {
    case AgeGroup::child: return "child";
    case AgeGroup::youth: return "youth";
    case AgeGroup::middle_aged: return "middle_aged";
    case AgeGroup::elderly: return "elderly";
    }
    return "?";
}

std::string_view to_string(Gender g) {
    return g == Gender::female ? "female" : "male";
}

std::optional<Gender> gender_from_string(std::string_view s) {
    if (s == "female") return Gender::female;
    if (s == "male") return Gender::male;
    return std::nullopt;
}

std::optional<AgeGroup> age_group_from_string(std::string_view s) {
    for (AgeGroup g : kAgeGroups) {
        if (to_string(g) == s) return g;
    }
    return std::nullopt;
}

namespace {
constexpr std::string_view kCustomerPrefix = "c:";
constexpr std::string_view kGarmentPrefix = "g:";
} // namespace

std::string customer_key(std::string_view raw) {
    return std::string(kCustomerPrefix) + std::string(raw);
}

std::string garment_key(std::string_view raw) {
    return std::string(kGarmentPrefix) + std::string(raw);
}

bool is_customer_key(std::string_view key) {
    return key.substr(0, 2) == kCustomerPrefix;
}

bool is_garment_key(std::string_view key) {
    return key.substr(0, 2) == kGarmentPrefix;
}

std::string_view raw_id(std::string_view key) {
    if (is_customer_key(key) || is_garment_key(key)) return key.substr(2);
    return key;
}

void EngineConfig::validate() const {
    if (!(garment_weight > 0.0) || !(customer_weight > 0.0)) {
        throw ValidationError("weights must be positive");
    }
    if (garment_weight <= customer_weight) {
        throw ValidationError("garment_weight must exceed customer_weight");
    }
    if (mindist < 0.0 || !std::isfinite(mindist)) {
        throw ValidationError("mindist must be >= 0");
    }
    if (!(frame_duration > 0.0) || !std::isfinite(frame_duration)) {
        throw ValidationError("frame_duration must be positive");
    }
    if (wkm_max_iters < 1) {
        throw ValidationError("wkm_max_iters must be >= 1");
    }
    if (!(wkm_tol >= 0.0)) {
        throw ValidationError("wkm_tol must be >= 0");
    }
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) return "0";
    return std::string(buf, ptr);
}

} // namespace shoptrack
