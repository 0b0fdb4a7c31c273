#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shoptrack/errors.hpp"

namespace shoptrack {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point2D& a, const Point2D& b);
double squared_distance(const Point2D& a, const Point2D& b);

// Axis-aligned box in pixel coordinates, corners ordered min <= max.
struct BBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;
};

// Finite coordinates and ordered corners.
bool bbox_valid(const BBox& b);
Point2D bbox_center(const BBox& b);

enum class Gender { female, male };

// Buckets used by every demographic report, ordered youngest to oldest.
enum class AgeGroup { child, youth, middle_aged, elderly };

inline constexpr std::array<AgeGroup, 4> kAgeGroups = {
    AgeGroup::child, AgeGroup::youth, AgeGroup::middle_aged, AgeGroup::elderly};

// Maps an age in years to its group: 1-17 child, 18-29 youth, 30-49
// middle_aged, 50-90 elderly. 0 clamps to child and 91-120 to elderly so
// noisy age estimates never drop a customer. Outside [0, 120] throws
// ValidationError.
AgeGroup age_group(int age_years);

std::string_view to_string(AgeGroup g);
std::string_view to_string(Gender g);
std::optional<Gender> gender_from_string(std::string_view s);
std::optional<AgeGroup> age_group_from_string(std::string_view s);

// Recommended 7-class expression vocabulary. Arbitrary labels are accepted
// throughout; this set is what annotation pipelines usually emit.
inline constexpr std::array<std::string_view, 7> kExpressionVocabulary = {
    "angry", "disgust", "fear", "happy", "sad", "surprise", "neutral"};

// Customer and garment tracking ids live in disjoint namespaces. Ingest
// prefixes raw ids with "c:" / "g:" so the two kinds can never collide when
// mixed in one point set; file writers strip the prefix again.
std::string customer_key(std::string_view raw);
std::string garment_key(std::string_view raw);
std::string_view raw_id(std::string_view key);
bool is_customer_key(std::string_view key);
bool is_garment_key(std::string_view key);

struct CustomerObservation {
    std::string tracking_id; // namespaced key, see customer_key()
    std::int64_t frame = 0;
    BBox bbox;
    int age_years = 0;
    Gender gender = Gender::female;
    std::string expression;
};

struct GarmentObservation {
    std::string tracking_id; // namespaced key, see garment_key()
    std::int64_t frame = 0;
    BBox bbox;
    std::string color;
};

// Everything annotated on one video frame.
struct FrameAnnotations {
    std::int64_t frame = 0;
    std::vector<CustomerObservation> customers;
    std::vector<GarmentObservation> garments;
};

struct EngineConfig {
    double garment_weight = 10.0;
    double customer_weight = 1.0;
    double mindist = 20.0;        // px displacement that triggers re-clustering
    double frame_duration = 0.04; // seconds per frame (25 fps CCTV)
    int wkm_max_iters = 100;
    double wkm_tol = 1e-6; // px

    // Throws ValidationError on nonsensical settings. mindist == 0 is legal
    // and means "re-cluster whenever anything moves at all".
    void validate() const;
};

} // namespace shoptrack
