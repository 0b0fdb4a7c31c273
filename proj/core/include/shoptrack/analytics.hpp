#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "shoptrack/model.hpp"
#include "shoptrack/tracker.hpp"

namespace shoptrack {

struct DemographicKey {
    AgeGroup group = AgeGroup::child;
    Gender gender = Gender::female;

    auto operator<=>(const DemographicKey&) const = default;
};

// One customer aggregated over the whole stream: modal age (ties -> lowest),
// modal gender (ties -> female), per-frame expression labels, presence span.
struct CustomerProfile {
    std::string customer_id;
    Gender gender = Gender::female;
    int age_years = 0;
    AgeGroup group = AgeGroup::child;
    std::int64_t first_frame = 0;
    std::int64_t last_frame = 0;
    std::map<std::int64_t, std::string> expressions;
};

using ProfileMap = std::map<std::string, CustomerProfile>;

ProfileMap build_profiles(const std::vector<FrameAnnotations>& stream);

// Modal color per garment tracking id (annotation flicker resolved by count,
// ties -> lexicographically smallest label).
std::map<std::string, std::string> garment_colors(const std::vector<FrameAnnotations>& stream);

// Percentage of customers per gender; both keys always present. Throws
// ValidationError("empty population") when there are no profiles.
std::map<Gender, double> gender_share(const ProfileMap& profiles);

// Per present gender, percentage per age group; absent genders and zero-count
// groups are omitted.
std::map<Gender, std::map<AgeGroup, double>> age_share_by_gender(const ProfileMap& profiles);

struct DwellStats {
    double min_seconds = 0.0;
    double max_seconds = 0.0;
    double mean_seconds = 0.0;
    double median_seconds = 0.0;
    std::size_t count = 0;
};

// Time spent in store per demographic bucket. A customer's dwell is the span
// from their first to last observed frame, inclusive, regardless of garment
// associations. Empty buckets are omitted.
std::map<DemographicKey, DwellStats> dwell_by_demographic(const ProfileMap& profiles,
                                                          double frame_duration);

struct ExpressionRecord {
    Gender gender = Gender::female;
    int age_years = 0;
    std::string color;
    std::string expression;
    std::int64_t count = 0;
};

// Scatter source: for every interval frame where the customer has an
// observation, one (gender, age, garment color, expression) sample; frames
// without an observation contribute nothing. Overlapping memberships count
// once per associated garment.
std::vector<ExpressionRecord> expression_by_color(
    const ProfileMap& profiles, const std::vector<AssociationInterval>& intervals,
    const std::map<std::string, std::string>& colors);

// Seconds of association per (demographic, garment color); overlapping
// associations accrue on every attended garment.
std::map<std::pair<DemographicKey, std::string>, double> time_by_color(
    const ProfileMap& profiles, const std::vector<AssociationInterval>& intervals,
    const std::map<std::string, std::string>& colors, double frame_duration);

struct ReportBundle {
    std::map<Gender, double> gender_share;
    std::map<Gender, std::map<AgeGroup, double>> age_share_by_gender;
    std::map<DemographicKey, DwellStats> dwell_by_demographic;
    std::vector<ExpressionRecord> expression_by_color;
    std::map<std::pair<DemographicKey, std::string>, double> time_by_color;
};

ReportBundle build_reports(const std::vector<FrameAnnotations>& stream,
                           const std::vector<AssociationInterval>& intervals,
                           const EngineConfig& config);

void write_report_json(std::ostream& out, const ReportBundle& bundle);

// Emits the per-figure plot-data CSVs (fig2a.csv, fig2b.csv, fig2c.csv,
// fig3.csv, fig4_female.csv, fig4_male.csv, fig5_female.csv, fig5_male.csv)
// into out_dir and returns the file names written.
std::vector<std::string> write_report_csvs(const std::filesystem::path& out_dir,
                                           const ReportBundle& bundle);

} // namespace shoptrack
