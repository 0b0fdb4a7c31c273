#include "shoptrack/analytics.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <tuple>

#include <json.hpp>

#include "shoptrack/errors.hpp"
#include "shoptrack/format.hpp"

namespace shoptrack {

namespace {

using nlohmann::json;

const CustomerProfile& profile_for(const ProfileMap& profiles, const std::string& customer_id) {
    const auto it = profiles.find(customer_id);
    if (it == profiles.end()) {
        throw ValidationError("interval references unknown customer '" +
                              std::string(raw_id(customer_id)) + "'");
    }
    return it->second;
}

const std::string& color_for(const std::map<std::string, std::string>& colors,
                             const std::string& garment_id) {
    const auto it = colors.find(garment_id);
    if (it == colors.end()) {
        throw ValidationError("interval references unknown garment '" +
                              std::string(raw_id(garment_id)) + "'");
    }
    return it->second;
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

} // namespace

ProfileMap build_profiles(const std::vector<FrameAnnotations>& stream) {
    struct Tally {
        std::map<int, std::size_t> ages;
        std::map<Gender, std::size_t> genders;
        std::int64_t first_frame = 0;
        std::int64_t last_frame = 0;
        std::map<std::int64_t, std::string> expressions;
        bool seen = false;
    };
    std::map<std::string, Tally> tallies;
    for (const auto& frame : stream) {
        for (const auto& c : frame.customers) {
            Tally& t = tallies[c.tracking_id];
            if (!t.seen) {
                t.first_frame = c.frame;
                t.seen = true;
            }
            t.last_frame = c.frame;
            ++t.ages[c.age_years];
            ++t.genders[c.gender];
            t.expressions[c.frame] = c.expression;
        }
    }

    ProfileMap profiles;
    for (auto& [id, t] : tallies) {
        CustomerProfile p;
        p.customer_id = id;

        std::size_t best = 0;
        for (const auto& [age, n] : t.ages) {
            if (n > best) {
                best = n;
                p.age_years = age;
            }
        }
        p.group = age_group(p.age_years);

        const std::size_t female = t.genders.count(Gender::female) ? t.genders[Gender::female] : 0;
        const std::size_t male = t.genders.count(Gender::male) ? t.genders[Gender::male] : 0;
        p.gender = male > female ? Gender::male : Gender::female;

        p.first_frame = t.first_frame;
        p.last_frame = t.last_frame;
        p.expressions = std::move(t.expressions);
        profiles.emplace(id, std::move(p));
    }
    return profiles;
}

std::map<std::string, std::string> garment_colors(const std::vector<FrameAnnotations>& stream) {
    std::map<std::string, std::map<std::string, std::size_t>> tallies;
    for (const auto& frame : stream) {
        for (const auto& g : frame.garments) {
            ++tallies[g.tracking_id][g.color];
        }
    }
    std::map<std::string, std::string> colors;
    for (const auto& [id, counts] : tallies) {
        std::size_t best = 0;
        std::string label;
        for (const auto& [color, n] : counts) {
            if (n > best) {
                best = n;
                label = color;
            }
        }
        colors.emplace(id, label);
    }
    return colors;
}

std::map<Gender, double> gender_share(const ProfileMap& profiles) {
    if (profiles.empty()) throw ValidationError("empty population");
    std::size_t female = 0;
    for (const auto& [id, p] : profiles) {
        if (p.gender == Gender::female) ++female;
    }
    const double total = static_cast<double>(profiles.size());
    return {{Gender::female, static_cast<double>(female) * 100.0 / total},
            {Gender::male, static_cast<double>(profiles.size() - female) * 100.0 / total}};
}

std::map<Gender, std::map<AgeGroup, double>> age_share_by_gender(const ProfileMap& profiles) {
    std::map<Gender, std::map<AgeGroup, std::size_t>> counts;
    std::map<Gender, std::size_t> totals;
    for (const auto& [id, p] : profiles) {
        ++counts[p.gender][p.group];
        ++totals[p.gender];
    }
    std::map<Gender, std::map<AgeGroup, double>> shares;
    for (const auto& [gender, by_group] : counts) {
        const double total = static_cast<double>(totals[gender]);
        for (const auto& [group, n] : by_group) {
            shares[gender][group] = static_cast<double>(n) * 100.0 / total;
        }
    }
    return shares;
}

std::map<DemographicKey, DwellStats> dwell_by_demographic(const ProfileMap& profiles,
                                                          double frame_duration) {
    std::map<DemographicKey, std::vector<std::int64_t>> spans;
    for (const auto& [id, p] : profiles) {
        spans[{p.group, p.gender}].push_back(p.last_frame - p.first_frame + 1);
    }
    std::map<DemographicKey, DwellStats> stats;
    for (auto& [key, values] : spans) {
        std::sort(values.begin(), values.end());
        DwellStats s;
        s.count = values.size();
        s.min_seconds = static_cast<double>(values.front()) * frame_duration;
        s.max_seconds = static_cast<double>(values.back()) * frame_duration;
        std::int64_t sum = 0;
        for (const std::int64_t v : values) sum += v;
        s.mean_seconds =
            static_cast<double>(sum) * frame_duration / static_cast<double>(values.size());
        const std::size_t mid = values.size() / 2;
        if (values.size() % 2 == 1) {
            s.median_seconds = static_cast<double>(values[mid]) * frame_duration;
        } else {
            s.median_seconds = static_cast<double>(values[mid - 1] + values[mid]) * frame_duration / 2.0;
        }
        stats.emplace(key, s);
    }
    return stats;
}

std::vector<ExpressionRecord> expression_by_color(
    const ProfileMap& profiles, const std::vector<AssociationInterval>& intervals,
    const std::map<std::string, std::string>& colors) {
    std::map<std::tuple<Gender, int, std::string, std::string>, std::int64_t> counts;
    for (const auto& interval : intervals) {
        const CustomerProfile& p = profile_for(profiles, interval.customer_id);
        const std::string& color = color_for(colors, interval.garment_id);
        auto it = p.expressions.lower_bound(interval.start_frame);
        for (; it != p.expressions.end() && it->first <= interval.end_frame; ++it) {
            ++counts[{p.gender, p.age_years, color, it->second}];
        }
    }
    std::vector<ExpressionRecord> records;
    records.reserve(counts.size());
    for (const auto& [key, n] : counts) {
        records.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                           std::get<3>(key), n});
    }
    return records;
}

std::map<std::pair<DemographicKey, std::string>, double> time_by_color(
    const ProfileMap& profiles, const std::vector<AssociationInterval>& intervals,
    const std::map<std::string, std::string>& colors, double frame_duration) {
    std::map<std::pair<DemographicKey, std::string>, std::int64_t> frames;
    for (const auto& interval : intervals) {
        const CustomerProfile& p = profile_for(profiles, interval.customer_id);
        const std::string& color = color_for(colors, interval.garment_id);
        frames[{{p.group, p.gender}, color}] += interval.end_frame - interval.start_frame + 1;
    }
    std::map<std::pair<DemographicKey, std::string>, double> seconds;
    for (const auto& [key, n] : frames) {
        seconds.emplace(key, static_cast<double>(n) * frame_duration);
    }
    return seconds;
}

ReportBundle build_reports(const std::vector<FrameAnnotations>& stream,
                           const std::vector<AssociationInterval>& intervals,
                           const EngineConfig& config) {
    config.validate();
    const ProfileMap profiles = build_profiles(stream);
    const auto colors = garment_colors(stream);
    ReportBundle bundle;
    bundle.gender_share = gender_share(profiles);
    bundle.age_share_by_gender = age_share_by_gender(profiles);
    bundle.dwell_by_demographic = dwell_by_demographic(profiles, config.frame_duration);
    bundle.expression_by_color = expression_by_color(profiles, intervals, colors);
    bundle.time_by_color = time_by_color(profiles, intervals, colors, config.frame_duration);
    return bundle;
}

void write_report_json(std::ostream& out, const ReportBundle& bundle) {
    json j;

    j["gender_share"] = json::object();
    for (const auto& [gender, percent] : bundle.gender_share) {
        j["gender_share"][std::string(to_string(gender))] = percent;
    }

    j["age_share_by_gender"] = json::object();
    for (const auto& [gender, by_group] : bundle.age_share_by_gender) {
        json m = json::object();
        for (const auto& [group, percent] : by_group) {
            m[std::string(to_string(group))] = percent;
        }
        j["age_share_by_gender"][std::string(to_string(gender))] = std::move(m);
    }

    j["dwell_by_demographic"] = json::array();
    for (const auto& [key, s] : bundle.dwell_by_demographic) {
        json e;
        e["age_group"] = std::string(to_string(key.group));
        e["gender"] = std::string(to_string(key.gender));
        e["count"] = s.count;
        e["min_seconds"] = s.min_seconds;
        e["max_seconds"] = s.max_seconds;
        e["mean_seconds"] = s.mean_seconds;
        e["median_seconds"] = s.median_seconds;
        j["dwell_by_demographic"].push_back(std::move(e));
    }

    j["expression_by_color"] = json::array();
    for (const auto& r : bundle.expression_by_color) {
        json e;
        e["gender"] = std::string(to_string(r.gender));
        e["age_years"] = r.age_years;
        e["color"] = r.color;
        e["expression"] = r.expression;
        e["count"] = r.count;
        j["expression_by_color"].push_back(std::move(e));
    }

    j["time_by_color"] = json::array();
    for (const auto& [key, secs] : bundle.time_by_color) {
        json e;
        e["age_group"] = std::string(to_string(key.first.group));
        e["gender"] = std::string(to_string(key.first.gender));
        e["color"] = key.second;
        e["seconds"] = secs;
        j["time_by_color"].push_back(std::move(e));
    }

    out << j.dump(2) << '\n';
}

std::vector<std::string> write_report_csvs(const std::filesystem::path& out_dir,
                                           const ReportBundle& bundle) {
    std::vector<std::string> written;
    const auto emit = [&](const std::string& name, const auto& body) {
        std::ofstream out = open_csv(out_dir / name);
        body(out);
        if (!out.good()) throw IoError("write failed for '" + (out_dir / name).string() + "'");
        written.push_back(name);
    };

    emit("fig2a.csv", [&](std::ostream& out) {
        out << "gender,percent\n";
        for (const auto& [gender, percent] : bundle.gender_share) {
            out << to_string(gender) << ',' << format_double(percent) << '\n';
        }
    });

    const auto age_share_csv = [&](Gender gender) {
        return [&, gender](std::ostream& out) {
            out << "age_group,percent\n";
            const auto it = bundle.age_share_by_gender.find(gender);
            if (it == bundle.age_share_by_gender.end()) return;
            for (const auto& [group, percent] : it->second) {
                out << to_string(group) << ',' << format_double(percent) << '\n';
            }
        };
    };
    emit("fig2b.csv", age_share_csv(Gender::female));
    emit("fig2c.csv", age_share_csv(Gender::male));

    emit("fig3.csv", [&](std::ostream& out) {
        out << "age_group,gender,count,min_seconds,max_seconds,mean_seconds,median_seconds\n";
        for (const auto& [key, s] : bundle.dwell_by_demographic) {
            out << to_string(key.group) << ',' << to_string(key.gender) << ',' << s.count << ','
                << format_double(s.min_seconds) << ',' << format_double(s.max_seconds) << ','
                << format_double(s.mean_seconds) << ',' << format_double(s.median_seconds)
                << '\n';
        }
    });

    const auto expression_csv = [&](Gender gender) {
        return [&, gender](std::ostream& out) {
            out << "age_years,color,expression,count\n";
            for (const auto& r : bundle.expression_by_color) {
                if (r.gender != gender) continue;
                out << r.age_years << ',' << r.color << ',' << r.expression << ',' << r.count
                    << '\n';
            }
        };
    };
    emit("fig4_female.csv", expression_csv(Gender::female));
    emit("fig4_male.csv", expression_csv(Gender::male));

    const auto time_csv = [&](Gender gender) {
        return [&, gender](std::ostream& out) {
            out << "age_group,color,seconds\n";
            for (const auto& [key, secs] : bundle.time_by_color) {
                if (key.first.gender != gender) continue;
                out << to_string(key.first.group) << ',' << key.second << ','
                    << format_double(secs) << '\n';
            }
        };
    };
    emit("fig5_female.csv", time_csv(Gender::female));
    emit("fig5_male.csv", time_csv(Gender::male));

    return written;
}

} // namespace shoptrack
