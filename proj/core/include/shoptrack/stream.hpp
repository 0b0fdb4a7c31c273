#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "shoptrack/model.hpp"

namespace shoptrack {

// Annotation streams are JSON Lines, one object per frame:
//   {"frame": 0,
//    "customers": [{"id": "...", "bbox": [x0,y0,x1,y1], "age": 34,
//                   "gender": "female", "expression": "happy"}],
//    "garments":  [{"id": "...", "bbox": [x0,y0,x1,y1], "color": "Blue"}]}
// Frames must appear in strictly increasing frame order. Raw ids from the
// file are namespaced with customer_key()/garment_key() on ingest.

// Parses one line; throws ValidationError with "line N:" context.
FrameAnnotations parse_frame_line(std::string_view line, std::size_t line_no);

std::string frame_to_json_line(const FrameAnnotations& frame);

// Whole-stream readers throw on the first violation.
std::vector<FrameAnnotations> read_stream(std::istream& in);
std::vector<FrameAnnotations> read_stream_file(const std::filesystem::path& path);

void write_stream(std::ostream& out, const std::vector<FrameAnnotations>& frames);
void write_stream_file(const std::filesystem::path& path,
                       const std::vector<FrameAnnotations>& frames);

struct StreamViolation {
    std::size_t line = 0;
    std::string message;
};

struct StreamSummary {
    std::size_t frames = 0;
    std::size_t customers = 0; // unique ids
    std::size_t garments = 0;  // unique ids
    std::vector<StreamViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Lenient scan that keeps going after violations, collecting at most
// max_violations of them.
StreamSummary validate_stream(std::istream& in, std::size_t max_violations = 20);
StreamSummary validate_stream_file(const std::filesystem::path& path,
                                   std::size_t max_violations = 20);

} // namespace shoptrack
