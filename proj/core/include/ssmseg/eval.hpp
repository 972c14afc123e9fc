#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssmseg/labeling.hpp"

namespace ssmseg {

struct ReferenceAnnotation {
    std::vector<double> change_times_s;  // strictly increasing
    std::map<int, std::string> labels;   // optional per-segment labels

    int n_segments() const { return static_cast<int>(change_times_s.size()) + 1; }
};

// Plain text: one change time per line, '#' comments, optional
// "label <index> <newsreader|other>" lines.
ReferenceAnnotation load_reference(const std::string& path);
void save_reference(const std::string& path, const ReferenceAnnotation& ref);

struct CountComparison {
    int hyp_count = 0;
    int ref_count = 0;
    int delta = 0;  // hyp - ref
};

CountComparison compare_counts(const std::vector<Segment>& hyp,
                               const ReferenceAnnotation& ref);

struct BoundaryScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int matched = 0;
    double tolerance_s = 0.5;
};

// Greedy one-to-one matching in time order; a hyp boundary takes the
// nearest unmatched ref boundary within tolerance_s.
BoundaryScore boundary_prf(const std::vector<double>& hyp_times,
                           const std::vector<double>& ref_times,
                           double tolerance_s);

}  // namespace ssmseg
