#pragma once

#include <string>
#include <vector>

#include "ssmseg/labeling.hpp"
#include "ssmseg/mfcc.hpp"
#include "ssmseg/ssm.hpp"

namespace ssmseg {

// All writers below are atomic: temp file in the same directory + rename.
void write_file_atomic(const std::string& path, const std::string& contents);

// Binary PGM P5, maxval 255: pixel(i,j) = round(255*(v-vmin)/(vmax-vmin)).
// High similarity (low BIC) renders dark. Constant matrix -> all pixels 0.
std::string ssm_to_pgm(const SimilarityMatrix& ssm);

// CSV, one row per frame: time (6 decimals) then coefficients.
std::string features_to_csv(const FeatureMatrix& features);

// CSV: segment_index,time_s,score
std::string novelty_to_csv(const NoveltyCurve& nov, const SimilarityMatrix& ssm);

// One SPEAKER line per segment, labels newsreader/other.
std::string segments_to_rttm(const std::vector<Segment>& segments,
                             const std::string& file_id);

}  // namespace ssmseg
