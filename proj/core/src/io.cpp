#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ssmseg/errors.hpp"
#include "ssmseg/io.hpp"

namespace ssmseg {

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() /
                         (target.filename().string() + ".tmp." +
                          std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write: " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error("short write: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string ssm_to_pgm(const SimilarityMatrix& ssm) {
    const Eigen::Index s = ssm.size();
    const double vmin = ssm.values.minCoeff();
    const double vmax = ssm.values.maxCoeff();
    const double range = vmax - vmin;

    std::ostringstream out;
    out << "P5\n" << s << " " << s << "\n255\n";
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = 0; j < s; ++j) {
            // low BIC (similar) renders dark; constant matrices render 0
            int pixel = 0;
            if (range > 0.0)
                pixel = static_cast<int>(
                    std::lround(255.0 * (ssm.values(i, j) - vmin) / range));
            out.put(static_cast<char>(pixel));
        }
    }
    return out.str();
}

std::string features_to_csv(const FeatureMatrix& features) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    for (Eigen::Index t = 0; t < features.frames(); ++t) {
        out.precision(6);
        out << features.frame_time(t);
        for (Eigen::Index k = 0; k < features.dim(); ++k)
            out << "," << features.vectors(t, k);
        out << "\n";
    }
    return out.str();
}

std::string novelty_to_csv(const NoveltyCurve& nov, const SimilarityMatrix& ssm) {
    std::ostringstream out;
    out << "segment_index,time_s,score\n";
    out.setf(std::ios::fixed);
    out.precision(6);
    for (Eigen::Index i = 0; i < nov.scores.size(); ++i)
        out << i << "," << ssm.segment_times[i] << "," << nov.scores[i] << "\n";
    return out.str();
}

std::string segments_to_rttm(const std::vector<Segment>& segments,
                             const std::string& file_id) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const auto& s : segments)
        out << "SPEAKER " << file_id << " 1 " << s.start_s << " "
            << (s.end_s - s.start_s) << " <NA> <NA> " << to_string(s.label)
            << " <NA> <NA>\n";
    return out.str();
}

}  // namespace ssmseg
