#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssmseg/errors.hpp"
#include "ssmseg/eval.hpp"
#include "ssmseg/io.hpp"

namespace ssmseg {

ReferenceAnnotation load_reference(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);

    ReferenceAnnotation ref;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "label") {
            int index;
            std::string name;
            if (!(ss >> index >> name) || (name != "newsreader" && name != "other"))
                throw Error(path + ":" + std::to_string(lineno) + ": bad label line");
            ref.labels[index] = name;
        } else {
            try {
                ref.change_times_s.push_back(std::stod(first));
            } catch (const std::exception&) {
                throw Error(path + ":" + std::to_string(lineno) +
                            ": expected a change time in seconds");
            }
        }
    }
    if (!std::is_sorted(ref.change_times_s.begin(), ref.change_times_s.end()))
        throw Error(path + ": change times must be increasing");
    return ref;
}

void save_reference(const std::string& path, const ReferenceAnnotation& ref) {
    std::ostringstream out;
    out << "# change points (seconds)\n";
    for (double t : ref.change_times_s) {
        out.setf(std::ios::fixed);
        out.precision(3);
        out << t << "\n";
    }
    for (const auto& [index, name] : ref.labels)
        out << "label " << index << " " << name << "\n";
    write_file_atomic(path, out.str());
}

CountComparison compare_counts(const std::vector<Segment>& hyp,
                               const ReferenceAnnotation& ref) {
    CountComparison c;
    c.hyp_count = static_cast<int>(hyp.size());
    c.ref_count = ref.n_segments();
    c.delta = c.hyp_count - c.ref_count;
    return c;
}

BoundaryScore boundary_prf(const std::vector<double>& hyp_times,
                           const std::vector<double>& ref_times,
                           double tolerance_s) {
    BoundaryScore score;
    score.tolerance_s = tolerance_s;

    std::vector<bool> taken(ref_times.size(), false);
    for (double h : hyp_times) {
        int best = -1;
        double best_dist = tolerance_s;
        for (std::size_t r = 0; r < ref_times.size(); ++r) {
            if (taken[r]) continue;
            const double dist = std::abs(h - ref_times[r]);
            if (dist <= best_dist) {
                best = static_cast<int>(r);
                best_dist = dist;
            }
        }
        if (best >= 0) {
            taken[best] = true;
            ++score.matched;
        }
    }

    auto rate = [&](std::size_t denom) {
        if (denom == 0) return hyp_times.empty() && ref_times.empty() ? 1.0 : 0.0;
        return static_cast<double>(score.matched) / static_cast<double>(denom);
    };
    score.precision = rate(hyp_times.size());
    score.recall = rate(ref_times.size());
    score.f1 = score.precision + score.recall > 0
                   ? 2.0 * score.precision * score.recall /
                         (score.precision + score.recall)
                   : 0.0;
    return score;
}

}  // namespace ssmseg
