#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "covlab/experiment.hpp"
#include "covlab/geometry.hpp"

namespace covlab {

struct PlotOptions {
    std::string title = "coverage vs node count";
    // Labelled reference curves (n -> percent) drawn as hollow markers.
    std::map<std::string, std::map<int, double>> references;
    int width = 760;
    int height = 480;
};

// Line chart of mean coverage per strategy over node counts (one polyline per
// strategy, y in percent). Self-contained SVG 1.1, no external assets.
std::string plot_svg(const SweepResult& result, const PlotOptions& options = {});
void emit_plot(const SweepResult& result, const std::filesystem::path& path,
               const PlotOptions& options = {});

struct SnapshotOptions {
    bool draw_subareas = false;
    int target_per_subarea = 50;  // rebuilds the partition for the grid lines
    double scale = 6.0;           // px per field unit
};

// To-scale picture of a deployment: field outline, one sensing disk per
// sensor, optional subarea grid.
std::string snapshot_svg(const Deployment& dep, const SnapshotOptions& options = {});
void deployment_snapshot(const Deployment& dep, const std::filesystem::path& path,
                         const SnapshotOptions& options = {});

}  // namespace covlab
