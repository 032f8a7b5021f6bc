#pragma once

#include <string>
#include <vector>

namespace ltswave {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    bool markers = false;
    std::vector<PlotSeries> series;
};

// Writes a static line chart; throws std::runtime_error on I/O failure.
// Output depends only on the PlotSpec contents, so plots regenerate
// byte-identically from the data already present in the accompanying CSV.
void write_svg_plot(const std::string& path, const PlotSpec& spec);

}  // namespace ltswave
