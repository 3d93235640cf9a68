#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tritime::io {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Comma-separated table with a header row and LF line endings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string str() const;
};

void write_text(const std::string& path, const std::string& text);

/// A named line or point series for an SVG chart.
struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    bool markers = false;  // draw points instead of a polyline
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    int width = 640;
    int height = 420;
    bool equal_aspect = false;
};

/// Self-contained SVG document (inline styles, no external references).
std::string svg(const Chart& chart);

/// Counter-based generator: the stream for (seed, index) is independent of how
/// samples are split across threads. Satisfies UniformRandomBitGenerator.
class Substream {
public:
    using result_type = std::uint64_t;

    Substream(std::uint64_t seed, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

private:
    std::uint64_t state_;
};

}  // namespace tritime::io
