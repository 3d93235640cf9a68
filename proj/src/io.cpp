#include "tritime/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "tritime/errors.hpp"

namespace tritime::io {

namespace {

std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

std::string tick(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw Error("failed writing " + path);
}

std::string svg(const Chart& chart) {
    const double W = chart.width;
    const double H = chart.height;
    const double left = 70, right = 20, top = 40, bottom = 55;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : chart.series) {
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-300) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-300) y0 -= 0.5, y1 += 0.5;
    double pw = W - left - right;
    double ph = H - top - bottom;
    if (chart.equal_aspect) {
        double sx = pw / (x1 - x0);
        double sy = ph / (y1 - y0);
        double s = std::min(sx, sy);
        double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
        x0 = cx - 0.5 * pw / s, x1 = cx + 0.5 * pw / s;
        y0 = cy - 0.5 * ph / s, y1 = cy + 0.5 * ph / s;
    }
    auto X = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto Y = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\"" << chart.height
       << "\" viewBox=\"0 0 " << chart.width << ' ' << chart.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << chart.width << "\" height=\"" << chart.height << "\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << fixed(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(chart.title)
       << "</text>\n";
    os << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw) << "\" height=\"" << fixed(ph)
       << "\" fill=\"none\" stroke=\"#444444\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        double xv = x0 + (x1 - x0) * k / 4.0;
        double yv = y0 + (y1 - y0) * k / 4.0;
        os << "<text x=\"" << fixed(X(xv)) << "\" y=\"" << fixed(top + ph + 16) << "\" text-anchor=\"middle\">" << tick(xv)
           << "</text>\n";
        os << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(Y(yv) + 4) << "\" text-anchor=\"end\">" << tick(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(H - 12) << "\" text-anchor=\"middle\">"
       << escape(chart.x_label) << "</text>\n";
    os << "<text transform=\"translate(16," << fixed(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(chart.y_label) << "</text>\n";
    int row = 0;
    for (const auto& s : chart.series) {
        if (s.markers) {
            os << "<g fill=\"" << s.color << "\">\n";
            for (auto [x, y] : s.points)
                if (std::isfinite(x) && std::isfinite(y))
                    os << "<circle cx=\"" << fixed(X(x)) << "\" cy=\"" << fixed(Y(y)) << "\" r=\"1.5\"/>\n";
            os << "</g>\n";
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (auto [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                if (!first) os << ' ';
                os << fixed(X(x)) << ',' << fixed(Y(y));
                first = false;
            }
            os << "\"/>\n";
        }
        if (!s.label.empty()) {
            double ly = top + 14 + 16 * row++;
            os << "<rect x=\"" << fixed(left + pw - 150) << "\" y=\"" << fixed(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
               << s.color << "\"/>\n";
            os << "<text x=\"" << fixed(left + pw - 135) << "\" y=\"" << fixed(ly) << "\">" << escape(s.label) << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

Substream::Substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix(s);
    std::uint64_t t = index ^ 0x6a09e667f3bcc909ULL;
    state_ = a ^ splitmix(t);
}

Substream::result_type Substream::operator()() { return splitmix(state_); }

double Substream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

}  // namespace tritime::io
