#include <clubgood/io.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace clubgood {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 80;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr int kTicks = 10;

std::string fixed2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(std::string_view s) {
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

struct Range {
  double lo;
  double hi;
};

Range padded(double lo, double hi) {
  if (hi > lo) return {lo, hi};
  const double pad = lo == 0 ? 1.0 : 0.5 * std::abs(lo);
  return {lo - pad, hi + pad};
}

class Chart {
 public:
  Chart(Range x, Range y) : x_(x), y_(y) {}

  double px(double x) const {
    return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom);
  }

  void begin(std::string_view title, std::string_view x_label, std::string_view y_label) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
         << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
         << "\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out_ << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            "font-family=\"sans-serif\" font-size=\"16\">"
         << escape(title) << "</text>\n";
    axes();
    out_ << "<text x=\"" << fixed2((kLeft + kWidth - kRight) / 2) << "\" y=\""
         << kHeight - 12 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"13\">"
         << escape(x_label) << "</text>\n";
    out_ << "<text x=\"18\" y=\"" << fixed2((kTop + kHeight - kBottom) / 2)
         << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
            "transform=\"rotate(-90 18 "
         << fixed2((kTop + kHeight - kBottom) / 2) << ")\">" << escape(y_label)
         << "</text>\n";
  }

  void polyline(std::string_view id, std::string_view colour,
                const std::vector<double>& xs, const std::vector<double>& ys) {
    out_ << "<polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << colour
         << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out_ << ' ';
      out_ << fixed2(px(xs[i])) << ',' << fixed2(py(ys[i]));
    }
    out_ << "\"/>\n";
  }

  void vertical_marker(std::string_view id, double x, std::string_view label) {
    const auto sx = fixed2(px(x));
    out_ << "<line id=\"" << id << "\" x1=\"" << sx << "\" y1=\"" << fixed2(kTop)
         << "\" x2=\"" << sx << "\" y2=\"" << fixed2(kHeight - kBottom)
         << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
    out_ << "<text x=\"" << sx << "\" y=\"" << fixed2(kTop - 4)
         << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
         << escape(label) << "</text>\n";
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kTop + 14;
    for (const auto& [name, colour] : entries) {
      out_ << "<text x=\"" << fixed2(kWidth - kRight - 110) << "\" y=\"" << fixed2(y)
           << "\" fill=\"" << colour << "\" font-family=\"sans-serif\" font-size=\"12\">"
           << escape(name) << "</text>\n";
      y += 16;
    }
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  void axes() {
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    const double y1 = kTop;
    out_ << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out_ << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0 << "\"/>\n";
    out_ << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1 << "\"/>\n";
    out_ << "</g>\n";
    out_ << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i < kTicks; ++i) {
      const double f = static_cast<double>(i) / (kTicks - 1);
      const double xv = x_.lo + f * (x_.hi - x_.lo);
      const double yv = y_.lo + f * (y_.hi - y_.lo);
      const auto tx = fixed2(px(xv));
      const auto ty = fixed2(py(yv));
      out_ << "<line x1=\"" << tx << "\" y1=\"" << y0 << "\" x2=\"" << tx << "\" y2=\""
           << y0 + 5 << "\" stroke=\"black\"/>"
           << "<text x=\"" << tx << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">"
           << tick_label(xv) << "</text>\n";
      out_ << "<line x1=\"" << x0 - 5 << "\" y1=\"" << ty << "\" x2=\"" << x0 << "\" y2=\""
           << ty << "\" stroke=\"black\"/>"
           << "<text x=\"" << x0 - 8 << "\" y=\"" << ty << "\" text-anchor=\"end\" "
              "dominant-baseline=\"middle\">"
           << tick_label(yv) << "</text>\n";
    }
    out_ << "</g>\n";
  }

  Range x_;
  Range y_;
  std::ostringstream out_;
};

std::vector<double> to_vector(const Eigen::ArrayXd& a) {
  return {a.data(), a.data() + a.size()};
}

}  // namespace

std::string render_svg(const CurveSample& c) {
  const double y_lo = std::min({c.benefit_values.minCoeff(), c.cost_values.minCoeff(),
                                c.welfare_values.minCoeff()});
  const double y_hi = std::max({c.benefit_values.maxCoeff(), c.cost_values.maxCoeff(),
                                c.welfare_values.maxCoeff()});
  Chart chart(padded(c.m_grid.minCoeff(), c.m_grid.maxCoeff()), padded(y_lo, y_hi));
  chart.begin("Benefit, congestion cost and welfare", "globalization intensity M",
              "value");
  const auto xs = to_vector(c.m_grid);
  chart.polyline("benefit", "#1f77b4", xs, to_vector(c.benefit_values));
  chart.polyline("cost", "#d62728", xs, to_vector(c.cost_values));
  chart.polyline("welfare", "#2ca02c", xs, to_vector(c.welfare_values));
  chart.vertical_marker("m-star", c.m_star_marker, "M* = " + tick_label(c.m_star_marker));
  chart.legend({{"B(M)", "#1f77b4"}, {"C(M)", "#d62728"}, {"W(M)", "#2ca02c"}});
  return chart.finish();
}

std::string render_svg(const IndexSeries& s) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [year, count] : s.counts) {
    xs.push_back(year);
    ys.push_back(static_cast<double>(count));
  }
  const double x_lo = xs.empty() ? 0 : xs.front();
  const double x_hi = xs.empty() ? 1 : xs.back();
  const double y_hi = ys.empty() ? 1 : *std::max_element(ys.begin(), ys.end());
  Chart chart(padded(x_lo, x_hi), padded(0, y_hi));
  chart.begin(s.label, "year", "documents hit");
  chart.polyline("counts", "#1f77b4", xs, ys);
  return chart.finish();
}

}  // namespace clubgood
