#include "pvaudit/svg.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace pvaudit {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr double kLeft = 64.0;
constexpr double kRight = 616.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 420.0;

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// x in rank units 0..N+1, y in p units 0..1.
double px(double rank_units, int n) { return kLeft + rank_units / (n + 1.0) * (kRight - kLeft); }
double py(double p) { return kBottom - p * (kBottom - kTop); }

// Largest "nice" step (1, 2, 5, 10, ...) giving at most 10 x-axis ticks.
int tick_step(int n) {
  const int nice[] = {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
  for (const int s : nice)
    if (n / s <= 10) return s;
  return 1000;
}

}  // namespace

std::string slugify(const std::string& label) {
  std::string out;
  bool pending_hyphen = false;
  for (const char ch : label) {
    const auto uc = static_cast<unsigned char>(ch);
    if (std::isalnum(uc)) {
      if (pending_hyphen && !out.empty()) out.push_back('-');
      pending_hyphen = false;
      out.push_back(static_cast<char>(std::tolower(uc)));
    } else {
      pending_hyphen = true;
    }
  }
  return out.empty() ? "series" : out;
}

std::string render_pvalue_plot_svg(const PValueSeries& series) {
  const int n = series.size();
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\""
      << " text-anchor=\"middle\" fill=\"#000000\">" << xml_escape(series.outcome_label)
      << "</text>\n";

  // axes
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kRight)
      << "\" y2=\"" << num(kBottom) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(kBottom) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  // x ticks at nice integer ranks
  const int step = tick_step(n);
  for (int r = step; r <= n; r += step) {
    const double x = px(r, n);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(kBottom + 5) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kBottom + 20)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
        << " fill=\"#000000\">" << r << "</text>\n";
  }

  // y ticks every 0.2
  for (int i = 0; i <= 5; ++i) {
    const double p = i / 5.0;
    const double y = py(p);
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(y) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    char label[8];
    std::snprintf(label, sizeof label, "%.1f", p);
    svg << "<text x=\"" << num(kLeft - 10) << "\" y=\"" << num(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\""
        << " fill=\"#000000\">" << label << "</text>\n";
  }

  // axis titles
  svg << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << num(kBottom + 44)
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\""
      << " fill=\"#000000\">rank</text>\n";
  svg << "<text x=\"20\" y=\"" << num((kTop + kBottom) / 2)
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\""
      << " fill=\"#000000\" transform=\"rotate(-90 20 " << num((kTop + kBottom) / 2)
      << ")\">p-value</text>\n";

  // 45-degree reference through (0,0)-(N+1,1) in data units
  svg << "<line x1=\"" << num(px(0, n)) << "\" y1=\"" << num(py(0)) << "\" x2=\""
      << num(px(n + 1.0, n)) << "\" y2=\"" << num(py(1)) << "\" stroke=\"#808080\""
      << " stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";

  // significance rule at p = 0.05
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(0.05)) << "\" x2=\"" << num(kRight)
      << "\" y2=\"" << num(py(0.05)) << "\" stroke=\"#bb3333\" stroke-width=\"1\""
      << " stroke-dasharray=\"3,3\"/>\n";

  // points, in rank order
  for (const auto& entry : series.entries) {
    svg << "<circle cx=\"" << num(px(entry.rank, n)) << "\" cy=\"" << num(py(entry.p))
        << "\" r=\"4\" fill=\"#2a6fb0\"><title>" << xml_escape(entry.study_id) << "</title>"
        << "</circle>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pvaudit
