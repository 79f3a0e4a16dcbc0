#include "gburgers/io.hpp"

#include "gburgers/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace gb {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(probe, "%lf", &back);
    if (back == v) return probe;
  }
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

} // namespace

void write_solution_csv(const std::string& path, const std::vector<const Field*>& fields,
                        const std::string& source) {
  std::ofstream out = open_out(path);
  out << "source,t,x,u\n";
  for (const Field* f : fields) {
    for (int i = 0; i < f->size(); ++i) {
      out << source << ',' << format_double(f->t) << ',' << format_double(f->x(i)) << ','
          << format_double(f->values[static_cast<std::size_t>(i)]) << '\n';
    }
  }
}

void write_svg_plot(const std::string& path, const std::vector<const Field*>& fields,
                    const std::string& title) {
  if (fields.empty()) throw ConfigError("write_svg_plot: nothing to plot");
  const int W = 800, H = 500, ML = 60, MR = 20, MT = 40, MB = 40;
  double ymin = 1e300, ymax = -1e300;
  for (const Field* f : fields) {
    for (double v : f->values) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (ymax - ymin < 1e-12) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double xmin = fields.front()->x(0);
  const double xmax = fields.front()->x(fields.front()->size() - 1);
  auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::ofstream out = open_out(path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
      << "</text>\n";
  out << "<line x1='" << ML << "' y1='" << py(0.0) << "' x2='" << W - MR << "' y2='" << py(0.0)
      << "' stroke='#cccccc'/>\n";
  int ci = 0;
  for (const Field* f : fields) {
    out << "<polyline fill='none' stroke='" << colors[ci % 8] << "' stroke-width='1.5' points='";
    const int stride = std::max(1, f->size() / 800);
    for (int i = 0; i < f->size(); i += stride)
      out << px(f->x(i)) << ',' << py(f->values[static_cast<std::size_t>(i)]) << ' ';
    out << "'/>\n";
    out << "<text x='" << W - MR - 130 << "' y='" << MT + 16 * ci << "' font-size='12' fill='"
        << colors[ci % 8] << "'>t = " << format_double(f->t) << "</text>\n";
    ++ci;
  }
  out << "<text x='" << W / 2 << "' y='" << H - 8 << "' text-anchor='middle' font-size='12'>x</text>\n";
  out << "</svg>\n";
}

void write_reports_csv(const std::string& path, const std::vector<InvariantReport>& reports) {
  std::ofstream out = open_out(path);
  out << "check,status,quantity,measured,threshold_name,threshold\n";
  for (const InvariantReport& r : reports) {
    const std::size_t n = std::max(r.measured.size(), r.thresholds.size());
    if (n == 0) {
      out << r.name << ',' << InvariantReport::status_name(r.status) << ",,,,\n";
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      out << r.name << ',' << InvariantReport::status_name(r.status) << ',';
      if (i < r.measured.size())
        out << r.measured[i].first << ',' << format_double(r.measured[i].second);
      else
        out << ',';
      out << ',';
      if (i < r.thresholds.size())
        out << r.thresholds[i].first << ',' << format_double(r.thresholds[i].second);
      else
        out << ',';
      out << '\n';
    }
  }
}

} // namespace gb
