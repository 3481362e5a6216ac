// Copyright 2026 The PSV Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psv/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "psv/errors.hpp"

namespace psv::diagram {

using engine::RunRecord;
using engine::Scenario;
using geometry::Event;
using geometry::Lcsh;

namespace {

struct Frame {
  double xlo, xhi, tlo, thi;
};

Frame frame_of(const Scenario &s, const RunRecord &r) {
  std::vector<Event> events = s.all_events();
  for (const auto &w : s.worldlines) events.insert(events.end(), w.points.begin(), w.points.end());
  Frame f{-1.0, 1.0, 0.0, 1.0};
  if (!events.empty()) {
    f.xlo = f.xhi = events.front().x[0];
    f.tlo = f.thi = events.front().t;
    for (const auto &e : events) {
      f.xlo = std::min(f.xlo, e.x[0]);
      f.xhi = std::max(f.xhi, e.x[0]);
      f.tlo = std::min(f.tlo, e.t);
      f.thi = std::max(f.thi, e.t);
    }
  }
  if (r.initial_surface.initial_time()) {
    f.tlo = std::min(f.tlo, *r.initial_surface.initial_time());
    f.thi = std::max(f.thi, *r.initial_surface.initial_time());
  }
  const double pad = std::max(1.0, 0.1 * std::max(f.xhi - f.xlo, f.thi - f.tlo));
  return {f.xlo - pad, f.xhi + pad, f.tlo - pad, f.thi + pad};
}

// The envelope is piecewise linear with kinks only at apexes and at
// crossings of the cone edges (and the flat part). Evaluating at those
// abscissae gives the exact polyline.
std::vector<double> breakpoints(const Lcsh &s, double xlo, double xhi) {
  std::set<double> xs{xlo, xhi};
  const double c = s.c();
  struct Line {
    double slope, intercept;  // t = slope * x + intercept
  };
  std::vector<Line> lines;
  for (const auto &a : s.apexes()) {
    xs.insert(a.x[0]);
    lines.push_back({1.0 / c, a.t - a.x[0] / c});
    lines.push_back({-1.0 / c, a.t + a.x[0] / c});
  }
  if (s.initial_time()) lines.push_back({0.0, *s.initial_time()});
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double ds = lines[i].slope - lines[j].slope;
      if (ds == 0.0) continue;
      xs.insert((lines[j].intercept - lines[i].intercept) / ds);
    }
  }
  std::vector<double> out;
  for (double x : xs) {
    if (x >= xlo && x <= xhi) out.push_back(x);
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string &text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void require_1d(const Scenario &s) {
  if (s.dim != 1) {
    throw ConfigError("diagrams are drawn in 1+1 dimensions; scenario has d=" +
                      std::to_string(s.dim));
  }
}

}  // namespace

std::string render_svg(const Scenario &s, const RunRecord &record) {
  require_1d(s);
  const Frame f = frame_of(s, record);
  const double scale = 600.0 / std::max(f.xhi - f.xlo, f.thi - f.tlo);
  const double margin = 40.0;
  const double width = 2 * margin + (f.xhi - f.xlo) * scale;
  const double height = 2 * margin + (f.thi - f.tlo) * scale;
  const auto gx = [&](double x) { return margin + (x - f.xlo) * scale; };
  const auto gy = [&](double t) { return height - margin - (t - f.tlo) * scale; };
  const auto px = [&](double x) { return num(gx(x)); };
  const auto py = [&](double t) { return num(gy(t)); };
  // Surfaces at -inf are clipped to the bottom edge.
  const auto clip_t = [&](double t) { return std::max(t, f.tlo); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
     << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
     << num(height) << "\">\n"
     << "<title>" << escape(s.name) << "</title>\n"
     << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << num(width)
     << "\" height=\"" << num(height) << "\" fill=\"white\"/>\n";

  // Axes.
  os << "<line class=\"axis\" x1=\"" << px(f.xlo) << "\" y1=\"" << py(f.tlo) << "\" x2=\""
     << px(f.xhi) << "\" y2=\"" << py(f.tlo) << "\" stroke=\"#888\"/>\n"
     << "<text class=\"axis-label\" x=\"" << px(f.xhi) << "\" y=\"" << num(height - margin / 3)
     << "\" text-anchor=\"end\" font-size=\"12\">x</text>\n"
     << "<text class=\"axis-label\" x=\"" << num(margin / 3) << "\" y=\"" << py(f.thi)
     << "\" font-size=\"12\">t</text>\n";

  // Past shading below each reduction surface, lightest for the latest.
  for (std::size_t k = record.steps.size(); k-- > 0;) {
    const Lcsh &surf = record.steps[k].after;
    os << "<polygon class=\"past-shade\" data-surface=\"S" << k + 1
       << "\" fill=\"#4a78c2\" fill-opacity=\"0.08\" points=\"";
    for (double x : breakpoints(surf, f.xlo, f.xhi)) {
      os << px(x) << "," << py(clip_t(surf.time_at(std::vector<double>{x}))) << " ";
    }
    os << px(f.xhi) << "," << py(f.tlo) << " " << px(f.xlo) << "," << py(f.tlo) << "\"/>\n";
  }

  // Initial surface.
  const double t0 = record.initial_surface.initial_time().value_or(f.tlo);
  os << "<line class=\"initial-surface\" x1=\"" << px(f.xlo) << "\" y1=\"" << py(t0)
     << "\" x2=\"" << px(f.xhi) << "\" y2=\"" << py(t0) << "\" stroke=\"#444\""
     << (record.initial_surface.initial_time() ? "" : " stroke-dasharray=\"2,4\"")
     << "/>\n"
     << "<text class=\"surface-label\" x=\"" << px(f.xlo) << "\" y=\"" << num(gy(t0) - 4)
     << "\" font-size=\"12\">S0+"
     << (record.initial_surface.initial_time() ? "" : " (t=-inf)") << "</text>\n";

  // Worldlines.
  for (const auto &w : s.worldlines) {
    os << "<polyline class=\"worldline\" data-label=\"" << escape(w.label)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < w.points.size(); ++i) {
      os << (i ? " " : "") << px(w.points[i].x[0]) << "," << py(w.points[i].t);
    }
    os << "\"/>\n";
  }

  // Backward cone of each detector, dashed.
  for (const auto &d : s.detectors) {
    const double x = d.at.x[0], t = d.at.t;
    const double dl = (x - f.xlo), dr = (f.xhi - x);
    os << "<polyline class=\"cone\" data-detector=\"" << escape(d.label)
       << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4,3\" points=\""
       << px(f.xlo) << "," << py(clip_t(t - dl / s.c)) << " " << px(x) << "," << py(t)
       << " " << px(f.xhi) << "," << py(clip_t(t - dr / s.c)) << "\"/>\n";
  }

  // Reduction surfaces.
  for (std::size_t k = 0; k < record.steps.size(); ++k) {
    const auto &st = record.steps[k];
    const Lcsh &surf = st.after;
    os << "<polyline class=\"surface\" data-label=\"S" << k + 1 << "\" data-detector=\""
       << escape(st.detector) << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\""
       << (st.reduction ? "2" : "1") << "\" points=\"";
    bool first = true;
    for (double x : breakpoints(surf, f.xlo, f.xhi)) {
      os << (first ? "" : " ") << px(x) << ","
         << py(clip_t(surf.time_at(std::vector<double>{x})));
      first = false;
    }
    os << "\"/>\n";
    const auto &apex = s.detector(st.detector).at;
    os << "<text class=\"surface-label\" x=\"" << num(gx(apex.x[0]) + 8)
       << "\" y=\"" << num(gy(apex.t) + 16) << "\" font-size=\"11\" fill=\"#c0392b\">S"
       << k + 1 << "- / S" << k + 1 << "+</text>\n";
  }

  // Event markers last so they sit on top.
  for (const auto &ev : s.interactions) {
    os << "<rect class=\"interaction\" data-label=\"" << escape(ev.name) << "\" x=\""
       << num(gx(ev.at.x[0]) - 4) << "\" y=\"" << num(gy(ev.at.t) - 4)
       << "\" width=\"8\" height=\"8\" fill=\"#27ae60\"/>\n"
       << "<text class=\"event-label\" x=\"" << num(gx(ev.at.x[0]) + 7) << "\" y=\""
       << num(gy(ev.at.t) - 6) << "\" font-size=\"11\">" << escape(ev.name)
       << "</text>\n";
  }
  for (std::size_t i = 0; i < s.detectors.size(); ++i) {
    const auto &d = s.detectors[i];
    std::string reading;
    if (i < record.outcomes.size() && !record.outcomes[i].empty()) {
      reading = " [" + record.outcomes[i] + "]";
    }
    os << "<circle class=\"detector\" data-label=\"" << escape(d.label) << "\" cx=\""
       << px(d.at.x[0]) << "\" cy=\"" << py(d.at.t) << "\" r=\"6\" fill=\"#2c3e50\"/>\n"
       << "<text class=\"event-label\" x=\"" << num(gx(d.at.x[0]) + 9) << "\" y=\""
       << num(gy(d.at.t) - 8) << "\" font-size=\"13\">" << escape(d.label + reading)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_ascii(const Scenario &s, const RunRecord &record, std::size_t cols,
                         std::size_t rows) {
  require_1d(s);
  if (cols < 8 || rows < 4) throw ConfigError("ascii grid too small");
  const Frame f = frame_of(s, record);
  std::vector<std::string> grid(rows, std::string(cols, ' '));
  const auto col_of = [&](double x) {
    const double u = (x - f.xlo) / (f.xhi - f.xlo);
    return std::clamp<long>(std::lround(u * (cols - 1)), 0, static_cast<long>(cols) - 1);
  };
  const auto row_of = [&](double t) {
    const double u = (t - f.tlo) / (f.thi - f.tlo);
    return std::clamp<long>(static_cast<long>(rows - 1) - std::lround(u * (rows - 1)), 0,
                            static_cast<long>(rows) - 1);
  };
  const auto x_of = [&](std::size_t c) {
    return f.xlo + (f.xhi - f.xlo) * static_cast<double>(c) / (cols - 1);
  };

  if (record.initial_surface.initial_time()) {
    const long r = row_of(*record.initial_surface.initial_time());
    for (auto &ch : grid[r]) ch = '=';
  }
  for (const auto &w : s.worldlines) {
    for (std::size_t i = 0; i + 1 < w.points.size(); ++i) {
      const auto &p = w.points[i];
      const auto &q = w.points[i + 1];
      for (int k = 0; k <= 64; ++k) {
        const double u = k / 64.0;
        grid[row_of(p.t + u * (q.t - p.t))][col_of(p.x[0] + u * (q.x[0] - p.x[0]))] = '.';
      }
    }
  }
  for (std::size_t k = 0; k < record.steps.size(); ++k) {
    const char mark = static_cast<char>('1' + (k % 9));
    const Lcsh &surf = record.steps[k].after;
    for (std::size_t c = 0; c < cols; ++c) {
      const double t = surf.time_at(std::vector<double>{x_of(c)});
      if (t >= f.tlo) grid[row_of(t)][c] = mark;
    }
  }
  for (const auto &ev : s.interactions) grid[row_of(ev.at.t)][col_of(ev.at.x[0])] = '*';
  for (const auto &d : s.detectors) {
    grid[row_of(d.at.t)][col_of(d.at.x[0])] = d.label.empty() ? '?' : d.label[0];
  }

  std::ostringstream os;
  for (const auto &line : grid) {
    std::string trimmed = line;
    trimmed.erase(trimmed.find_last_not_of(' ') + 1);
    os << trimmed << "\n";
  }
  return os.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace psv::diagram
