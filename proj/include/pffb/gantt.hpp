#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "pffb/core.hpp"

namespace pffb {

namespace gantt_detail {

// Fixed display precision for chart coordinates and tick labels.  Charts
// are rendering only; no decision logic ever consumes these doubles.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string machine_label(const BatchAssignment& batch) {
  return "M" + std::to_string(batch.stage + 1) + "(" +
         std::to_string(batch.machine + 1) + ")";
}

inline double horizon(const Schedule& sched) {
  double last = 0;
  for (const BatchAssignment& batch : sched.batches) {
    const double end =
        to_double(batch.start +
                  QTime(sched.instance.stages[batch.stage].processing_time));
    if (end > last) last = end;
  }
  return last;
}

inline std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace gantt_detail

// Job-oriented text chart: one row per job (J1 on top), '#' for the span
// before the job's release, '[label===]' blocks for its batches.  Rejects
// infeasible schedules.
inline std::string ascii_gantt(const Schedule& sched) {
  if (ScheduleCheck check = validate_schedule(sched); !check)
    throw Error("gantt: " + check.message);
  const int n = sched.instance.job_count();
  if (n == 0 || sched.batches.empty()) return "";

  const double last = gantt_detail::horizon(sched);
  constexpr int kWidth = 96;
  const auto column = [&](double t) {
    int c = static_cast<int>(std::llround(t / last * kWidth));
    return c < 0 ? 0 : (c > kWidth ? kWidth : c);
  };

  std::vector<std::string> rows(n, std::string(kWidth + 1, ' '));
  for (int j = 0; j < n; ++j) {
    const int released = column(to_double(sched.instance.releases[j]));
    for (int c = 0; c < released; ++c) rows[j][c] = '#';
  }
  std::vector<BatchAssignment> batches = sched.batches;
  sort_batches_canonically(batches);
  for (const BatchAssignment& batch : batches) {
    const double start = to_double(batch.start);
    const double end =
        to_double(batch.start +
                  QTime(sched.instance.stages[batch.stage].processing_time));
    int cs = column(start);
    int ce = column(end);
    if (ce - cs < 2) ce = cs + 2;  // keep the brackets visible
    const std::string label = gantt_detail::machine_label(batch);
    for (int j : batch.jobs) {
      std::string& row = rows[j];
      if (static_cast<int>(row.size()) < ce + 1) row.resize(ce + 1, ' ');
      row[cs] = '[';
      for (int c = cs + 1; c < ce - 1; ++c) row[c] = '=';
      row[ce - 1] = ']';
      const int room = ce - 1 - (cs + 1);
      const int len = static_cast<int>(label.size()) < room
                          ? static_cast<int>(label.size())
                          : room;
      const int at = cs + 1 + (room - len) / 2;
      for (int c = 0; c < len; ++c) row[at + c] = label[c];
    }
  }

  std::string out = "time 0 .. " + gantt_detail::fmt(last) + "\n";
  for (int j = 0; j < n; ++j) {
    std::string tag = "J" + std::to_string(j + 1);
    tag.resize(4, ' ');
    out += tag + "|" + rows[j] + "\n";
  }
  return out;
}

// Same chart as SVG.  Geometry is proportional to the exact times at fixed
// display precision; rectangles span exactly [start, start + p).
inline std::string svg_gantt(const Schedule& sched) {
  if (ScheduleCheck check = validate_schedule(sched); !check)
    throw Error("gantt: " + check.message);
  const int n = sched.instance.job_count();
  const double last = gantt_detail::horizon(sched);

  constexpr double kLeft = 50, kTop = 30, kRowH = 28, kPlotW = 900;
  const double scale = last > 0 ? kPlotW / last : 1;
  const double width = kLeft + kPlotW + 20;
  const double height = kTop + kRowH * n + 30;
  const auto x = [&](double t) { return kLeft + t * scale; };
  const auto fmt = gantt_detail::fmt;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) +
         " " + fmt(height) + "\" font-family=\"monospace\" font-size=\"12\">\n";
  for (int j = 0; j < n; ++j) {
    const double y = kTop + kRowH * j;
    svg += "<text x=\"8\" y=\"" + fmt(y + kRowH / 2 + 4) + "\">J" +
           std::to_string(j + 1) + "</text>\n";
    const double released = to_double(sched.instance.releases[j]);
    if (released > 0)
      svg += "<rect x=\"" + fmt(x(0)) + "\" y=\"" + fmt(y + 4) +
             "\" width=\"" + fmt(released * scale) + "\" height=\"" +
             fmt(kRowH - 8) + "\" fill=\"black\"/>\n";
  }
  std::vector<BatchAssignment> batches = sched.batches;
  sort_batches_canonically(batches);
  for (const BatchAssignment& batch : batches) {
    const double start = to_double(batch.start);
    const double dur = to_double(
        QTime(sched.instance.stages[batch.stage].processing_time));
    for (int j : batch.jobs) {
      const double y = kTop + kRowH * j;
      svg += "<rect x=\"" + fmt(x(start)) + "\" y=\"" + fmt(y + 4) +
             "\" width=\"" + fmt(dur * scale) + "\" height=\"" +
             fmt(kRowH - 8) +
             "\" fill=\"#cfe2f3\" stroke=\"black\" stroke-width=\"1\"/>\n";
      svg += "<text x=\"" + fmt(x(start) + 4) + "\" y=\"" +
             fmt(y + kRowH / 2 + 4) + "\">" +
             gantt_detail::xml_escape(gantt_detail::machine_label(batch)) +
             "</text>\n";
    }
  }
  // time axis with up to ~12 ticks at integral steps where possible
  const double axis_y = kTop + kRowH * n + 14;
  svg += "<line x1=\"" + fmt(x(0)) + "\" y1=\"" + fmt(axis_y) + "\" x2=\"" +
         fmt(x(last > 0 ? last : 1)) + "\" y2=\"" + fmt(axis_y) +
         "\" stroke=\"black\"/>\n";
  const double step = last > 12 ? std::ceil(last / 12) : 1;
  for (double t = 0; t <= last + 1e-9; t += step)
    svg += "<text x=\"" + fmt(x(t) - 4) + "\" y=\"" + fmt(axis_y + 14) +
           "\">" + fmt(t) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace pffb
