#include "qram/io/output.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

#include "qram/models/task_models.hpp"

namespace qram::io {

namespace {

using nlohmann::json;

json to_json(const sim::Summary& s) {
  return json{{"n", s.n},           {"mean", s.mean},     {"std", s.std},
              {"min", s.min},       {"q1", s.q1},         {"median", s.median},
              {"q3", s.q3},         {"max", s.max},       {"whisker_low", s.whisker_low},
              {"whisker_high", s.whisker_high}};
}

json to_json(const sim::SafetyReport& r) {
  return json{{"epochs", r.epochs},
              {"entries", r.entries},
              {"resource_violations", r.resource_violations},
              {"duty_violations", r.duty_violations},
              {"emcon_violations", r.emcon_violations},
              {"findings", r.findings}};
}

void box_row(std::ostringstream& os, const std::string& mode, const sim::Summary& s) {
  os << mode << ',' << s.n << ',' << format_number(s.min) << ',' << format_number(s.whisker_low) << ','
     << format_number(s.q1) << ',' << format_number(s.median) << ',' << format_number(s.q3) << ','
     << format_number(s.whisker_high) << ',' << format_number(s.max) << ',' << format_number(s.mean) << ','
     << format_number(s.std) << '\n';
}

std::size_t violations(const sim::SafetyReport& r) {
  return r.resource_violations + r.duty_violations + r.emcon_violations;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ModeReport make_report(const sim::ModeBatch& batch) {
  return {sim::aggregate_runs(std::string(models::to_string(batch.mode)), batch.runs), batch.safety};
}

std::string series_csv(std::span<const sim::MetricsSeries> runs) {
  std::ostringstream os;
  os << kSeriesHeader << '\n';
  const auto& types = models::all_task_types();
  for (const auto& r : runs) {
    double cumulative = 0.0;
    for (std::size_t k = 0; k < r.times.size(); ++k) {
      const std::string prefix = r.run_id + ',' + format_number(r.times[k]) + ',';
      auto row = [&](const char* metric, std::string_view type, double v) {
        os << prefix << metric << ',' << type << ',' << format_number(v) << '\n';
      };
      cumulative += r.total_utility[k];
      row("mean_track_error", "", r.mean_track_error[k]);
      for (std::size_t i = 0; i < types.size(); ++i) row("utility", models::to_string(types[i]), r.type_utility[i][k]);
      row("total_utility", "", r.total_utility[k]);
      row("cumulative_utility", "", cumulative);
      row("sar_active", "", r.sar_active[k]);
      row("timeline_end_s", "", r.timeline_end_s[k]);
      row("drops", "", r.drop_count[k]);
    }
  }
  return os.str();
}

std::string summary_json(const RunMeta& meta, std::span<const ModeReport> modes) {
  json doc;
  doc["schema_version"] = kOutputSchemaVersion;
  doc["command"] = meta.command;
  doc["scenario"] = meta.scenario;
  doc["seeds"] = meta.seeds;
  doc["epoch_s"] = meta.epoch_s;
  doc["mcts_iterations"] = meta.mcts_iterations;
  json list = json::array();
  for (const auto& m : modes) {
    list.push_back(json{{"mode", m.summary.mode},
                        {"runs", m.summary.runs},
                        {"scenario_track_error", to_json(m.summary.scenario_track_error)},
                        {"sar_window_track_error", to_json(m.summary.sar_window_track_error)},
                        {"cumulative_utility", to_json(m.summary.cumulative_utility)},
                        {"drops", m.summary.drops},
                        {"safety", to_json(m.safety)}});
  }
  doc["modes"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string compare_csv(std::span<const ModeReport> modes) {
  std::ostringstream os;
  os << kCompareHeader << '\n';
  for (const auto& m : modes) {
    const auto& s = m.summary;
    os << s.mode << ',' << s.runs << ',' << format_number(s.scenario_track_error.median) << ','
       << format_number(s.scenario_track_error.q3) << ',' << format_number(s.scenario_track_error.std) << ','
       << format_number(s.sar_window_track_error.median) << ',' << format_number(s.sar_window_track_error.q3) << ','
       << format_number(s.sar_window_track_error.std) << ',' << format_number(s.cumulative_utility.median) << ','
       << format_number(s.cumulative_utility.q3) << ',' << format_number(s.cumulative_utility.std) << ',' << s.drops
       << ',' << violations(m.safety) << '\n';
  }
  return os.str();
}

std::string error_over_time_csv(std::span<const ModeReport> modes) {
  std::ostringstream os;
  os << kErrorOverTimeHeader << '\n';
  for (const auto& m : modes) {
    for (const auto& b : m.summary.track_error_over_time) {
      os << m.summary.mode << ',' << format_number(b.t) << ',' << format_number(b.median) << ','
         << format_number(b.q3) << ',' << format_number(b.std) << '\n';
    }
  }
  return os.str();
}

std::string sar_window_boxes_csv(std::span<const ModeReport> modes) {
  std::ostringstream os;
  os << kBoxHeader << '\n';
  for (const auto& m : modes) box_row(os, m.summary.mode, m.summary.sar_window_track_error);
  return os.str();
}

std::string utility_boxes_csv(std::span<const ModeReport> modes) {
  std::ostringstream os;
  os << kBoxHeader << '\n';
  for (const auto& m : modes) box_row(os, m.summary.mode, m.summary.cumulative_utility);
  return os.str();
}

std::string utility_by_type_csv(std::span<const ModeReport> modes) {
  std::ostringstream os;
  os << kUtilityByTypeHeader << '\n';
  const auto& types = models::all_task_types();
  for (const auto& m : modes) {
    const auto& per_type = m.summary.type_utility_over_time;
    const std::size_t epochs = per_type.empty() ? 0 : per_type.front().size();
    for (std::size_t k = 0; k < epochs; ++k) {
      for (std::size_t i = 0; i < per_type.size(); ++i) {
        const auto& b = per_type[i][k];
        os << m.summary.mode << ',' << format_number(b.t) << ',' << models::to_string(types[i]) << ','
           << format_number(b.median) << ',' << format_number(b.q3) << ',' << format_number(b.std) << '\n';
      }
    }
  }
  return os.str();
}

std::string report_text(const RunMeta& meta, std::span<const ModeReport> modes) {
  std::ostringstream os;
  os << "scenario: " << meta.scenario << "\n";
  os << "seeds: " << meta.seeds.size() << "  epoch_s: " << format_number(meta.epoch_s)
     << "  mcts_iterations: " << meta.mcts_iterations << "\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-15s %5s %12s %12s %12s %12s %12s %12s %8s\n", "mode", "runs", "err_med",
                "err_q3", "sar_err_med", "sar_err_q3", "util_med", "util_std", "unsafe");
  os << line;
  for (const auto& m : modes) {
    const auto& s = m.summary;
    std::snprintf(line, sizeof line, "%-15s %5zu %12.3f %12.3f %12.3f %12.3f %12.3f %12.3f %8zu\n", s.mode.c_str(),
                  s.runs, s.scenario_track_error.median, s.scenario_track_error.q3, s.sar_window_track_error.median,
                  s.sar_window_track_error.q3, s.cumulative_utility.median, s.cumulative_utility.std,
                  violations(m.safety));
    os << line;
  }
  std::vector<const ModeReport*> order;
  for (const auto& m : modes) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(), [](const ModeReport* a, const ModeReport* b) {
    return a->summary.cumulative_utility.median > b->summary.cumulative_utility.median;
  });
  os << "\nutility ordering:";
  for (std::size_t i = 0; i < order.size(); ++i) os << (i == 0 ? " " : " > ") << order[i]->summary.mode;
  os << "\n";
  return os.str();
}

void write_files(const std::filesystem::path& dir, std::span<const std::pair<std::string, std::string>> files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) std::filesystem::remove(t, ec);
  };
  for (const auto& [name, content] : files) {
    const auto tmp = dir / ("." + name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::filesystem::rename(temps[i], dir / files[i].first, ec);
    if (ec) {
      const std::string why = ec.message();
      cleanup();
      // files already moved belong to the failed set
      for (std::size_t j = 0; j < i; ++j) std::filesystem::remove(dir / files[j].first, ec);
      throw std::runtime_error("cannot move '" + files[i].first + "' into place: " + why);
    }
  }
}

}  // namespace qram::io
